"""Triples (x, y, z) subject to conditions (K-5)..(K-8) for a squarefree d.

    (K-5) x^2 - 4y^3 = 3 z^2 d
    (K-6) gcd(x, y) = 1
    (K-7) xyz != 0
    (K-8) y = 1 (mod 3) and x^2 = 1 or 7 (mod 9)

If no such triple exists, the 3-ranks r of Q(sqrt(-d)) and s of Q(sqrt(3d))
satisfy r = s + 1. A bounded search can only ever fail to find one.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple

from . import arith
from .errors import InvalidD


class Triple(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class TripleCheck:
    k5: bool
    k6: bool
    k7: bool
    k8: bool

    @property
    def ok(self) -> bool:
        return self.k5 and self.k6 and self.k7 and self.k8

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class TripleSearchResult:
    d: int
    bound: int
    found: tuple[Triple, ...]
    exhausted: bool


def _validate_d(d: int) -> None:
    if d < 1 or d % 3 == 0 or not arith.is_squarefree(d):
        raise InvalidD(f"d = {d} must be a positive squarefree integer prime to 3")


def check_triple(d: int, t: Triple) -> TripleCheck:
    _validate_d(d)
    return _check(d, *t)


def _check(d: int, x: int, y: int, z: int) -> TripleCheck:
    return TripleCheck(
        k5=x * x - 4 * y**3 == 3 * z * z * d,
        k6=gcd(x, y) == 1,
        k7=x * y * z != 0,
        k8=y % 3 == 1 and (x * x) % 9 in (1, 7),
    )


def _scan(d: int, ys: list[int], bound: int) -> list[Triple]:
    hits = []
    for y in ys:
        four_y3 = 4 * y**3
        for z in range(1, bound + 1):
            rhs = four_y3 + 3 * z * z * d
            if rhs <= 0:
                continue
            x = isqrt(rhs)
            if x * x != rhs:
                continue
            for sx in (x, -x):
                if _check(d, sx, y, z).ok:
                    hits.append(Triple(sx, y, z))
    return hits


def search_triples(d: int, bound: int, workers: int = 1, max_cells: int | None = None) -> TripleSearchResult:
    """Scan y in [-bound, bound] with y = 1 (mod 3) and z in [1, bound].

    x is pinned by the equation, so each (y, z) cell costs one square test.
    Only z > 0 is scanned; the conditions depend on z^2 alone. With
    ``max_cells`` set, the scan stops early and reports exhausted=False.
    """
    _validate_d(d)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ys = [y for y in range(-bound, bound + 1) if y % 3 == 1]
    exhausted = True
    if max_cells is not None and len(ys) * bound > max_cells:
        ys = ys[: max_cells // bound]
        exhausted = False
    if workers > 1 and len(ys) > 1:
        chunks = [ys[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, [d] * workers, chunks, [bound] * workers))
        hits = [t for part in parts for t in part]
    else:
        hits = _scan(d, ys, bound)
    hits.sort(key=lambda t: (t.y, t.z, t.x))
    return TripleSearchResult(d, bound, tuple(hits), exhausted)
