"""Integral binary quadratic forms ax^2 + bxy + cy^2.

Definite forms are reduced to the unique representative with |b| <= a <= c
(b >= 0 when |b| = a or a = c). Indefinite forms use the normalized rho
operator; reduced indefinite forms satisfy |sqrt(D) - 2|a|| < b < sqrt(D) and
fall into rho-cycles, one cycle per proper equivalence class.

Enumerations solve b^2 = D (mod 4a) with modular square roots for each
leading coefficient a, instead of scanning every b, so the cost stays near
linear in sqrt(|D|).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple

from . import arith
from .errors import (
    ClassBudgetExceeded,
    DiscriminantMismatch,
    ImprimitiveForm,
    InvalidDiscriminant,
    NotDefinite,
    NotIndefinite,
    SquareDiscriminant,
)

DEFAULT_CLASS_BUDGET = 250_000


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> QuadForm:
        return _qf(self.a, -self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def _qf(a: int, b: int, c: int) -> QuadForm:
    # skips validation; only for results derived from valid forms
    return tuple.__new__(QuadForm, (a, b, c))


def form(a: int, b: int, c: int) -> QuadForm:
    """Validated constructor: nonzero discriminant, primitive."""
    if b * b - 4 * a * c == 0:
        raise InvalidDiscriminant(f"form ({a}, {b}, {c}) has discriminant 0")
    if gcd(gcd(a, b), c) != 1:
        raise ImprimitiveForm(f"form ({a}, {b}, {c}) is not primitive")
    return _qf(a, b, c)


@dataclass(frozen=True)
class Cycle:
    discriminant: int
    forms: tuple[QuadForm, ...]
    principal: bool = False

    def __len__(self):
        return len(self.forms)

    def __contains__(self, f):
        return f in self.forms


def check_discriminant(D: int) -> None:
    if D == 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{D} is not a discriminant (need D != 0, D = 0 or 1 mod 4)")


def principal_form(D: int) -> QuadForm:
    check_discriminant(D)
    if arith.is_perfect_square(D):
        raise InvalidDiscriminant(f"{D} is a square")
    if D % 4 == 0:
        return _qf(1, 0, -D // 4)
    return _qf(1, 1, (1 - D) // 4)


def _check_primitive(f: QuadForm) -> None:
    if gcd(gcd(f[0], f[1]), f[2]) != 1:
        raise ImprimitiveForm(f"form {f} is not primitive")


# -- definite -----------------------------------------------------------------


def _reduce_definite(a: int, b: int, c: int) -> QuadForm:
    D = b * b - 4 * a * c
    while True:
        if not -a < b <= a:
            # b -> b + 2ka with b in (-a, a]
            k = (a - b) // (2 * a)
            b += 2 * k * a
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return _qf(a, b, c)


def reduce_definite(f: QuadForm) -> QuadForm:
    a, b, c = f
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise NotDefinite(f"{tuple(f)} is not positive definite")
    _check_primitive(f)
    return _reduce_definite(a, b, c)


def is_reduced_definite(f: QuadForm) -> bool:
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def _compose_raw(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet composition of two forms of the same discriminant."""
    a1, b1, c1 = f
    a2, b2, c2 = g
    D = b1 * b1 - 4 * a1 * c1
    beta = (b1 + b2) // 2
    g1, x1, y1 = arith.xgcd(a1, a2)
    e, u, z = arith.xgcd(g1, beta)
    x, y = u * x1, u * y1
    A = a1 * a2 // (e * e)
    B = (x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + D) // 2) // e
    m = 2 * abs(A)
    B %= m
    if B > abs(A):
        B -= m
    C = (B * B - D) // (4 * A)
    return _qf(A, B, C)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition; reduced when D < 0."""
    D = f.discriminant
    if g.discriminant != D:
        raise DiscriminantMismatch(f"{tuple(f)} has D = {D}, {tuple(g)} has D = {g.discriminant}")
    _check_primitive(f)
    _check_primitive(g)
    if D < 0:
        if f[0] <= 0 or g[0] <= 0:
            raise NotDefinite("composition of definite forms needs a > 0")
        return _reduce_definite(*_compose_raw(f, g))
    return _compose_raw(f, g)


def enumerate_reduced_definite(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D < 0, sorted by (a, b)."""
    check_discriminant(D)
    if D >= 0:
        raise InvalidDiscriminant(f"{D} is not negative")
    amax = isqrt(-D // 3)
    if amax > budget:
        raise ClassBudgetExceeded(D, amax, budget)
    spf = arith.smallest_prime_factors(amax)
    out = []
    for a in range(1, amax + 1):
        for b in _middle_coefficients(D, a, spf):
            if b <= -a or b > a:
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(_qf(a, b, c))
    out.sort()
    return out


def _middle_coefficients(D: int, a: int, spf: list[int]) -> list[int]:
    """Representatives b in (-a, a] of the solutions of b^2 = D (mod 4a)."""
    fac = {2: 2}
    m = a
    while m > 1:
        p = spf[m]
        m //= p
        fac[p] = fac.get(p, 0) + 1
    roots = arith.sqrt_mod(D, fac)
    # b and b + 2a give the same residue b^2 mod 4a
    bs = set()
    for r in roots:
        r %= 2 * a
        bs.add(r - 2 * a if r > a else r)
    return sorted(bs)


# -- indefinite ---------------------------------------------------------------


def _check_indefinite(D: int) -> int:
    if D <= 0:
        raise NotIndefinite(f"discriminant {D} is not positive")
    s = isqrt(D)
    if s * s == D:
        raise SquareDiscriminant(f"discriminant {D} is a square")
    return s


def is_reduced_indefinite(f: QuadForm, s: int | None = None) -> bool:
    a, b, c = f
    if s is None:
        s = isqrt(b * b - 4 * a * c)
    # with sqrt(D) irrational: 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b
    return 0 < b <= s and s - 2 * abs(a) + 1 <= b and 2 * abs(a) <= b + s


def _rho(f: QuadForm, D: int, s: int) -> QuadForm:
    a, b, c = f
    ac = abs(c)
    m = 2 * ac
    if ac > s:
        # r = -b mod 2|c| in (-|c|, |c|]
        r = (-b) % m
        if r > ac:
            r -= m
    else:
        # r = -b mod 2|c| in (s - 2|c|, s]
        lo = s - m + 1
        r = lo + (-b - lo) % m
    return _qf(c, r, (r * r - D) // (4 * c))


def rho(f: QuadForm) -> QuadForm:
    """One normalized reduction step (a, b, c) -> (c, r, (r^2 - D)/4c)."""
    D = f.discriminant
    s = _check_indefinite(D)
    return _rho(f, D, s)


def reduce_indefinite(f: QuadForm) -> QuadForm:
    D = f.discriminant
    s = _check_indefinite(D)
    _check_primitive(f)
    return _reduce_indefinite(f, D, s)


def _reduce_indefinite(f: QuadForm, D: int, s: int) -> QuadForm:
    a, b, c = f
    # normalize b against a first, then iterate rho
    aa = abs(a)
    m = 2 * aa
    if aa > s:
        b %= m
        if b > aa:
            b -= m
    else:
        lo = s - m + 1
        b = lo + (b - lo) % m
    f = _qf(a, b, (b * b - D) // (4 * a))
    while not is_reduced_indefinite(f, s):
        f = _rho(f, D, s)
    return f


def reduced_indefinite_forms(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> list[QuadForm]:
    """All primitive reduced indefinite forms of discriminant D, sorted."""
    check_discriminant(D)
    s = _check_indefinite(D)
    if s > budget:
        raise ClassBudgetExceeded(D, s, budget)
    spf = arith.smallest_prime_factors(s)
    out = []
    # 2|a| <= b + s <= 2s bounds |a| by s
    for a in range(1, s + 1):
        lo = max(1, s - 2 * a + 1, 2 * a - s)
        if lo > s:
            continue
        for r in _root_classes(D, a, spf):
            # smallest b >= lo with b = r (mod 2a); window length is <= 2a
            b = lo + (r - lo) % (2 * a)
            while b <= s:
                c = (b * b - D) // (4 * a)
                if gcd(gcd(a, b), c) == 1:
                    out.append(_qf(a, b, c))
                    out.append(_qf(-a, b, -c))
                b += 2 * a
    out.sort()
    return out


def _root_classes(D: int, a: int, spf: list[int]) -> list[int]:
    """Residues r mod 2a with r^2 = D (mod 4a)."""
    fac = {2: 2}
    m = a
    while m > 1:
        p = spf[m]
        m //= p
        fac[p] = fac.get(p, 0) + 1
    return sorted({r % (2 * a) for r in arith.sqrt_mod(D, fac)})


def cycle_of(f: QuadForm) -> list[QuadForm]:
    """The rho-cycle through the reduced indefinite form f, starting at f."""
    D = f.discriminant
    s = _check_indefinite(D)
    if not is_reduced_indefinite(f, s):
        raise ValueError(f"{tuple(f)} is not reduced")
    out = [f]
    g = _rho(f, D, s)
    while g != f:
        out.append(g)
        g = _rho(g, D, s)
    return out


def enumerate_cycles_indefinite(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> list[Cycle]:
    """Partition the reduced forms of D > 0 into rho-cycles.

    Cycles are listed by their least form; each cycle starts at its least form.
    """
    forms = reduced_indefinite_forms(D, budget)
    s = isqrt(D)
    seen: set[QuadForm] = set()
    principal = _reduce_indefinite(principal_form(D), D, s)
    cycles = []
    for f in forms:
        if f in seen:
            continue
        members = cycle_of(f)
        seen.update(members)
        cycles.append(Cycle(D, tuple(members), principal in members))
    return cycles


def is_equivalent_indefinite(f: QuadForm, g: QuadForm) -> bool:
    D = f.discriminant
    if g.discriminant != D:
        raise DiscriminantMismatch(f"{tuple(f)} has D = {D}, {tuple(g)} has D = {g.discriminant}")
    s = _check_indefinite(D)
    _check_primitive(f)
    _check_primitive(g)
    rf = _reduce_indefinite(f, D, s)
    start = _reduce_indefinite(g, D, s)
    h = start
    while True:
        if h == rf:
            return True
        h = _rho(h, D, s)
        if h == start:
            return False
