"""The cubic x^3 - uvx - u^2 and the Kishi-Miyake conditions (K-1)..(K-4).

When all conditions hold, Q(sqrt(disc f)) has class number divisible by 3.
Only that direction is checked here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from . import arith
from .classgroup import field_discriminant
from .errors import ZeroU


class K4Branch(str, enum.Enum):
    K41 = "K41"
    K42 = "K42"
    K43 = "K43"
    NONE = "none"


@dataclass(frozen=True)
class KMInstance:
    u: int
    v: int
    poly_p: int
    poly_q: int
    disc_f: int

    def evaluate(self, x: int) -> int:
        return x**3 + self.poly_p * x + self.poly_q


@dataclass(frozen=True)
class KMVerdict:
    k1: bool
    k2: bool
    k3: bool
    k4_branch: K4Branch
    all_satisfied: bool


def km_polynomial(u: int, v: int) -> KMInstance:
    if u == 0:
        raise ZeroU("u must be nonzero")
    p, q = -u * v, -u * u
    disc = -4 * p**3 - 27 * q**2
    assert disc == u**3 * (4 * v**3 - 27 * u)
    return KMInstance(u, v, p, q, disc)


def is_irreducible_cubic(inst: KMInstance) -> bool:
    """A monic integral cubic is reducible iff it has an integer root dividing q = -u^2."""
    f = arith.factor(abs(inst.u))
    square = arith.Factorization(inst.u**2, tuple((p, 2 * e) for p, e in f.factors))
    return not any(inst.evaluate(x) == 0 for r in square.divisors() for x in (r, -r))


def k4_branch(u: int, v: int) -> K4Branch:
    if v % 3:
        return K4Branch.K41
    near = (u - v - 1, u - v + 1)
    if (u * v) % 9 != 3:
        return K4Branch.K42 if any(t % 9 == 0 for t in near) else K4Branch.NONE
    return K4Branch.K43 if any(t % 27 == 0 for t in near) else K4Branch.NONE


def km_check(u: int, v: int) -> KMVerdict:
    inst = km_polynomial(u, v)
    k1 = gcd(u, v) == 1
    k2 = is_irreducible_cubic(inst)
    k3 = not arith.is_perfect_square(inst.disc_f)
    branch = k4_branch(u, v)
    return KMVerdict(k1, k2, k3, branch, k1 and k2 and k3 and branch is not K4Branch.NONE)


def km_field_discriminant(inst: KMInstance) -> int:
    """Fundamental discriminant of Q(sqrt(disc_f))."""
    return field_discriminant(inst.disc_f)
