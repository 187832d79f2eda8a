"""Class group structure and 3-ranks of quadratic fields.

Imaginary fields use the reduced positive definite forms with composition as
the group law. Real fields use rho-cycles of reduced indefinite forms, so
the group computed is the narrow class group; its odd part (and hence its
3-rank) coincides with that of the ordinary class group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Hashable, Sequence

from . import arith
from .errors import InvalidDiscriminant, NotFundamental
from .quadforms import (
    DEFAULT_CLASS_BUDGET,
    QuadForm,
    _compose_raw,
    _reduce_definite,
    _reduce_indefinite,
    enumerate_cycles_indefinite,
    enumerate_reduced_definite,
    principal_form,
)


@dataclass(frozen=True)
class ClassGroupStructure:
    discriminant: int
    order: int
    elementary_divisors: tuple[int, ...]
    three_rank: int


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return arith.is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and arith.is_squarefree(m)
    return False


def field_discriminant(n: int, budget: int = arith.DEFAULT_FACTOR_BUDGET) -> int:
    """Discriminant of Q(sqrt(n)) for a nonzero non-square integer n."""
    if n == 0 or arith.is_perfect_square(n):
        raise InvalidDiscriminant(f"Q(sqrt({n})) is not a quadratic field")
    _, d = arith.squarefree_decompose(abs(n), budget)
    d = d if n > 0 else -d
    return d if d % 4 == 1 else 4 * d


def _require_fundamental(D: int, sign: int) -> None:
    if D == 0 or (D > 0) != (sign > 0):
        raise InvalidDiscriminant(f"expected a {'positive' if sign > 0 else 'negative'} discriminant, got {D}")
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")


# -- generic finite abelian groups ----------------------------------------------


class FiniteAbelianGroup:
    """An explicitly listed finite abelian group with a multiplication callback."""

    def __init__(self, elements: Sequence[Hashable], identity: Hashable,
                 mul: Callable[[Hashable, Hashable], Hashable]):
        self.elements = list(elements)
        self.identity = identity
        self.mul = mul

    @property
    def order(self) -> int:
        return len(self.elements)

    def power(self, x, n: int):
        result = self.identity
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def count_torsion(self, n: int) -> int:
        """Number of x with x**n == identity, by direct evaluation."""
        return sum(1 for x in self.elements if self.power(x, n) == self.identity)

    def sylow_subgroup(self, p: int, e: int) -> list:
        """Elements of the Sylow p-subgroup (order p**e), built by closure."""
        cofactor = self.order // p**e
        sub = [self.identity]
        members = {self.identity}
        for x in self.elements:
            if len(sub) == p**e:
                break
            y = self.power(x, cofactor)
            if y in members:
                continue
            # sub <- sub * <y>
            layer = sub
            new = list(sub)
            while True:
                layer = [self.mul(z, y) for z in layer]
                if layer[0] in members:
                    break
                new.extend(layer)
                members.update(layer)
            sub = new
        assert len(sub) == p**e
        return sub

    def p_part_exponents(self, p: int, e: int) -> list[int]:
        """Exponents k_1 >= k_2 >= ... with Sylow_p = prod Z/p^k_i."""
        sub = self.sylow_subgroup(p, e)
        pmap = {x: self.power(x, p) for x in sub}
        # killed[j] = elements annihilated by p^j
        killed = {self.identity}
        sizes = [1]
        while len(killed) < len(sub):
            killed = {x for x in sub if pmap[x] in killed}
            sizes.append(len(killed))
        # number of cyclic factors of order >= p^j is log_p(sizes[j] / sizes[j-1])
        at_least = [_ilog(sizes[j] // sizes[j - 1], p) for j in range(1, len(sizes))]
        exps = []
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            exps += [j] * (cnt - nxt)
        return sorted(exps, reverse=True)

    def elementary_divisors(self) -> tuple[int, ...]:
        """Invariant factors d_1 | d_2 | ... | d_m, each >= 2."""
        h = self.order
        parts = {}
        for p, e in arith.factor(h).factors:
            parts[p] = self.p_part_exponents(p, e)
        width = max((len(v) for v in parts.values()), default=0)
        divisors = []
        for i in range(width):
            d = 1
            for p, exps in parts.items():
                if i < len(exps):
                    d *= p ** exps[i]
            divisors.append(d)
        return tuple(sorted(divisors))


def _ilog(n: int, p: int) -> int:
    k = 0
    while n > 1:
        assert n % p == 0
        n //= p
        k += 1
    return k


def three_rank_from_divisors(divisors: Sequence[int]) -> int:
    return sum(1 for d in divisors if d % 3 == 0)


def three_rank_from_torsion(count: int) -> int:
    rank = _ilog(count, 3)
    assert 3**rank == count
    return rank


# -- imaginary fields -------------------------------------------------------------


def imaginary_group(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> FiniteAbelianGroup:
    forms = enumerate_reduced_definite(D, budget)

    def mul(f: QuadForm, g: QuadForm) -> QuadForm:
        return _reduce_definite(*_compose_raw(f, g))

    return FiniteAbelianGroup(forms, principal_form(D), mul)


def class_group_imaginary(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> ClassGroupStructure:
    _require_fundamental(D, -1)
    G = imaginary_group(D, budget)
    divs = G.elementary_divisors()
    return ClassGroupStructure(D, G.order, divs, three_rank_from_divisors(divs))


def three_rank_imaginary(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> int:
    """3-rank by counting classes whose cube is principal."""
    _require_fundamental(D, -1)
    G = imaginary_group(D, budget)
    return three_rank_from_torsion(G.count_torsion(3))


# -- real fields (narrow sense) -----------------------------------------------------


def real_group(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> FiniteAbelianGroup:
    """Narrow class group with elements labelled by cycle index."""
    cycles = enumerate_cycles_indefinite(D, budget)
    label = {f: i for i, cyc in enumerate(cycles) for f in cyc.forms}
    reps = [cyc.forms[0] for cyc in cycles]
    s = isqrt(D)
    identity = next(i for i, cyc in enumerate(cycles) if cyc.principal)

    def mul(i: int, j: int) -> int:
        return label[_reduce_indefinite(_compose_raw(reps[i], reps[j]), D, s)]

    return FiniteAbelianGroup(range(len(cycles)), identity, mul)


def narrow_class_number_real(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> int:
    _require_fundamental(D, +1)
    return len(enumerate_cycles_indefinite(D, budget))


def class_group_real(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> ClassGroupStructure:
    _require_fundamental(D, +1)
    G = real_group(D, budget)
    divs = G.elementary_divisors()
    return ClassGroupStructure(D, G.order, divs, three_rank_from_divisors(divs))


def three_rank_real(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> int:
    _require_fundamental(D, +1)
    G = real_group(D, budget)
    return three_rank_from_torsion(G.count_torsion(3))


def class_group(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> ClassGroupStructure:
    return class_group_imaginary(D, budget) if D < 0 else class_group_real(D, budget)


def three_rank(D: int, budget: int = DEFAULT_CLASS_BUDGET) -> int:
    return three_rank_imaginary(D, budget) if D < 0 else three_rank_real(D, budget)


# -- analytic oracle ------------------------------------------------------------------


def dirichlet_class_number_oracle(D: int) -> int:
    """h(D) for D < 0 from the finite character sum (w / 2|D|) |sum chi(a) a|.

    chi(a) is evaluated at primes with the Kronecker symbol and extended
    multiplicatively, which keeps the sweep over small |D| fast.
    """
    _require_fundamental(D, -1)
    N = -D
    spf = arith.smallest_prime_factors(N)
    chi = [0] * N
    if N > 1:
        chi[1] = 1
    for a in range(2, N):
        p = spf[a]
        if p == a:
            chi[a] = arith.kronecker(D, p)
        else:
            chi[a] = chi[p] * chi[a // p]
    total = abs(sum(c * a for a, c in enumerate(chi)))
    w = {-3: 6, -4: 4}.get(D, 2)
    h, rem = divmod(w * total, 2 * N)
    assert rem == 0, "character sum not divisible; D is not fundamental?"
    return h
