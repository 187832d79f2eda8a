"""The fields K- = Q(sqrt(l^2 - 2 l k^(3n))) and K+ = Q(sqrt(3(2 l k^(3n) - l^2))).

For k = 4, l = 2 (mod 135), k, l, n odd, gcd(k, l) = 1, n prime to 3 and
l < 2k^(3n), the claim under test is that Cl(K-) has 3-rank at least 2.
``verify_theorem1`` computes both 3-ranks and records every claim as
CONFIRMED, REFUTED or SKIPPED; it never stops on a refutation.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from . import arith
from .classgroup import (
    ClassGroupStructure,
    class_group_imaginary,
    class_group_real,
    field_discriminant,
    three_rank_imaginary,
    three_rank_real,
)
from .errors import BudgetExceeded, InvalidParams
from .kishi_miyake import KMInstance, KMVerdict, km_check, km_polynomial
from .quadforms import DEFAULT_CLASS_BUDGET
from .rank_relation import TripleSearchResult, search_triples

log = logging.getLogger(__name__)

# Validation labels. "k_odd" and "l_odd" are kept separate from "n_odd" because
# only the proof, not the statement, clearly needs k and l odd.
K_MOD_135 = "k_mod_135"
L_MOD_135 = "l_mod_135"
K_ODD = "k_odd"
L_ODD = "l_odd"
N_ODD = "n_odd"
GCD_K_L = "gcd_k_l"
N_MOD_3 = "n_mod_3"
L_BOUND = "l_lt_2k3n"
POSITIVE = "positive"


class ClaimStatus(str, enum.Enum):
    EXPECTED = "EXPECTED"
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    SKIPPED = "SKIPPED"


CLAIMS = ("s_ge_1", "r_ge_2", "r_eq_s_plus_1", "km_all_satisfied")


@dataclass(frozen=True)
class FamilyParams:
    k: int
    l: int  # noqa: E741
    n: int


@dataclass(frozen=True)
class FieldInstance:
    radicand_minus: int
    radicand_plus: int
    a: int
    d: int
    disc_minus: int
    disc_plus: int
    # claim name -> holds; a False entry is a refuted congruence
    congruences: dict[str, bool] = field(default_factory=dict)

    @property
    def refuted_congruences(self) -> list[str]:
        return [name for name, ok in self.congruences.items() if not ok]


@dataclass
class VerificationRecord:
    params: FamilyParams
    instance: FieldInstance
    km_instance: KMInstance
    km_verdict: KMVerdict
    s: int | None
    r: int | None
    class_group_minus: ClassGroupStructure | None
    class_group_plus: ClassGroupStructure | None
    triple_search: TripleSearchResult | None
    paper_claims: dict[str, ClaimStatus]
    cross_checks: dict[str, bool]
    budget_exceeded: list[str]


def validate_params(k: int, l: int, n: int) -> list[str]:  # noqa: E741
    if min(k, l, n) < 1:
        return [POSITIVE]
    bad = []
    if k % 135 != 4:
        bad.append(K_MOD_135)
    if l % 135 != 2:
        bad.append(L_MOD_135)
    if k % 2 == 0:
        bad.append(K_ODD)
    if l % 2 == 0:
        bad.append(L_ODD)
    if n % 2 == 0:
        bad.append(N_ODD)
    if gcd(k, l) != 1:
        bad.append(GCD_K_L)
    if n % 3 == 0:
        bad.append(N_MOD_3)
    if not l < 2 * k ** (3 * n):
        bad.append(L_BOUND)
    return bad


def _require_valid(p: FamilyParams) -> None:
    bad = validate_params(p.k, p.l, p.n)
    if bad:
        raise InvalidParams(bad)


def instantiate(p: FamilyParams, factor_budget: int = arith.DEFAULT_FACTOR_BUDGET) -> FieldInstance:
    _require_valid(p)
    k3n = p.k ** (3 * p.n)
    radicand_minus = p.l * p.l - 2 * p.l * k3n
    radicand_plus = 3 * (2 * p.l * k3n - p.l * p.l)
    a, d = arith.squarefree_decompose(-radicand_minus, factor_budget)
    disc_minus = field_discriminant(-d)
    disc_plus = field_discriminant(3 * d)
    congruences = {
        "radicand_minus_eq_minus_a2d": radicand_minus == -a * a * d,
        "radicand_plus_eq_minus_3_radicand_minus": radicand_plus == -3 * radicand_minus,
        "3_divides_a": a % 3 == 0,
        "a_odd": a % 2 == 1,
        "3_not_divides_d": d % 3 != 0,
        "a2d_mod_27_in_9_18": (a * a * d) % 27 in (9, 18),
        "d_mod_4_eq_1": d % 4 == 1,
    }
    inst = FieldInstance(radicand_minus, radicand_plus, a, d, disc_minus, disc_plus, congruences)
    for name in inst.refuted_congruences:
        log.warning("RefutedCongruence: %s fails for %s", name, p)
    return inst


def km_instance_for(p: FamilyParams) -> KMInstance:
    _require_valid(p)
    u, v = 2 * p.l, 3 * p.k**p.n
    assert gcd(u, v) == 1
    return km_polynomial(u, v)


def _imaginary_stage(D: int, budget: int):
    return class_group_imaginary(D, budget), three_rank_imaginary(D, budget)


def _real_stage(D: int, budget: int):
    return class_group_real(D, budget), three_rank_real(D, budget)


def _triple_stage(d: int, bound: int, max_cells: int | None):
    return search_triples(d, bound, max_cells=max_cells)


def _settle(fn, *args):
    try:
        return fn(*args), None
    except BudgetExceeded as exc:
        return None, exc


def _claim(ok: bool | None) -> ClaimStatus:
    if ok is None:
        return ClaimStatus.SKIPPED
    return ClaimStatus.CONFIRMED if ok else ClaimStatus.REFUTED


def verify_theorem1(
    p: FamilyParams,
    triple_bound: int = 1000,
    factor_budget: int = arith.DEFAULT_FACTOR_BUDGET,
    class_budget: int = DEFAULT_CLASS_BUDGET,
    triple_budget: int | None = None,
    workers: int = 1,
) -> VerificationRecord:
    """Run every check for one parameter triple.

    Stages that exceed their budget leave their fields as None, are listed in
    ``budget_exceeded`` and turn the dependent claims into SKIPPED.
    """
    inst = instantiate(p, factor_budget)
    km_inst = km_instance_for(p)
    verdict = km_check(km_inst.u, km_inst.v)

    stages = [
        (_imaginary_stage, inst.disc_minus, class_budget),
        (_real_stage, inst.disc_plus, class_budget),
        (_triple_stage, inst.d, triple_bound, triple_budget),
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(stages))) as pool:
            futures = [pool.submit(_settle, *stage) for stage in stages]
            results = [f.result() for f in futures]
    else:
        results = [_settle(*stage) for stage in stages]
    (minus, minus_err), (plus, plus_err), (triples, triple_err) = results

    budget_exceeded = []
    cross = {}
    r = s = None
    cg_minus = cg_plus = None
    if minus_err is None:
        cg_minus, r_torsion = minus
        cross["r_torsion_eq_divisors"] = cg_minus.three_rank == r_torsion
        r = r_torsion
    else:
        budget_exceeded.append(f"class_group_minus: {minus_err}")
    if plus_err is None:
        cg_plus, s_torsion = plus
        cross["s_torsion_eq_divisors"] = cg_plus.three_rank == s_torsion
        s = s_torsion
    else:
        budget_exceeded.append(f"class_group_plus: {plus_err}")
    if triple_err is not None:
        budget_exceeded.append(f"triple_search: {triple_err}")
    elif not triples.exhausted:
        budget_exceeded.append("triple_search: box not exhausted")
    if not all(cross.values()):
        raise AssertionError(f"3-rank methods disagree for {p}: {cross}")

    claims = {
        "s_ge_1": _claim(None if s is None else s >= 1),
        "r_ge_2": _claim(None if r is None else r >= 2),
        "r_eq_s_plus_1": _claim(None if r is None or s is None else r == s + 1),
        "km_all_satisfied": _claim(verdict.all_satisfied),
    }
    return VerificationRecord(
        params=p,
        instance=inst,
        km_instance=km_inst,
        km_verdict=verdict,
        s=s,
        r=r,
        class_group_minus=cg_minus,
        class_group_plus=cg_plus,
        triple_search=triples,
        paper_claims=claims,
        cross_checks=cross,
        budget_exceeded=budget_exceeded,
    )
