"""Command-line front end.

    threerank classgroup D
    threerank rank3 D
    threerank forms D
    threerank km-check u v
    threerank search-triples d B
    threerank family k l n
    threerank verify k l n

Exit status: 0 computed (whatever the claim outcomes), 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Any, TextIO

from . import arith, report
from .classgroup import class_group, three_rank
from .errors import BudgetExceeded, InvalidInput
from .family import FamilyParams, instantiate, validate_params, verify_theorem1
from .kishi_miyake import km_check, km_field_discriminant, km_polynomial
from .quadforms import (
    DEFAULT_CLASS_BUDGET,
    enumerate_cycles_indefinite,
    enumerate_reduced_definite,
)
from .rank_relation import search_triples

WORKERS_ENV = "THREERANK_WORKERS"
DEFAULT_TRIPLE_BOUND = 1000
FORMATS = ("table", "json", "csv")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    command: str
    args: tuple[int, ...]
    format: str = "table"
    triple_bound: int = DEFAULT_TRIPLE_BOUND
    factor_budget: int = arith.DEFAULT_FACTOR_BUDGET
    class_budget: int = DEFAULT_CLASS_BUDGET
    workers: int = 1


@dataclass
class _Report:
    document: Any
    row: dict[str, Any] | None = None
    csv_columns: tuple[str, ...] | None = None
    csv_rows: list[tuple] = field(default_factory=list)
    status: int = EXIT_OK


def _classgroup(cfg: RunConfig) -> _Report:
    (D,) = cfg.args
    return _Report(class_group(D, cfg.class_budget))


def _rank3(cfg: RunConfig) -> _Report:
    (D,) = cfg.args
    doc = {"discriminant": D, "three_rank": three_rank(D, cfg.class_budget)}
    return _Report(doc, row=doc)


def _forms(cfg: RunConfig) -> _Report:
    (D,) = cfg.args
    if D < 0:
        forms = enumerate_reduced_definite(D, cfg.class_budget)
        doc = {"discriminant": D, "forms": forms}
        return _Report(doc, csv_columns=("a", "b", "c"), csv_rows=[tuple(f) for f in forms])
    cycles = enumerate_cycles_indefinite(D, cfg.class_budget)
    doc = {"discriminant": D, "cycles": cycles}
    rows = [(*f, i, cyc.principal) for i, cyc in enumerate(cycles) for f in cyc.forms]
    return _Report(doc, csv_columns=("a", "b", "c", "cycle", "principal"), csv_rows=rows)


def _km_check(cfg: RunConfig) -> _Report:
    u, v = cfg.args
    inst = km_polynomial(u, v)
    verdict = km_check(u, v)
    field_disc = km_field_discriminant(inst) if verdict.k3 else None
    doc = {"instance": inst, "verdict": verdict, "field_discriminant": field_disc}
    row = {
        "u": u,
        "v": v,
        "disc_f": inst.disc_f,
        "K-1": verdict.k1,
        "K-2": verdict.k2,
        "K-3": verdict.k3,
        "K-4": verdict.k4_branch.value,
        "all": verdict.all_satisfied,
        "field_disc": field_disc,
    }
    return _Report(doc, row=row)


def _search_triples(cfg: RunConfig) -> _Report:
    d, bound = cfg.args
    res = search_triples(d, bound, workers=cfg.workers)
    return _Report(res, csv_columns=("x", "y", "z"), csv_rows=[tuple(t) for t in res.found])


def _family(cfg: RunConfig) -> _Report:
    p = FamilyParams(*cfg.args)
    violations = validate_params(p.k, p.l, p.n)
    inst = None if violations else instantiate(p, cfg.factor_budget)
    doc = {"params": p, "violations": violations, "instance": inst}
    return _Report(doc, status=EXIT_INVALID if violations else EXIT_OK)


def _verify(cfg: RunConfig) -> _Report:
    rec = verify_theorem1(
        FamilyParams(*cfg.args),
        triple_bound=cfg.triple_bound,
        factor_budget=cfg.factor_budget,
        class_budget=cfg.class_budget,
        workers=cfg.workers,
    )
    return _Report(rec, status=EXIT_BUDGET if rec.budget_exceeded else EXIT_OK)


COMMANDS = {
    "classgroup": (_classgroup, ("D",), "class group structure (D < 0 imaginary, D > 0 narrow real)"),
    "rank3": (_rank3, ("D",), "3-rank of the class group of discriminant D"),
    "forms": (_forms, ("D",), "reduced forms (D < 0) or rho-cycles (D > 0)"),
    "km-check": (_km_check, ("u", "v"), "Kishi-Miyake conditions K-1..K-4 for x^3 - uvx - u^2"),
    "search-triples": (_search_triples, ("d", "B"), "bounded search for triples satisfying K-5..K-8"),
    "family": (_family, ("k", "l", "n"), "build the fields K- and K+ for (k, l, n)"),
    "verify": (_verify, ("k", "l", "n"), "full 3-rank verification for (k, l, n)"),
}


def _render(rep: _Report, fmt: str) -> str:
    if fmt == "json":
        return report.render_json(rep.document)
    if fmt == "csv" and rep.csv_columns is not None:
        return report.render_csv(rep.csv_rows, rep.csv_columns)
    if rep.row is not None:
        return report.render_row_table(rep.row)
    return report.render_table(rep.document)


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    handler = COMMANDS[cfg.command][0]
    try:
        rep = handler(cfg)
    except InvalidInput as exc:
        print(f"threerank: error: {exc}", file=err)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"threerank: budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    out.write(_render(rep, cfg.format))
    return rep.status


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table",
                        help="output format (default: table; csv only for list-shaped results)")
    common.add_argument("--triple-bound", type=_positive, default=DEFAULT_TRIPLE_BOUND,
                        help=f"box size for the triple search in verify (default: {DEFAULT_TRIPLE_BOUND})")
    common.add_argument("--factor-budget", type=_positive, default=arith.DEFAULT_FACTOR_BUDGET,
                        help=f"Pollard rho iterations per factorization (default: {arith.DEFAULT_FACTOR_BUDGET})")
    common.add_argument("--class-budget", type=_positive, default=DEFAULT_CLASS_BUDGET,
                        help=f"largest leading-coefficient scan per class group (default: {DEFAULT_CLASS_BUDGET})")
    common.add_argument("--workers", type=_positive, default=None,
                        help=f"worker processes (default: ${WORKERS_ENV} or 1)")

    parser = argparse.ArgumentParser(
        prog="threerank",
        description="Class groups of quadratic fields and 3-rank checks.",
        epilog="exit status: 0 computed, 2 invalid input, 3 budget exceeded",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, params, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for param in params:
            sp.add_argument(param, type=int)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    params = COMMANDS[ns.command][1]
    return RunConfig(
        command=ns.command,
        args=tuple(getattr(ns, p) for p in params),
        format=ns.format,
        triple_bound=ns.triple_bound,
        factor_budget=ns.factor_budget,
        class_budget=ns.class_budget,
        workers=ns.workers if ns.workers is not None else _default_workers(),
    )


def main(argv: list[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
