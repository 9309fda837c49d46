"""Command line: ``gf2inv reproduce | verify-paper | hilbert``.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 fixture or
environment error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fixtures import FixtureError
from .hilbert import CycleTypeCensus, expand, molien_permutation, numerator_for_degrees, strip_trivial_summand
from .pipeline import FEASIBILITY_CHECKS, PAPER_CHECKS, PIPELINE_CHECKS, Pipeline, ReportDocument, run_checks

EXIT_OK, EXIT_MISMATCH, EXIT_ENV = 0, 1, 2

GROUPS = ("G", "D", "trivial")
MODULES = ("W", "Wprime")
# hsop degrees used to display a numerator, when known
KNOWN_DEGREES = {
    ("G", "Wprime"): (2, 3, 3, 4, 6, 7),
    ("G", "W"): (1, 2, 3, 3, 4, 6, 7),
    ("D", "Wprime"): (1, 1, 2, 2, 2, 4),
    ("trivial", "W"): (1,) * 7,
    ("trivial", "Wprime"): (1,) * 6,
}


def _add_common(p: argparse.ArgumentParser, degree_bound: int | None = 10) -> None:
    p.add_argument("--json", action="store_true", help="print the JSON report on standard output")
    p.add_argument("--out", type=Path, help="write the JSON report to this path")
    p.add_argument("--degree-bound", type=int, default=degree_bound,
                   help="degree bound for the series/component cross-checks")
    p.add_argument("--enable-feasibility-search", action="store_true",
                   help="also run the degree-multiset feasibility check")
    p.add_argument("--fixture", type=Path, help="matrix fixture file (default: packaged copy)")
    p.add_argument("--timings", action="store_true", help="record elapsed milliseconds in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gf2inv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("reproduce", "run the whole pipeline and report every check"),
        ("verify-paper", "run only the comparisons against published values"),
    ):
        _add_common(sub.add_parser(name, help=help_))
    h = sub.add_parser("hilbert", help="print an exact Hilbert series")
    h.add_argument("--group", default="G", help="one of: " + ", ".join(GROUPS))
    h.add_argument("--module", default="Wprime", help="one of: " + ", ".join(MODULES))
    h.add_argument("--terms", type=int, default=20, help="number of coefficients (--degree-bound d gives d+1)")
    _add_common(h, degree_bound=None)
    return parser


def _emit(report: ReportDocument, args, artifacts: dict | None = None) -> int:
    text = report.to_json(artifacts)
    if args.out is not None:
        args.out.write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        print(report.table())
    return EXIT_OK if report.summary["fail"] == 0 else EXIT_MISMATCH


def cmd_reproduce(args) -> int:
    pipeline = Pipeline(args.fixture, degree_bound=args.degree_bound)
    checks = PAPER_CHECKS + PIPELINE_CHECKS
    if args.enable_feasibility_search:
        checks = checks + FEASIBILITY_CHECKS
    report = run_checks(pipeline, checks, timings=args.timings)
    try:
        artifacts = pipeline.artifacts()
    except Exception as exc:  # stages already reported as failed checks
        artifacts = {"error": f"{type(exc).__name__}: {exc}"}
    return _emit(report, args, artifacts)


def cmd_verify_paper(args) -> int:
    pipeline = Pipeline(args.fixture, degree_bound=args.degree_bound)
    checks = PAPER_CHECKS + (FEASIBILITY_CHECKS if args.enable_feasibility_search else [])
    return _emit(run_checks(pipeline, checks, timings=args.timings), args)


def cmd_hilbert(args) -> int:
    if args.group not in GROUPS:
        print(f"unknown group {args.group!r}; choose from {', '.join(GROUPS)}", file=sys.stderr)
        return EXIT_ENV
    if args.module not in MODULES:
        print(f"unknown module {args.module!r}; choose from {', '.join(MODULES)}", file=sys.stderr)
        return EXIT_ENV
    if args.group == "trivial":
        series = molien_permutation(CycleTypeCensus.from_mapping({(1,) * 7: 1}))
    else:
        pipeline = Pipeline(args.fixture)
        setting = pipeline.setting
        sub = None if args.group == "G" else setting.sylow.group
        census = setting.census(sub)
        series = molien_permutation(census)
    if args.module == "Wprime":
        series = strip_trivial_summand(series)
    degrees = KNOWN_DEGREES.get((args.group, args.module))
    top = args.degree_bound if args.degree_bound is not None else args.terms - 1
    doc = {"group": args.group, "module": args.module, "series": str(series), "hsop_form": None,
           "coefficients": expand(series, top)}
    if degrees is not None:
        num = numerator_for_degrees(series, degrees)
        den = "*".join("(1-t)" if d == 1 else f"(1-t^{d})" for d in degrees)
        doc["hsop_form"] = f"({num})/({den})"
    if args.out is not None:
        args.out.write_text(json.dumps(doc, indent=2) + "\n")
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        print(f"H(t) = {series}")
        if doc["hsop_form"] is not None:
            print(f"     = {doc['hsop_form']}")
        print("coefficients:", ", ".join(str(c) for c in doc["coefficients"]))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"reproduce": cmd_reproduce, "verify-paper": cmd_verify_paper, "hilbert": cmd_hilbert}[args.command]
    try:
        return handler(args)
    except FixtureError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_ENV


if __name__ == "__main__":
    sys.exit(main())
