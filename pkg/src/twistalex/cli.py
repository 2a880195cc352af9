"""Command line front end.

Exit codes: 0 completed, 10 certificate or obstruction found, 20 search budget
exhausted, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .catalog import CATALOG, lookup, parse_input
from .errors import InputError, Unavailable
from .finite_reps import (
    Representation,
    dedupe,
    enumerate_homs,
    image_subgroup,
    regular_representation,
    trivial_representation,
)
from .obstructions import (
    FiberStatus,
    PhiMismatch,
    RibbonVerdict,
    fiber_check,
    genus_degree_report,
    ribbon_screen,
)
from .twisted import twisted_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FOUND = 10
EXIT_BUDGET = 20
DEFAULT_BUDGET = 600.0


def _emit(obj, compact: bool):
    if compact:
        text = json.dumps(obj, separators=(",", ":"))
    else:
        text = json.dumps(obj, indent=2)
    sys.stdout.write(text + "\n")


def _budget(args) -> float:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("TAP_BUDGET_SECS")
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError(f"TAP_BUDGET_SECS must be a number, got {env!r}") from None
    return DEFAULT_BUDGET


def cmd_alex(args) -> int:
    P = parse_input(args.input)
    r = twisted_report(P, trivial_representation(P))
    out = {"input": args.input, **r.to_json()}
    if not r.delta1_zero:
        out["genus"] = genus_degree_report(r, 1)
    _emit(out, args.compact)
    return EXIT_OK


def cmd_twisted(args) -> int:
    P = parse_input(args.input)
    if args.rep:
        try:
            with open(args.rep, encoding="utf-8") as fh:
                d = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.rep}: {exc}") from None
        rep = Representation.from_json(d, P)
        _emit({"input": args.input, "reports": [twisted_report(P, rep).to_json()]}, args.compact)
        return EXIT_OK
    homs = dedupe(enumerate_homs(P, args.degree, meridional=not args.no_meridional))
    reports = []
    for h in homs:
        if args.max_dim is not None and h.image_order > args.max_dim:
            reports.append({"hom": h.to_json(), "skipped": f"image order {h.image_order} > {args.max_dim}"})
            continue
        rep = regular_representation(image_subgroup(h), h)
        reports.append(twisted_report(P, rep).to_json())
    _emit({"input": args.input, "degree": args.degree, "homCount": len(homs), "reports": reports}, args.compact)
    return EXIT_OK


def cmd_fiber_check(args) -> int:
    P = parse_input(args.input)
    v = fiber_check(
        P,
        max_degree=args.max_degree,
        budget_secs=_budget(args),
        max_dim=args.max_dim,
        jobs=args.jobs,
        meridional=not args.no_meridional,
    )
    _emit({"input": args.input, **v.to_json(verbose=args.verbose)}, args.compact)
    if v.status is FiberStatus.NONFIBERED_CERTIFIED:
        return EXIT_FOUND
    if v.status is FiberStatus.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_OK


def _catalog_fibered(ref: str):
    if ref.startswith("catalog:"):
        return lookup(ref[len("catalog:"):]).fibered
    return None


def cmd_ribbon_check(args) -> int:
    P0 = parse_input(args.lower)
    P1 = parse_input(args.upper)
    upper_fibered = True if args.upper_fibered else _catalog_fibered(args.upper)
    lower_verdict = None
    if upper_fibered:
        lower_verdict = fiber_check(
            P0, max_degree=args.transfer_degree, budget_secs=_budget(args), max_dim=args.max_dim, keep_reports=False
        )
    try:
        rep = ribbon_screen(P0, P1, upper_fibered=upper_fibered, lower_verdict=lower_verdict)
    except PhiMismatch as exc:
        raise InputError(str(exc)) from None
    out = {"lower": args.lower, "upper": args.upper, **rep.to_json()}
    if lower_verdict is not None:
        out["lowerFiberCheck"] = lower_verdict.status.value
    _emit(out, args.compact)
    return EXIT_FOUND if rep.verdict is RibbonVerdict.OBSTRUCTED else EXIT_OK


def cmd_catalog(args) -> int:
    _emit({"entries": [e.to_json() for e in CATALOG.values()]}, args.compact)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--compact", action="store_true", help="single-line JSON output")
    common.add_argument("-v", "--verbose", action="store_true", help="include every tested report")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=float, default=None, help="wall-clock seconds (env TAP_BUDGET_SECS)")
    search.add_argument("--max-dim", type=int, default=None, help="skip quotients larger than this")
    search.add_argument("--jobs", type=int, default=1, help="worker processes")
    search.add_argument("--no-meridional", action="store_true", help="search all homomorphisms, not just meridional ones")

    p = argparse.ArgumentParser(prog="twistalex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alex", parents=[common], help="classical Alexander polynomial")
    a.add_argument("input", help="catalog:NAME or a braid/presentation JSON file")
    a.set_defaults(func=cmd_alex)

    t = sub.add_parser("twisted", parents=[common], help="twisted polynomials over all quotients to S_n")
    t.add_argument("input")
    t.add_argument("--degree", type=int, default=3)
    t.add_argument("--max-dim", type=int, default=None)
    t.add_argument("--rep", default=None, help="JSON file with user matrices instead of quotients")
    t.add_argument("--no-meridional", action="store_true")
    t.set_defaults(func=cmd_twisted)

    f = sub.add_parser("fiber-check", parents=[common, search], help="search for a nonfibered certificate")
    f.add_argument("input")
    f.add_argument("--max-degree", type=int, default=5)
    f.set_defaults(func=cmd_fiber_check)

    r = sub.add_parser("ribbon-check", parents=[common, search], help="screen upper >= lower for obstructions")
    r.add_argument("--lower", required=True)
    r.add_argument("--upper", required=True)
    r.add_argument("--upper-fibered", action="store_true", help="treat the upper knot as fibered")
    r.add_argument("--transfer-degree", type=int, default=1, help="max degree for the lower knot's fiber check")
    r.set_defaults(func=cmd_ribbon_check)

    c = sub.add_parser("catalog", parents=[common], help="built-in knots")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, Unavailable) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
