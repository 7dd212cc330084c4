"""Command line: ``morava verify``, ``morava fgl`` and ``morava gb``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
3 internal fault (for instance a non-2-integral FGL coefficient).
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from . import __version__
from .checks import (CHECKS, FGL_DEGREE, GROEBNER_CHECKS, fgl_report, groebner_report,
                     module_report, restriction_report)
from .fgl import FglError, InsufficientDegreeError, fgl_series, honda_log, n_series, series_reverse
from .grobner import DEGREVLEX, GroebnerBudgetExceeded, MonomialOrder, buchberger, pair_budget_from_env
from .presentations import (ALL_GROUPS, LEX_KERNEL_ORDER, LEX_QUOTIENT_ORDER, READINGS, RING,
                            GroupId, expected_chi, presentation)
from .report import VerificationReport, dump_reports
from .abelian import CHERN_MODES

ORDERS = {
    "degrevlex": DEGREVLEX,
    "lex": LEX_QUOTIENT_ORDER,
    "lex-kernel": LEX_KERNEL_ORDER,
}

S1_MESSAGE = ("s={s} is not supported: the transfer formula for the Chern classes "
              "needs s > 1, so these computations restrict to s > 1")


class UsageError(Exception):
    pass


def _split(values: Optional[List[str]]) -> List[str]:
    out: List[str] = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return out


def _heights(values: Optional[List[int]]) -> List[int]:
    heights = sorted(set(values or [2]))
    for s in heights:
        if s < 2:
            raise UsageError(S1_MESSAGE.format(s=s))
    return heights


def _groups(values) -> List[GroupId]:
    names = _split(values)
    if not names:
        return list(ALL_GROUPS)
    try:
        return sorted({GroupId.parse(n) for n in names}, key=lambda g: g.number)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _checks(values) -> List[str]:
    names = _split(values) or ["all"]
    if "all" in names:
        return list(CHECKS)
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise UsageError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(CHECKS + ('all',))}")
    return [c for c in CHECKS if c in names]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morava", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification checks and emit reports")
    v.add_argument("--group", action="append", help="g34, g35, g36, g37 (repeatable or comma separated; default all)")
    v.add_argument("--s", action="append", type=int, help="height (repeatable; default 2)")
    v.add_argument("--checks", action="append",
                   help="comma list from " + ", ".join(CHECKS) + ", all (default all)")
    v.add_argument("--order", choices=sorted(ORDERS), default="degrevlex")
    v.add_argument("--degree", type=int, help="FGL truncation degree override")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--output", help="write the report here instead of standard output")
    v.add_argument("--deep", action="store_true", help="allow Groebner checks at s >= 3")
    v.add_argument("--reading", choices=READINGS, default="induced")
    v.add_argument("--chern", choices=CHERN_MODES, default="sum",
                   help="image of x1, y1 under restriction (default: sum of Chern roots)")

    f = sub.add_parser("fgl", help="print a truncated series of the Honda law")
    f.add_argument("--s", type=int, default=2)
    f.add_argument("--degree", type=int, default=16)
    f.add_argument("--series", default="fgl", help="log, exp, fgl, inverse or n:k")

    g = sub.add_parser("gb", help="Groebner basis and quotient dimension of a presentation")
    g.add_argument("--group", required=True)
    g.add_argument("--s", type=int, default=2)
    g.add_argument("--order", choices=sorted(ORDERS), default="degrevlex")
    g.add_argument("--reading", choices=READINGS, default="induced")
    g.add_argument("--print-basis", action="store_true")
    g.add_argument("--print-standard", action="store_true", help="list the standard monomials")
    g.add_argument("--print-generators", action="store_true")
    g.add_argument("--deep", action="store_true", help="required for s >= 3")
    return parser


def _config(args, groups, heights, checks) -> dict:
    return {
        "groups": [g.value for g in groups],
        "s": heights,
        "checks": checks,
        "order": args.order,
        "degree": args.degree,
        "format": args.format,
        "output": args.output,
        "deep": args.deep,
        "reading": args.reading,
        "chern": args.chern,
        "pair_budget": pair_budget_from_env(),
    }


def cmd_verify(args) -> int:
    groups = _groups(args.group)
    heights = _heights(args.s)
    checks = _checks(args.checks)
    if args.degree is not None and args.degree < 1:
        raise UsageError("--degree must be positive")
    wants_gb = [c for c in checks if c in GROEBNER_CHECKS]
    if wants_gb and not args.deep and any(s >= 3 for s in heights):
        raise UsageError("Groebner checks (" + ", ".join(wants_gb) + ") at s >= 3 are long-running; "
                         "pass --deep, or restrict --checks to fgl, restriction, module")
    order: MonomialOrder = ORDERS[args.order]
    reports: List[VerificationReport] = []
    for s in heights:
        if "fgl" in checks:
            rep = fgl_report(s, args.degree or FGL_DEGREE)
            rep.checks.sort(key=lambda c: c.name)
            reports.append(rep)
        for group in groups:
            start = time.perf_counter()
            rep = VerificationReport(group.value, s)
            if "restriction" in checks:
                rep.extend(restriction_report(group, s, args.degree, args.reading, args.chern))
            if wants_gb:
                rep.extend(groebner_report(group, s, wants_gb, order, args.reading))
            if "module" in checks:
                rep.extend(module_report(group, s, args.degree))
            if not rep.checks:
                continue
            rep.checks.sort(key=lambda c: c.name)
            rep.runtime_ms = (time.perf_counter() - start) * 1000
            reports.append(rep)
    if args.format == "json":
        text = dump_reports(reports, __version__, _config(args, groups, heights, checks))
    else:
        text = "\n".join(r.to_text() for r in reports)
        failed = sum(len(r.failures()) for r in reports)
        total = sum(len(r.checks) for r in reports)
        text += f"\n{total - failed}/{total} checks passed\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))
    return 0 if all(r.passed for r in reports) else 1


def parse_series(spec: str):
    if spec in ("log", "exp", "fgl", "inverse"):
        return spec, None
    if spec.startswith("n:"):
        try:
            k = int(spec[2:])
        except ValueError:
            raise UsageError(f"bad n-series {spec!r}; use n:k with an integer k") from None
        if k < -1:
            raise UsageError("n:k needs k >= -1")
        return "n", k
    raise UsageError(f"unknown series {spec!r}; choose log, exp, fgl, inverse or n:k")


def cmd_fgl(args) -> int:
    if args.s < 2:
        raise UsageError(S1_MESSAGE.format(s=args.s))
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    kind, k = parse_series(args.series)
    D = args.degree
    if kind == "log":
        out = honda_log(args.s, D)
    elif kind == "exp":
        out = series_reverse(honda_log(args.s, D), D)
    else:
        ctx = fgl_series(args.s, D)
        if kind == "fgl":
            out = ctx.F
        elif kind == "inverse":
            out = n_series(ctx, -1)
        else:
            out = n_series(ctx, k)
    print(out.to_text(ascending=True))
    return 0


def cmd_gb(args) -> int:
    try:
        group = GroupId.parse(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.s < 2:
        raise UsageError(S1_MESSAGE.format(s=args.s))
    if args.s >= 3 and not args.deep:
        raise UsageError(f"the s={args.s} Groebner computation is long-running; pass --deep")
    pres = presentation(group, args.s, args.reading)
    if args.print_generators:
        print(f"generators ({len(pres.generators)}):")
        print(pres.dump())
    try:
        gb = buchberger(pres.generators, ORDERS[args.order], RING)
    except GroebnerBudgetExceeded as exc:
        print(f"aborted: {exc}; raise MORAVA_PAIR_BUDGET to continue", file=sys.stderr)
        return 1
    dim = gb.dimension()
    expected = expected_chi(args.s)
    print(f"dimension: {'infinite' if dim is None else dim} (expected {expected})")
    if args.print_basis:
        print(f"basis ({len(gb)} elements, {gb.order}):")
        print(gb.to_text())
    if args.print_standard and dim is not None:
        print(f"standard monomials ({dim}):")
        for e in gb.standard_monomials():
            print(RING.monomial(e).to_text())
    return 0 if dim == expected else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"verify": cmd_verify, "fgl": cmd_fgl, "gb": cmd_gb}[args.command]
    try:
        return handler(args)
    except (UsageError, InsufficientDegreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FglError as exc:
        print(f"internal fault: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001
        print(f"internal fault: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
