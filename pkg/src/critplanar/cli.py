"""Command-line front end.

Subcommands
-----------
coeffs     exact kernel weight tables as CSV (r,numerator,denominator)
prob       class probabilities at one lambda or over a grid (CSV)
airy       a single special-function evaluation with its tail bound
simulate   Monte Carlo experiment report (JSON or CSV)
compare    analytic vs empirical side by side (CSV)

Exit codes: 0 success, 2 configuration error, 3 uncertified truncation,
4 numeric evaluation failure.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from .airy import AiryEvaluationError, airy_A
from .enumeration import (
    ALL,
    OUTERPLANAR,
    PLANAR,
    SERIES_PARALLEL,
    kernel_table,
    outerplanar_table,
    write_table_csv,
)
from .probability import (
    DEFAULT_TOL,
    CurvePoint,
    ProbabilityCurve,
    class_probability,
    write_curve_csv,
)
from .simulator import report_to_csv, report_to_json, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNCERTIFIED = 3
EXIT_NUMERIC = 4

_CLASS_ALIASES = {
    "all": ALL,
    "planar": PLANAR,
    "sp": SERIES_PARALLEL,
    "series-parallel": SERIES_PARALLEL,
    "outerplanar": OUTERPLANAR,
}


def _parse_grid(text: str) -> list[float]:
    """Parse ``min:max:step`` with inclusive endpoints (1e-12 slack)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be min:max:step")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("grid step must be > 0")
    out = []
    k = 0
    while True:
        val = lo + k * step
        if val > hi + 1e-12:
            break
        out.append(val)
        k += 1
    return out


def _class_tag(text: str) -> str:
    try:
        return _CLASS_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown class {text!r} (choose from {sorted(_CLASS_ALIASES)})"
        )


def _build_table(tag: str, r_max: int | None):
    if tag == OUTERPLANAR:
        table = outerplanar_table()
        if r_max is None:
            return table
        if r_max > table.r_max:
            raise ValueError(
                f"outerplanar weights are only known through r = {table.r_max}"
            )
        return kernel_table(OUTERPLANAR, r_max, custom_weights=table.weights[: r_max + 1])
    return kernel_table(tag, 30 if r_max is None else r_max)


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _lambda_values(args) -> list[float]:
    if args.grid is not None:
        return args.grid
    return [args.lam]


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def cmd_coeffs(args) -> int:
    table = _build_table(args.cls, args.rmax)
    with _output(args.out) as fh:
        write_table_csv(table, fh)
    return EXIT_OK


def cmd_prob(args) -> int:
    table = _build_table(args.cls, args.rmax)
    points = []
    uncertified = []
    for lam in _lambda_values(args):
        p, bound, certified = class_probability(table, lam, tol=args.tol)
        points.append(CurvePoint(lam=lam, p=p, error_bound=bound))
        if not certified:
            uncertified.append(lam)
    curve = ProbabilityCurve(
        class_tag=table.class_tag, points=tuple(points), r_max=table.r_max
    )
    with _output(args.out) as fh:
        write_curve_csv(curve, fh)
    if uncertified:
        print(
            f"warning: truncation not certified at lambda = {uncertified} "
            f"(r_max = {table.r_max}); error bounds reflect this",
            file=sys.stderr,
        )
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_airy(args) -> int:
    res = airy_A(args.y, args.lam, tol=args.tol)
    print(
        f"{res.value:.17g} tail_bound={res.tail_bound:.17g} terms={res.terms_used}"
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    report = run_experiment(args.lam, args.n, args.trials, args.seed)
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(report_to_json(report))
            fh.write("\n")
        else:
            report_to_csv(report, fh)
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.cls not in (PLANAR, SERIES_PARALLEL):
        raise ValueError(
            "compare joins the analytic curve with simulated frequencies; "
            "only the planar and series-parallel classes are simulated"
        )
    table = _build_table(args.cls, args.rmax)
    rows = []
    for lam in _lambda_values(args):
        p_ana, _, _ = class_probability(table, lam, tol=args.tol)
        report = run_experiment(lam, args.n, args.trials, args.seed)
        p_emp = report.p_planar if args.cls == PLANAR else report.p_sp
        se = report.se_planar if args.cls == PLANAR else report.se_sp
        se_eff = max(se, 0.5 / args.trials)
        rows.append((lam, p_ana, p_emp, se, (p_emp - p_ana) / se_eff))
    with _output(args.out) as fh:
        fh.write("lambda,p_analytic,p_empirical,se,z_score\n")
        for lam, p_ana, p_emp, se, z in rows:
            fh.write(
                f"{lam:.17g},{p_ana:.17g},{p_emp:.17g},{se:.17g},{z:.17g}\n"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critplanar",
        description="Planarity probabilities for random graphs at the critical window",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="exact kernel weight table as CSV")
    p.add_argument("--class", dest="cls", type=_class_tag, required=True,
                   help="all | planar | sp | series-parallel | outerplanar")
    p.add_argument("--rmax", type=int, required=True, help="largest r in the table")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("prob", help="class probability at one lambda or over a grid")
    p.add_argument("--class", dest="cls", type=_class_tag, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float, help="a single lambda")
    group.add_argument("--grid", type=_parse_grid,
                       help="min:max:step, inclusive (use --grid=-1:4:0.1 for negative min)")
    p.add_argument("--rmax", type=int, default=None,
                   help="table depth (default 30; outerplanar tops out at 4)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("airy", help="evaluate the Airy-type function once")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_airy)

    p = sub.add_parser("simulate", help="Monte Carlo experiment report")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="analytic vs empirical side by side")
    p.add_argument("--class", dest="cls", type=_class_tag, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float)
    group.add_argument("--grid", type=_parse_grid)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rmax", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AiryEvaluationError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
