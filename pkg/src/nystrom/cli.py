"""Command-line front end: ``rkn run | analyze | table2``."""
from __future__ import annotations

import argparse
import math
import sys

from .bench import format_table2, run_problem, run_table2, write_csv
from .exceptions import FittingDegenerate, OutsideStabilityRange
from .fitting import MethodKind, MethodSpec, build_tableau
from .phase import amplification_error, phase_lag, stability_matrix
from .problems import ProblemId


def _positive(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _z_list(text):
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad z list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty z list")
    for z in values:
        if not 0 < z < math.pi / 2:
            raise argparse.ArgumentTypeError(f"z={z:g} outside (0, pi/2)")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkn",
        description="Fixed-step Runge-Kutta-Nystrom runs with the classical and phase-fitted DPRKN4 methods.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [k.value for k in MethodKind]

    run = sub.add_parser("run", help="integrate one benchmark problem and report its accuracy")
    run.add_argument("--problem", required=True, choices=[p.value for p in ProblemId])
    run.add_argument("--method", required=True, choices=methods)
    run.add_argument("--h", required=True, type=_positive)
    run.add_argument("--t-end", required=True, type=_positive)
    run.add_argument("--nu", type=_positive, help="override the fitting frequency (the ODE is unchanged)")
    run.add_argument("--out", help="CSV destination (default: standard output)")

    analyze = sub.add_parser("analyze", help="phase lag and amplification error of a method")
    analyze.add_argument("--method", required=True, choices=methods)
    analyze.add_argument("--z", required=True, type=_z_list, help="comma-separated z = nu h values")

    table = sub.add_parser("table2", help="run the full accuracy grid")
    table.add_argument("--out", help="CSV destination (default: standard output)")
    return parser


def _cmd_run(args) -> int:
    if args.t_end <= 1.0:
        print("warning: t_end <= 1, no grid point enters the error", file=sys.stderr)
    try:
        reports = run_problem(args.problem, args.method, args.h, [args.t_end], nu=args.nu)
    except (FittingDegenerate, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        write_csv(reports, args.out)
    else:
        write_csv(reports, sys.stdout)
    r = reports[0]
    if r.failed:
        print(f"error: {r.error}", file=sys.stderr)
        return 1
    if args.out:
        print(f"acc = {r.acc:.2f}  (max error {r.max_error:.3e})")
    return 0


def _cmd_analyze(args) -> int:
    spec = MethodSpec(MethodKind.parse(args.method))
    print(f"{'z':>10} {'R':>22} {'Q':>22} {'phi':>12} {'a(z)':>12} {'a43':>20}")
    status = 0
    for z in args.z:
        try:
            tab = build_tableau(spec, z, 1.0)
            D = stability_matrix(tab, z)
            phi = phase_lag(tab, z)
            amp = amplification_error(tab, z)
        except (FittingDegenerate, OutsideStabilityRange) as exc:
            print(f"{z:>10.6g}  error: {exc}")
            status = 1
            continue
        print(f"{z:>10.6g} {D.trace:>22.16g} {D.det:>22.16g} {phi:>12.3e} {amp:>12.3e} {tab.a[3, 2]:>20.16g}")
    return status


def _cmd_table2(args) -> int:
    reports = run_table2()
    summary = format_table2(reports)
    if args.out:
        write_csv(reports, args.out)
        sys.stdout.write(summary)
    else:
        write_csv(reports, sys.stdout)
        sys.stderr.write(summary)
    failed = [r for r in reports if r.failed]
    for r in failed:
        print(f"error: {r.error}", file=sys.stderr)
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    return _cmd_table2(args)


if __name__ == "__main__":
    sys.exit(main())
