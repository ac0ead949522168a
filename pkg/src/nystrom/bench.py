"""Accuracy benchmark: ``acc = -log10(max |u(t_n) - u_n|)`` over a fixed grid.

Runs start at ``t0 = 0`` where the initial conditions live; the error is
taken over grid points with ``t_n >= 1`` and over all position components.
"""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from .core import StepState, step_count
from .exceptions import NoAnalyticSolution, NumericalBlowUp
from .fitting import MethodKind, MethodSpec, build_tableau
from .problems import ProblemId, kernel_params, make_problem

T_SKIP = 1.0
TABLE2_T = (100.0, 1000.0, 5000.0)
TABLE2_H = {
    ProblemId.INHOMOGENEOUS: (0.025, 0.05),
    ProblemId.TWOBODY: (0.025, 0.05),
    ProblemId.DUFFING: (0.25, 0.5),
    ProblemId.FRANCO_PALACIOS: (0.25, 0.5),
}

# reference accuracies, keyed by (problem, h, method) -> acc at T = 100, 1000, 5000
_F, _C = MethodKind.PHASE_FITTED, MethodKind.CLASSICAL
TABLE2_REFERENCE = {
    (ProblemId.INHOMOGENEOUS, 0.025, _F): (4.2, 3.2, 2.5),
    (ProblemId.INHOMOGENEOUS, 0.025, _C): (2.3, 1.3, 0.6),
    (ProblemId.INHOMOGENEOUS, 0.05, _F): (2.7, 1.7, 1.0),
    (ProblemId.INHOMOGENEOUS, 0.05, _C): (1.1, 0.2, -0.3),
    (ProblemId.TWOBODY, 0.025, _F): (7.3, 5.9, 4.6),
    (ProblemId.TWOBODY, 0.025, _C): (6.5, 5.1, 3.8),
    (ProblemId.TWOBODY, 0.05, _F): (6.0, 4.4, 3.1),
    (ProblemId.TWOBODY, 0.05, _C): (5.2, 3.6, 2.3),
    (ProblemId.DUFFING, 0.25, _F): (5.7, 5.4, 5.4),
    (ProblemId.DUFFING, 0.25, _C): (4.2, 4.1, 4.1),
    (ProblemId.DUFFING, 0.5, _F): (4.2, 3.9, 3.9),
    (ProblemId.DUFFING, 0.5, _C): (2.9, 2.8, 2.8),
    (ProblemId.FRANCO_PALACIOS, 0.25, _F): (5.2, 4.3, 3.4),
    (ProblemId.FRANCO_PALACIOS, 0.25, _C): (3.5, 2.5, 1.6),
    (ProblemId.FRANCO_PALACIOS, 0.5, _F): (3.8, 2.8, 1.9),
    (ProblemId.FRANCO_PALACIOS, 0.5, _C): (2.3, 1.8, 0.4),
}

CSV_HEADER = ("problem", "method", "h", "T", "max_error", "acc")


def acc_digits(max_error: float) -> float:
    if math.isnan(max_error):
        return math.nan
    if max_error <= 0:
        return math.inf
    return -math.log10(max_error)


@dataclass(frozen=True)
class AccuracyReport:
    problem: ProblemId
    method: MethodKind
    h: float
    T: float
    max_error: float
    acc: float
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def sort_key(self):
        return (self.problem.order, self.h, self.method.order, self.T)


def accuracy(traj: Sequence[StepState], exact, t_skip: float = T_SKIP) -> tuple[float, float]:
    """Max-norm position error of ``traj`` against ``exact`` and its digits.

    Grid points with ``t < t_skip`` are ignored; velocities never enter.

    Returns
    -------
    (max_error, acc)
    """
    if exact is None:
        raise NoAnalyticSolution("accuracy needs an analytic solution")
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    tol = 1e-9 * max(1.0, abs(t_skip))
    err = 0.0
    for s in traj:
        if s.t < t_skip - tol:
            continue
        e = float(np.max(np.abs(np.asarray(exact(s.t)) - np.asarray(s.u))))
        if e > err:
            err = e
    return err, acc_digits(err)


def run_problem(
    problem,
    method,
    h: float,
    T_values: Iterable[float],
    nu: Optional[float] = None,
    kernel: Optional[str] = None,
    t_skip: float = T_SKIP,
) -> list[AccuracyReport]:
    """Integrate one built-in problem once and report every end time in ``T_values``.

    The run goes to ``max(T_values)`` and the running max error is sampled
    at each requested ``T``, so shorter horizons come for free.  ``nu``
    overrides only the frequency the fitted method is tuned to; the ODE is
    unchanged.  A blow-up marks every report of the run as failed
    (``acc = nan``) instead of raising.
    """
    pid = ProblemId.parse(problem)
    kind = MethodKind.parse(method)
    T_values = sorted(float(T) for T in T_values)
    ivp = make_problem(pid)
    spec = MethodSpec(kind)
    tab = build_tableau(spec, ivp.nu if nu is None else nu, h)
    code, params = kernel_params(pid)
    marks = [step_count(ivp.t0, T, h) for T in T_values]
    impl = _backend.get_kernel(kernel)
    try:
        errors = impl.max_errors(
            code, params, tab.c.tolist(), tab.a.tolist(), tab.b.tolist(), tab.b_hat.tolist(),
            ivp.t0, ivp.u0.tolist(), ivp.v0.tolist(), h, marks[-1], t_skip, marks,
        )
    except NumericalBlowUp as exc:
        msg = f"{pid.value}/{kind.value}/h={h:g}: {exc}"
        return [AccuracyReport(pid, kind, h, T, math.nan, math.nan, error=msg) for T in T_values]
    return [AccuracyReport(pid, kind, h, T, e, acc_digits(e)) for T, e in zip(T_values, errors)]


def run_table2(kernel: Optional[str] = None) -> list[AccuracyReport]:
    """All 48 (problem, h, method, T) cells of the accuracy table, sorted."""
    reports = []
    for pid, hs in TABLE2_H.items():
        for h in hs:
            for kind in MethodKind:
                reports.extend(run_problem(pid, kind, h, TABLE2_T, kernel=kernel))
    return sorted(reports, key=AccuracyReport.sort_key)


def _format_row(r: AccuracyReport) -> list[str]:
    return [r.problem.value, r.method.value, f"{r.h:g}", f"{r.T:g}", f"{r.max_error:.5e}", f"{r.acc:.1f}"]


def write_csv(reports: Iterable[AccuracyReport], destination) -> None:
    """Write reports as CSV to a path or an open text stream.

    Rows are sorted by (problem, h, method, T); ``acc`` has one decimal and
    ``max_error`` six significant digits.  Failed cells appear as ``nan``.
    """
    rows = [_format_row(r) for r in sorted(reports, key=AccuracyReport.sort_key)]
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", newline="") as fh:
            _write_rows(fh, rows)
    else:
        _write_rows(destination, rows)


def _write_rows(fh, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)


def format_table2(reports: Iterable[AccuracyReport]) -> str:
    """Text table in the reference layout: fitted T-columns, then classical."""
    cells = {(r.problem, r.h, r.method, r.T): r for r in reports}
    out = io.StringIO()
    head = "".join(f"{f'T={T:g}':>8}" for T in TABLE2_T)
    out.write(f"{'':<18}{'phase-fitted':^24}  {'classical':^24}\n")
    out.write(f"{'':<18}{head}  {head}\n")
    for pid, hs in TABLE2_H.items():
        out.write(f"{pid.value}\n")
        for h in hs:
            parts = []
            for kind in (MethodKind.PHASE_FITTED, MethodKind.CLASSICAL):
                vals = []
                for T in TABLE2_T:
                    r = cells.get((pid, h, kind, T))
                    vals.append(f"{'--' if r is None else format(r.acc, '.1f'):>8}")
                parts.append("".join(vals))
            out.write(f"  {f'h={h:g}':<16}{parts[0]}  {parts[1]}\n")
    return out.getvalue()
