"""Phase-lag and amplification analysis on the linear test equation.

Applying a Nystrom method with step ``h`` to ``u'' = -nu^2 u`` gives a linear
recursion ``(u, h v) -> D (u, h v)`` whose 2x2 propagator ``D`` depends on
``z = nu h`` only.  With ``R = tr D`` and ``Q = det D`` the per-step phase
error is ``z - arccos(R / (2 sqrt Q))`` and the amplification error is
``1 - sqrt Q``.

Everything here accepts either a float ``z`` or an ``mpmath.mpf``; in the
latter case the propagator is formed in multiprecision, which is how the
phase-lag order is resolved at small ``z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import mpmath
import numpy as np

from .core import NystromTableau, StepState, step
from .exceptions import NoPowerLaw, OutsideStabilityRange

ARCCOS_SLACK = 1e-12
ORDER_FLOOR = 1e-13
ORDER_GRID = tuple(2.0**-k for k in range(3, 11))


@dataclass(frozen=True)
class StabilityMatrix:
    z: float
    A: float
    B: float
    A_prime: float
    B_prime: float

    @property
    def trace(self):
        return self.A + self.B_prime

    @property
    def det(self):
        return self.A * self.B_prime - self.A_prime * self.B

    def as_array(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.A_prime, self.B_prime]])


def _is_mp(z) -> bool:
    return isinstance(z, (mpmath.mpf, mpmath.mpc))


def stability_matrix(tab: NystromTableau, z) -> StabilityMatrix:
    """Propagator of ``tab`` on ``u'' = -z^2 u`` with unit step.

    The columns are the images of the basis states ``(u, v) = (1, 0)`` and
    ``(0, 1)`` under one call to :func:`~nystrom.core.step`; with ``h = 1``
    the scaled velocity ``h v`` is just ``v``.
    """
    one = z * 0 + 1
    zero = z * 0
    z2 = z * z

    def accel(t, u):
        return -z2 * u

    cols = []
    for u0, v0 in ((one, zero), (zero, one)):
        s = step(tab, accel, StepState(zero, np.array([u0]), np.array([v0])), one)
        cols.append((s.u[0], s.v[0]))
    (A, A_prime), (B, B_prime) = cols
    return StabilityMatrix(z, A, B, A_prime, B_prime)


def trace_R(tab: NystromTableau, z):
    return stability_matrix(tab, z).trace


def det_Q(tab: NystromTableau, z):
    return stability_matrix(tab, z).det


def phase_lag(tab: NystromTableau, z):
    """Phase lag ``z - arccos(R / (2 sqrt Q))`` at ``z`` in ``[0, pi)``.

    Raises
    ------
    OutsideStabilityRange
        If ``Q <= 0`` or the arccos argument leaves ``[-1, 1]`` by more than
        ``ARCCOS_SLACK``, i.e. the propagator eigenvalues are not a complex
        conjugate pair.
    """
    if not 0 <= z < math.pi:
        raise ValueError(f"z={float(z)!r} outside [0, pi)")
    D = stability_matrix(tab, z)
    R, Q = D.trace, D.det
    if not Q > 0:
        raise OutsideStabilityRange(f"det D = {float(Q):.3e} <= 0 at z={float(z):g}")
    if _is_mp(z):
        ratio = R / (2 * mpmath.sqrt(Q))
    else:
        ratio = R / (2.0 * math.sqrt(Q))
    if abs(ratio) > 1 + ARCCOS_SLACK:
        raise OutsideStabilityRange(f"|R/(2 sqrt Q)| = {float(abs(ratio)):.15g} > 1 at z={float(z):g}")
    ratio = max(-1, min(1, ratio))
    if _is_mp(z):
        return z - mpmath.acos(ratio)
    return z - math.acos(ratio)


def amplification_error(tab: NystromTableau, z):
    """``1 - sqrt(Q)``; raises :class:`OutsideStabilityRange` if ``Q < 0``."""
    Q = det_Q(tab, z)
    if Q < 0:
        raise OutsideStabilityRange(f"det D = {float(Q):.3e} < 0 at z={float(z):g}")
    if _is_mp(z):
        return 1 - mpmath.sqrt(Q)
    return 1.0 - math.sqrt(Q)


TableauSource = Union[NystromTableau, Callable[[float], NystromTableau]]


def estimate_phase_lag_order(
    method: TableauSource,
    grid: Optional[Sequence[float]] = None,
    dps: int = 60,
):
    """Empirical phase-lag order ``q`` such that ``Phi(z) = O(z^(q+1))``.

    Parameters
    ----------
    method : NystromTableau or callable
        A fixed tableau, or a map ``z -> tableau`` for z-dependent
        (phase-fitted) methods; the latter is evaluated at each probe ``z``
        with the tableau built for that ``z``.
    grid : sequence of float, optional
        Probe points; defaults to ``2**-3 ... 2**-10``.
    dps : int
        Decimal digits used for the multiprecision evaluation of ``Phi``.

    Returns
    -------
    int or float
        ``round(slope) - 1`` of the log-log least-squares fit, or ``math.inf``
        when ``|Phi| < ORDER_FLOOR`` on every probe point.

    Raises
    ------
    NoPowerLaw
        If the RMS residual of the fit exceeds 10% of the slope, or the grid
        mixes vanishing and non-vanishing lags.
    """
    grid = ORDER_GRID if grid is None else tuple(grid)
    with mpmath.workdps(dps):
        lags = []
        for z in grid:
            tab = method if isinstance(method, NystromTableau) else method(z)
            lags.append(abs(phase_lag(tab, mpmath.mpf(z))))
        if all(p < ORDER_FLOOR for p in lags):
            return math.inf
        if len(grid) < 2 or any(p == 0 for p in lags):
            raise NoPowerLaw("phase lag vanishes on part of the grid")
        x = np.array([math.log(z) for z in grid])
        y = np.array([float(mpmath.log(p)) for p in lags])
    slope, intercept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    if rms > 0.1 * abs(slope):
        raise NoPowerLaw(f"log-log fit residual {rms:.3g} too large for slope {slope:.3g}")
    return int(round(slope)) - 1
