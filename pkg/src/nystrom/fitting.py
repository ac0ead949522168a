"""Dormand-Prince RKN4 and its phase-fitted variant.

The fitted method keeps every DPRKN4 coefficient except ``a[3, 2]`` (the
stage-4 weight on stage 3), which is chosen per run so that the phase lag at
``z = nu h`` vanishes.  The trace and determinant of the propagator are
affine in that coefficient (the quadratic terms of the determinant cancel),
so the condition ``R = 2 cos(z) sqrt(Q)`` reduces to a quadratic.  The affine pieces are only
``O(z^4)`` against ``O(1)`` constant terms, so the solve runs in
multiprecision and is rounded once at the end.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .core import NystromTableau
from .exceptions import FittingDegenerate
from .phase import stability_matrix

F = Fraction

DPRKN4_C = (F(0), F(1, 4), F(7, 10), F(1))
DPRKN4_A = {
    (1, 0): F(1, 32),
    (2, 0): F(7, 1000),
    (2, 1): F(119, 500),
    (3, 0): F(1, 14),
    (3, 1): F(8, 27),
    (3, 2): F(25, 189),
}
DPRKN4_B = (F(1, 14), F(8, 27), F(25, 189), F(0))
DPRKN4_B_HAT = (F(1, 14), F(32, 81), F(250, 567), F(5, 54))

A43 = (3, 2)

# even series of the fitted a[3, 2] in z, constant term first
A43_SERIES = (
    F(25, 189),
    F(-43, 2400),
    F(-1531, 30240000),
    F(-3273029, 36288000000),
    F(59772887431, 9699782400000000),
)
_A43_SERIES_FLOAT = tuple(float(x) for x in A43_SERIES)

TRIAL_A43 = (0, 1, 2)
FIT_DPS = 50


def dprkn4_tableau() -> NystromTableau:
    """The classical 4-stage, order-4 Dormand-Prince Nystrom tableau."""
    a = [[0.0] * 4 for _ in range(4)]
    for (i, j), value in DPRKN4_A.items():
        a[i][j] = float(value)
    return NystromTableau(
        c=[float(x) for x in DPRKN4_C],
        a=a,
        b=[float(x) for x in DPRKN4_B],
        b_hat=[float(x) for x in DPRKN4_B_HAT],
        name="dprkn4",
    )


class MethodKind(enum.Enum):
    CLASSICAL = "classical"
    PHASE_FITTED = "fitted"

    @classmethod
    def parse(cls, value) -> "MethodKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown method {value!r}; choose classical or fitted") from None

    @property
    def order(self) -> int:
        return list(MethodKind).index(self)


@dataclass(frozen=True)
class MethodSpec:
    """Classical DPRKN4 or its phase-fitted variant.

    Below ``z_switch`` the fitted coefficient comes from its truncated series
    instead of the quadratic solve.
    """

    kind: MethodKind = MethodKind.CLASSICAL
    base: NystromTableau = field(default_factory=dprkn4_tableau)
    z_switch: float = 1e-2

    def __post_init__(self):
        object.__setattr__(self, "kind", MethodKind.parse(self.kind))
        if not 0 < self.z_switch <= 0.1:
            raise ValueError("z_switch must lie in (0, 0.1]")
        if self.kind is MethodKind.PHASE_FITTED and self.base.m != 4:
            raise ValueError("phase fitting needs a 4-stage base tableau")

    @classmethod
    def classical(cls) -> "MethodSpec":
        return cls(MethodKind.CLASSICAL)

    @classmethod
    def fitted(cls, z_switch: float = 1e-2) -> "MethodSpec":
        return cls(MethodKind.PHASE_FITTED, z_switch=z_switch)

    def tableau_at(self, z: float) -> NystromTableau:
        """Tableau for scaled frequency ``z`` (``nu = z``, ``h = 1``)."""
        return build_tableau(self, z, 1.0)


def fitted_a43_taylor(z: float) -> float:
    """Degree-8 truncation of the fitted ``a[3, 2]`` series in ``z``."""
    w = z * z
    acc = 0.0
    for coeff in reversed(_A43_SERIES_FLOAT):
        acc = acc * w + coeff
    return acc


def affine_parts(z, base: NystromTableau | None = None):
    """Intercepts, slopes and collinearity residual of ``R`` and ``Q`` in ``a[3, 2]``.

    Evaluates the propagator at the trial values ``TRIAL_A43`` and returns
    ``(R0, dR, Q0, dQ, residual)`` where ``residual`` is the larger second
    difference of ``R`` and ``Q`` across the three trials, zero up to
    rounding for any 4-stage base.
    """
    base = dprkn4_tableau() if base is None else base
    Rs, Qs = [], []
    for trial in TRIAL_A43:
        D = stability_matrix(base.with_entry(*A43, trial), z)
        Rs.append(D.trace)
        Qs.append(D.det)
    R0, dR = Rs[0], Rs[1] - Rs[0]
    Q0, dQ = Qs[0], Qs[1] - Qs[0]
    residual = max(abs(Rs[2] - 2 * Rs[1] + Rs[0]), abs(Qs[2] - 2 * Qs[1] + Qs[0]))
    return R0, dR, Q0, dQ, residual


def fitted_a43(z: float, base: NystromTableau | None = None) -> float:
    """``a[3, 2]`` that makes the phase lag vanish at ``z``.

    Parameters
    ----------
    z : float
        Scaled frequency ``nu h`` in ``(0, pi/2)``.
    base : NystromTableau, optional
        Tableau whose other coefficients are held fixed; DPRKN4 by default.

    Raises
    ------
    FittingDegenerate
        If the quadratic has no real root, or no root satisfies the unsquared
        condition with ``Q > 0``.
    """
    if not 0 < z < math.pi / 2:
        raise ValueError(f"z={z!r} outside (0, pi/2)")
    base = dprkn4_tableau() if base is None else base
    guess = fitted_a43_taylor(z)
    with mpmath.workdps(FIT_DPS):
        zm = mpmath.mpf(z)
        R0, dR, Q0, dQ, residual = affine_parts(zm, base)
        if residual > mpmath.mpf(10) ** (-FIT_DPS + 10):
            raise FittingDegenerate("trace/determinant not affine in a[3, 2]")
        cos_z = mpmath.cos(zm)
        k = 4 * cos_z**2
        # (R0 + dR a)^2 = k (Q0 + dQ a)
        qa = dR * dR
        qb = 2 * R0 * dR - k * dQ
        qc = R0 * R0 - k * Q0
        if qa == 0:
            if qb == 0:
                raise FittingDegenerate(f"phase lag independent of a[3, 2] at z={z:g}")
            roots = [-qc / qb]
        else:
            disc = qb * qb - 4 * qa * qc
            if disc < 0:
                raise FittingDegenerate(f"no real fitting root at z={z:g} (discriminant {float(disc):.3e})")
            sq = mpmath.sqrt(disc)
            # cancellation-free pair of roots
            q = -(qb + mpmath.sign(qb) * sq) / 2 if qb != 0 else sq / 2
            roots = [q / qa, qc / q] if q != 0 else [mpmath.mpf(0)]
        admissible = []
        for a in roots:
            R = R0 + dR * a
            Q = Q0 + dQ * a
            if Q > 0 and mpmath.sign(R) == mpmath.sign(cos_z):
                admissible.append(a)
        if not admissible:
            raise FittingDegenerate(f"no root satisfies R = 2 cos(z) sqrt(Q) at z={z:g}")
        best = min(admissible, key=lambda a: abs(a - guess))
        return float(best)


def build_tableau(spec: MethodSpec, nu: float, h: float) -> NystromTableau:
    """Tableau used for a whole fixed-step run with frequency ``nu`` and step ``h``."""
    if not (h > 0 and nu > 0):
        raise ValueError("h and nu must be positive")
    z = nu * h
    if not z < math.pi / 2:
        raise ValueError(f"z = nu h = {z:g} must be below pi/2")
    if spec.kind is MethodKind.CLASSICAL:
        return spec.base
    a43 = fitted_a43(z, spec.base) if z >= spec.z_switch else fitted_a43_taylor(z)
    return spec.base.with_entry(*A43, a43, name=f"{spec.base.name}-fitted(z={z:.6g})")
