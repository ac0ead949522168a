"""The four oscillatory benchmark problems with their analytic solutions.

=================  ===  ======================================================
id                 dim  equation
=================  ===  ======================================================
inhomogeneous      1    u'' = -nu^2 u + (nu^2 - 1) sin t,       nu = 10
twobody            2    q'' = -q / |q|^3, unit circular orbit,  nu = 1
duffing            1    u'' = -u - u^3 + B cos(nu t),           B = 0.002, nu = 1.01
francopalacios     2    u'' = -u + eps e^{it} (realified),      eps = 1e-3, nu = 1
=================  ===  ======================================================

Each accel function performs the same floating-point operations, in the same
order, as the corresponding branch of the compiled kernel.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import _kernels_py
from .core import SecondOrderIVP
from .exceptions import NumericalBlowUp

INHOMOGENEOUS_NU = 10.0

DUFFING_B = 0.002
DUFFING_NU = 1.01
# harmonic-balance amplitudes of cos((2k+1) nu t), k = 0..4
DUFFING_AMPLITUDES = (0.200179477536, 0.000246946143, 0.000000304014, 0.000000000374, 0.0)

FRANCO_PALACIOS_EPS = 1e-3


class ProblemId(enum.Enum):
    INHOMOGENEOUS = "inhomogeneous"
    TWOBODY = "twobody"
    DUFFING = "duffing"
    FRANCO_PALACIOS = "francopalacios"

    @classmethod
    def parse(cls, value) -> "ProblemId":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown problem {value!r}; choose from {choices}") from None

    @property
    def order(self) -> int:
        return list(ProblemId).index(self)


def _inhomogeneous() -> SecondOrderIVP:
    nu = INHOMOGENEOUS_NU
    nu2 = nu * nu
    forcing = nu2 - 1.0

    def accel(t, u):
        return -nu2 * u + forcing * math.sin(t)

    def exact(t):
        return np.array([math.cos(nu * t) + math.sin(nu * t) + math.sin(t)])

    return SecondOrderIVP(
        dim=1, accel=accel, t0=0.0, u0=[1.0], v0=[nu + 1.0], nu=nu, exact=exact, name="inhomogeneous"
    )


def _twobody() -> SecondOrderIVP:
    def accel(t, u):
        x, y = u
        r2 = x * x + y * y
        if r2 < 1e-12:
            raise NumericalBlowUp(f"two-body collision at t={t:g}")
        r3 = r2 * math.sqrt(r2)
        return np.array([-x / r3, -y / r3])

    def exact(t):
        return np.array([math.cos(t), math.sin(t)])

    return SecondOrderIVP(
        dim=2, accel=accel, t0=0.0, u0=[1.0, 0.0], v0=[0.0, 1.0], nu=1.0, exact=exact, name="twobody"
    )


def _duffing() -> SecondOrderIVP:
    B, nu = DUFFING_B, DUFFING_NU
    amps = DUFFING_AMPLITUDES

    def accel(t, u):
        x = u[0]
        return np.array([-x - x * x * x + B * math.cos(nu * t)])

    def exact(t):
        s = 0.0
        for k in range(5):
            s += amps[k] * math.cos((2 * k + 1) * nu * t)
        return np.array([s])

    # all-cosine series: u(0) is the amplitude sum and u'(0) = 0
    u0 = 0.0
    for A in amps:
        u0 += A
    return SecondOrderIVP(dim=1, accel=accel, t0=0.0, u0=[u0], v0=[0.0], nu=nu, exact=exact, name="duffing")


def _franco_palacios() -> SecondOrderIVP:
    eps = FRANCO_PALACIOS_EPS
    half_eps = 0.5 * eps

    def accel(t, u):
        return np.array([-u[0] + eps * math.cos(t), -u[1] + eps * math.sin(t)])

    def exact(t):
        ct = math.cos(t)
        st = math.sin(t)
        return np.array([ct + half_eps * t * st, st - half_eps * t * ct])

    return SecondOrderIVP(
        dim=2,
        accel=accel,
        t0=0.0,
        u0=[1.0, 0.0],
        v0=[0.0, 1.0 - half_eps],
        nu=1.0,
        exact=exact,
        name="francopalacios",
    )


_BUILDERS = {
    ProblemId.INHOMOGENEOUS: _inhomogeneous,
    ProblemId.TWOBODY: _twobody,
    ProblemId.DUFFING: _duffing,
    ProblemId.FRANCO_PALACIOS: _franco_palacios,
}


def make_problem(pid) -> SecondOrderIVP:
    """Build the IVP for ``pid`` (a :class:`ProblemId` or its CLI string)."""
    return _BUILDERS[ProblemId.parse(pid)]()


def kernel_params(pid) -> tuple[int, tuple[float, ...]]:
    """Problem code and parameter vector understood by the compiled kernel."""
    pid = ProblemId.parse(pid)
    if pid is ProblemId.INHOMOGENEOUS:
        return _kernels_py.INHOMOGENEOUS, (INHOMOGENEOUS_NU,)
    if pid is ProblemId.TWOBODY:
        return _kernels_py.TWOBODY, ()
    if pid is ProblemId.DUFFING:
        return _kernels_py.DUFFING, (DUFFING_B, DUFFING_NU) + DUFFING_AMPLITUDES
    return _kernels_py.FRANCO_PALACIOS, (FRANCO_PALACIOS_EPS,)
