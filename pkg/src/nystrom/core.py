"""Explicit Runge-Kutta-Nystrom tableaus and the fixed-step stepper.

A Nystrom method advances ``u'' = f(t, u)`` without ever forming the
first-order system.  One step of an explicit ``m``-stage method reads::

    g_i = u + c_i h v + h^2 sum_{j<i} a_ij f_j,     f_i = f(t + c_i h, g_i)
    u+  = u + h v + h^2 sum_i b_i f_i
    v+  = v + h sum_i bhat_i f_i

with ``v = u'`` carried unscaled.  The functions here are generic over the
element type of the state arrays, so the same code runs in float64 and in
``mpmath`` multiprecision (object arrays), which the phase-lag analysis
relies on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .exceptions import NumericalBlowUp

AccelFn = Callable[[float, np.ndarray], np.ndarray]


def _as_vector(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    return arr


def _all_finite(x: np.ndarray) -> bool:
    if x.dtype.kind in "fc":
        return bool(np.isfinite(x).all())
    if x.dtype.kind in "iub":
        return True
    # object arrays (mpmath numbers): NaN != NaN, inf compares equal to inf
    return all(e == e and abs(e) != math.inf for e in x.flat)


@dataclass(frozen=True, eq=False)
class NystromTableau:
    """Coefficients of an explicit ``m``-stage Runge-Kutta-Nystrom method.

    Parameters
    ----------
    c : sequence of float, length m
        Nodes; ``c[0] == 0`` and ``c[-1] == 1``.
    a : array_like, shape (m, m)
        Strictly lower triangular stage matrix.
    b : sequence of float, length m
        Position weights.
    b_hat : sequence of float, length m
        Velocity weights.
    """

    c: np.ndarray
    a: np.ndarray
    b: np.ndarray
    b_hat: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        b_hat = np.array(self.b_hat, dtype=float)
        m = c.shape[0] if c.ndim == 1 else -1
        if m < 1:
            raise ValueError("tableau needs at least one stage and a 1-D node vector")
        if a.shape != (m, m) or b.shape != (m,) or b_hat.shape != (m,):
            raise ValueError(
                f"inconsistent tableau shapes: c{c.shape}, a{a.shape}, b{b.shape}, b_hat{b_hat.shape}"
            )
        if np.any(np.triu(a) != 0.0):
            raise ValueError("stage matrix must be strictly lower triangular (explicit method)")
        for arr in (c, a, b, b_hat):
            if not np.isfinite(arr).all():
                raise ValueError("tableau entries must be finite")
        if c[0] != 0.0 or c[-1] != 1.0:
            raise ValueError("nodes must satisfy c[0] == 0 and c[-1] == 1")
        for arr in (c, a, b, b_hat):
            arr.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "b_hat", b_hat)

    @property
    def m(self) -> int:
        return self.c.shape[0]

    def with_entry(self, i: int, j: int, value: float, name: Optional[str] = None) -> "NystromTableau":
        """Copy of the tableau with ``a[i, j]`` replaced."""
        a = self.a.copy()
        a[i, j] = value
        return NystromTableau(self.c, a, self.b, self.b_hat, name=self.name if name is None else name)

    def __eq__(self, other):
        if not isinstance(other, NystromTableau):
            return NotImplemented
        return all(
            np.array_equal(x, y)
            for x, y in zip((self.c, self.a, self.b, self.b_hat), (other.c, other.a, other.b, other.b_hat))
        )

    __hash__ = None


@dataclass(frozen=True)
class StepState:
    t: float
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class SecondOrderIVP:
    """``u'' = accel(t, u)`` with ``u(t0) = u0`` and ``u'(t0) = v0``.

    ``nu`` is the fitting frequency handed to phase-fitted methods and
    ``exact``, when given, maps a time to the analytic position vector.
    """

    dim: int
    accel: AccelFn
    t0: float
    u0: np.ndarray
    v0: np.ndarray
    nu: float
    exact: Optional[Callable[[float], np.ndarray]] = None
    name: str = ""

    def __post_init__(self):
        u0 = _as_vector(np.array(self.u0, dtype=float))
        v0 = _as_vector(np.array(self.v0, dtype=float))
        if self.dim < 1 or u0.shape != (self.dim,) or v0.shape != (self.dim,):
            raise ValueError(f"initial state must have length dim={self.dim}")
        if not self.nu > 0:
            raise ValueError("fitting frequency nu must be positive")
        object.__setattr__(self, "u0", u0)
        object.__setattr__(self, "v0", v0)
        if self.exact is not None:
            e0 = _as_vector(self.exact(self.t0))
            if np.max(np.abs(e0 - u0)) > 1e-12:
                raise ValueError("exact(t0) disagrees with u0")

    def initial_state(self) -> StepState:
        return StepState(self.t0, self.u0.copy(), self.v0.copy())


def step(tab: NystromTableau, accel: AccelFn, s: StepState, h) -> StepState:
    """Advance ``s`` by one step of size ``h``.

    Raises
    ------
    NumericalBlowUp
        If a stage acceleration or the updated state is not finite; the
        exception's ``stage`` names the offending stage.
    """
    if h == 0:
        raise ValueError("step size must be nonzero")
    c = tab.c.tolist()
    a = tab.a.tolist()
    u = _as_vector(s.u)
    v = _as_vector(s.v)
    hh = h * h
    f = []
    for i in range(tab.m):
        g = u + (c[i] * h) * v
        for j in range(i):
            if a[i][j] != 0.0:
                g = g + (hh * a[i][j]) * f[j]
        try:
            fi = _as_vector(accel(s.t + c[i] * h, g))
        except NumericalBlowUp as exc:
            if exc.stage is None:
                exc.stage = i
            raise
        if fi.shape != u.shape:
            raise ValueError(f"accel returned shape {fi.shape}, expected {u.shape}")
        if not _all_finite(fi):
            raise NumericalBlowUp(f"non-finite acceleration at stage {i}", stage=i)
        f.append(fi)
    du = sum(bi * fi for bi, fi in zip(tab.b.tolist(), f))
    dv = sum(bi * fi for bi, fi in zip(tab.b_hat.tolist(), f))
    u_new = u + h * v + hh * du
    v_new = v + h * dv
    if not (_all_finite(u_new) and _all_finite(v_new)):
        raise NumericalBlowUp("non-finite state after update")
    return StepState(s.t + h, u_new, v_new)


def step_count(t0: float, t_end: float, h: float) -> int:
    """Number of whole steps of size ``h`` that fit in ``[t0, t_end]``."""
    if not h > 0:
        raise ValueError("h must be positive")
    if not t_end > t0:
        raise ValueError("t_end must exceed t0")
    ratio = (t_end - t0) / h
    # absorb representation error in t_end/h so that e.g. 100/0.025 gives 4000
    return int(math.floor(ratio + 64 * np.finfo(float).eps * max(1.0, ratio)))


def iter_states(tab: NystromTableau, ivp: SecondOrderIVP, h: float, t_end: float) -> Iterator[StepState]:
    """Lazily yield the states on the uniform grid ``t0 + n h <= t_end``.

    No final partial step is taken.  Times are recomputed as ``t0 + n h``
    rather than accumulated.
    """
    n_steps = step_count(ivp.t0, t_end, h)
    s = ivp.initial_state()
    yield s
    for n in range(1, n_steps + 1):
        try:
            s = step(tab, ivp.accel, s, h)
        except NumericalBlowUp as exc:
            exc.step_index = n
            exc.args = (f"{exc.args[0]} (step {n}, t={ivp.t0 + (n - 1) * h:g})",)
            raise
        s = StepState(ivp.t0 + n * h, s.u, s.v)
        yield s


def integrate(tab: NystromTableau, ivp: SecondOrderIVP, h: float, t_end: float) -> list[StepState]:
    """Fixed-step integration returning every grid state, ``t0`` included."""
    return list(iter_states(tab, ivp, h, t_end))


def trajectory_arrays(states: Sequence[StepState]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack a state sequence into ``(t, U, V)`` arrays."""
    t = np.array([s.t for s in states])
    U = np.array([s.u for s in states])
    V = np.array([s.v for s in states])
    return t, U, V
