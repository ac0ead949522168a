"""Pure-Python fallback for the compiled error-streaming kernel.

Mirrors ``_kernels.pyx`` operation for operation so that both backends
produce the same floating-point results.  Only the four built-in benchmark
problems are supported; arbitrary right-hand sides go through
``nystrom.core.integrate``.
"""
import math

from .exceptions import NumericalBlowUp

INHOMOGENEOUS = 0
TWOBODY = 1
DUFFING = 2
FRANCO_PALACIOS = 3

MAX_STAGES = 16
BACKEND = "python"


def _make_accel(problem, p):
    if problem == INHOMOGENEOUS:
        nu2 = p[0] * p[0]
        forcing = nu2 - 1.0

        def accel(t, g):
            return (-nu2 * g[0] + forcing * math.sin(t),)

    elif problem == TWOBODY:

        def accel(t, g):
            x, y = g
            r2 = x * x + y * y
            if r2 < 1e-12:
                return (math.nan, math.nan)
            r3 = r2 * math.sqrt(r2)
            return (-x / r3, -y / r3)

    elif problem == DUFFING:
        B, nu = p[0], p[1]

        def accel(t, g):
            x = g[0]
            return (-x - x * x * x + B * math.cos(nu * t),)

    elif problem == FRANCO_PALACIOS:
        eps = p[0]

        def accel(t, g):
            return (-g[0] + eps * math.cos(t), -g[1] + eps * math.sin(t))

    else:
        raise ValueError(f"unknown problem code {problem}")
    return accel


def _make_exact(problem, p):
    if problem == INHOMOGENEOUS:
        nu = p[0]

        def exact(t):
            return (math.cos(nu * t) + math.sin(nu * t) + math.sin(t),)

    elif problem == TWOBODY:

        def exact(t):
            return (math.cos(t), math.sin(t))

    elif problem == DUFFING:
        nu = p[1]
        amps = p[2:7]

        def exact(t):
            s = 0.0
            for k in range(5):
                s += amps[k] * math.cos((2 * k + 1) * nu * t)
            return (s,)

    elif problem == FRANCO_PALACIOS:
        half_eps = 0.5 * p[0]

        def exact(t):
            ct = math.cos(t)
            st = math.sin(t)
            return (ct + half_eps * t * st, st - half_eps * t * ct)

    else:
        raise ValueError(f"unknown problem code {problem}")
    return exact


def max_errors(problem, params, c, a, b, b_hat, t0, u0, v0, h, n_steps, t_skip, checkpoints):
    """Integrate a built-in problem and stream the max position error.

    Parameters
    ----------
    problem : int
        One of the module-level problem codes.
    params : sequence of float
        Problem parameters (see ``nystrom.problems.kernel_params``).
    c, a, b, b_hat : sequences
        Tableau; ``a`` is a nested ``m x m`` sequence.
    t0, u0, v0 : initial time, position and velocity.
    h : float
        Step size.
    n_steps : int
        Number of steps to take.
    t_skip : float
        Grid points earlier than this are excluded from the error.
    checkpoints : sequence of int
        Increasing step indices; the running maximum is recorded at each.

    Returns
    -------
    list of float
        Max-norm position error over ``t_skip <= t_n <= t0 + k h`` for each
        checkpoint ``k``.
    """
    m = len(c)
    if m > MAX_STAGES:
        raise ValueError(f"at most {MAX_STAGES} stages supported")
    params = [float(x) for x in params]
    accel = _make_accel(problem, params)
    exact = _make_exact(problem, params)
    c = [float(x) for x in c]
    a = [[float(x) for x in row] for row in a]
    b = [float(x) for x in b]
    bh = [float(x) for x in b_hat]
    u = [float(x) for x in u0]
    v = [float(x) for x in v0]
    d = len(u)
    hh = h * h
    ch = [ci * h for ci in c]
    ahh = [[aij * hh for aij in row] for row in a]
    skip_tol = 1e-9 * max(1.0, abs(t_skip))

    out = []
    marks = list(checkpoints)
    mi = 0
    while mi < len(marks) and marks[mi] <= 0:
        out.append(0.0)
        mi += 1
    err = 0.0
    t = t0
    dims = range(d)
    f = [None] * m
    for n in range(1, n_steps + 1):
        for i in range(m):
            g = [u[q] + ch[i] * v[q] for q in dims]
            row = ahh[i]
            for j in range(i):
                if row[j] != 0.0:
                    fj = f[j]
                    for q in dims:
                        g[q] += row[j] * fj[q]
            f[i] = accel(t + ch[i], g)
        for q in dims:
            du = 0.0
            dv = 0.0
            for i in range(m):
                du += b[i] * f[i][q]
                dv += bh[i] * f[i][q]
            u[q] = u[q] + h * v[q] + hh * du
            v[q] = v[q] + h * dv
        t = t0 + n * h
        for q in dims:
            if not (math.isfinite(u[q]) and math.isfinite(v[q])):
                raise NumericalBlowUp(f"non-finite state at step {n} (t={t:g})", step_index=n)
        if t >= t_skip - skip_tol:
            ex = exact(t)
            for q in dims:
                e = abs(ex[q] - u[q])
                if e > err:
                    err = e
        while mi < len(marks) and marks[mi] == n:
            out.append(err)
            mi += 1
    while mi < len(marks):
        out.append(err)
        mi += 1
    return out
