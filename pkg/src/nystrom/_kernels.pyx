# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled error-streaming kernel for the built-in benchmark problems.

Same contract and operation order as ``_kernels_py.max_errors``.
"""
from libc.math cimport sin, cos, sqrt, fabs, isfinite, NAN

from .exceptions import NumericalBlowUp

cdef enum:
    MAXS = 16
    MAXD = 2
    MAXP = 8

INHOMOGENEOUS = 0
TWOBODY = 1
DUFFING = 2
FRANCO_PALACIOS = 3

MAX_STAGES = MAXS
BACKEND = "cython"


cdef inline void _accel(int problem, const double* p, double t, const double* g, double* out) noexcept nogil:
    cdef double x, y, r2, r3, nu2
    if problem == 0:
        nu2 = p[0] * p[0]
        out[0] = -nu2 * g[0] + (nu2 - 1.0) * sin(t)
    elif problem == 1:
        x = g[0]
        y = g[1]
        r2 = x * x + y * y
        if r2 < 1e-12:
            out[0] = NAN
            out[1] = NAN
            return
        r3 = r2 * sqrt(r2)
        out[0] = -x / r3
        out[1] = -y / r3
    elif problem == 2:
        x = g[0]
        out[0] = -x - x * x * x + p[0] * cos(p[1] * t)
    else:
        out[0] = -g[0] + p[0] * cos(t)
        out[1] = -g[1] + p[0] * sin(t)


cdef inline void _exact(int problem, const double* p, double t, double* out) noexcept nogil:
    cdef double s, ct, st, half_eps
    cdef int k
    if problem == 0:
        out[0] = cos(p[0] * t) + sin(p[0] * t) + sin(t)
    elif problem == 1:
        out[0] = cos(t)
        out[1] = sin(t)
    elif problem == 2:
        s = 0.0
        for k in range(5):
            s += p[2 + k] * cos((2 * k + 1) * p[1] * t)
        out[0] = s
    else:
        half_eps = 0.5 * p[0]
        ct = cos(t)
        st = sin(t)
        out[0] = ct + half_eps * t * st
        out[1] = st - half_eps * t * ct


cdef int _dim(int problem):
    if problem == 1 or problem == 3:
        return 2
    return 1


def max_errors(int problem, params, c, a, b, b_hat, double t0, u0, v0, double h,
               long n_steps, double t_skip, checkpoints):
    """Integrate a built-in problem and stream the max position error.

    See ``nystrom._kernels_py.max_errors`` for the parameter description.
    """
    cdef int m = len(c)
    cdef int d, i, j, q, np_
    cdef long n
    cdef double p[MAXP]
    cdef double cc[MAXS]
    cdef double ch[MAXS]
    cdef double bb[MAXS]
    cdef double bbh[MAXS]
    cdef double ahh[MAXS][MAXS]
    cdef double f[MAXS][MAXD]
    cdef double g[MAXD]
    cdef double u[MAXD]
    cdef double v[MAXD]
    cdef double ex[MAXD]
    cdef double hh = h * h
    cdef double du, dv, t, e, err = 0.0
    cdef double skip_tol = 1e-9 * max(1.0, fabs(t_skip))
    cdef bint failed = False

    if problem < 0 or problem > 3:
        raise ValueError(f"unknown problem code {problem}")
    if m > MAXS:
        raise ValueError(f"at most {MAXS} stages supported")
    np_ = len(params)
    if np_ > MAXP:
        raise ValueError("too many problem parameters")
    for i in range(np_):
        p[i] = params[i]
    d = _dim(problem)
    if len(u0) != d or len(v0) != d:
        raise ValueError(f"problem {problem} has dimension {d}")
    for i in range(m):
        cc[i] = c[i]
        ch[i] = cc[i] * h
        bb[i] = b[i]
        bbh[i] = b_hat[i]
        for j in range(m):
            ahh[i][j] = float(a[i][j]) * hh
    for q in range(d):
        u[q] = u0[q]
        v[q] = v0[q]

    marks = [int(k) for k in checkpoints]
    cdef Py_ssize_t nm = len(marks), mi = 0
    out = []
    while mi < nm and marks[mi] <= 0:
        out.append(0.0)
        mi += 1
    cdef long next_mark = marks[mi] if mi < nm else -1

    t = t0
    n = 0
    while n < n_steps:
        n += 1
        with nogil:
            for i in range(m):
                for q in range(d):
                    g[q] = u[q] + ch[i] * v[q]
                for j in range(i):
                    if ahh[i][j] != 0.0:
                        for q in range(d):
                            g[q] += ahh[i][j] * f[j][q]
                _accel(problem, p, t + ch[i], g, f[i])
            for q in range(d):
                du = 0.0
                dv = 0.0
                for i in range(m):
                    du += bb[i] * f[i][q]
                    dv += bbh[i] * f[i][q]
                u[q] = u[q] + h * v[q] + hh * du
                v[q] = v[q] + h * dv
            t = t0 + n * h
            for q in range(d):
                if not (isfinite(u[q]) and isfinite(v[q])):
                    failed = True
            if not failed and t >= t_skip - skip_tol:
                _exact(problem, p, t, ex)
                for q in range(d):
                    e = fabs(ex[q] - u[q])
                    if e > err:
                        err = e
        if failed:
            raise NumericalBlowUp(f"non-finite state at step {n} (t={t:g})", step_index=n)
        while n == next_mark:
            out.append(err)
            mi += 1
            next_mark = marks[mi] if mi < nm else -1
    while mi < nm:
        out.append(err)
        mi += 1
    return out
