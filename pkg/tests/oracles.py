"""Independent oracles for the stability-matrix tests.

The polynomials below are the closed-form expansions of the 4-stage RKN
propagator entries in the raw coefficients, transcribed term by term.  They
share no code with ``nystrom.phase`` and work with any numeric type
(``Fraction`` gives exact values).
"""
from fractions import Fraction as F

DPRKN4 = dict(
    b1=F(1, 14), b2=F(8, 27), b3=F(25, 189), b4=F(0),
    bh1=F(1, 14), bh2=F(32, 81), bh3=F(250, 567), bh4=F(5, 54),
    c2=F(1, 4), c3=F(7, 10), c4=F(1),
    a21=F(1, 32), a31=F(7, 1000), a32=F(119, 500), a41=F(1, 14), a42=F(8, 27), a43=F(25, 189),
)


def poly_A(z, b1, b2, b3, b4, a21, a31, a32, a41, a42, a43, **_):
    return (1 + b4*a43*a32*a21*z**8
            + (-b4*a42*a21 - b3*a32*a21 - b4*a43*a31 - b4*a43*a32)*z**6
            + (b2*a21 + b4*a41 + b4*a42 + b3*a31 + b4*a43 + b3*a32)*z**4
            + (-b4 - b1 - b3 - b2)*z**2)


def poly_B(z, b2, b3, b4, c2, c3, c4, a32, a42, a43, **_):
    return (1 - b4*a43*a32*c2*z**6
            + (b4*a43*c3 + b4*a42*c2 + b3*a32*c2)*z**4
            + (-b3*c3 - b4*c4 - b2*c2)*z**2)


def poly_A_prime(z, bh1, bh2, bh3, bh4, a21, a31, a32, a41, a42, a43, **_):
    return (bh4*a43*a32*a21*z**8
            + (-bh3*a32*a21 - bh4*a43*a31 - bh4*a43*a32 - bh4*a42*a21)*z**6
            + (bh2*a21 + bh3*a31 + bh3*a32 + bh4*a41 + bh4*a42 + bh4*a43)*z**4
            + (-bh4 - bh2 - bh1 - bh3)*z**2)


def poly_B_prime(z, bh2, bh3, bh4, c2, c3, c4, a32, a42, a43, **_):
    return (1 - bh4*a43*a32*c2*z**6
            + (bh4*a43*c3 + bh4*a42*c2 + bh3*a32*c2)*z**4
            + (-bh3*c3 - bh4*c4 - bh2*c2)*z**2)


def poly_R(z, b1, b2, b3, b4, bh2, bh3, bh4, c2, c3, c4, a21, a31, a32, a41, a42, a43, **_):
    return (2 + b4*a43*a32*a21*z**8
            + (-b3*a32*a21 - b4*a43*a32 - b4*a42*a21 - bh4*a43*a32*c2 - b4*a43*a31)*z**6
            + (b2*a21 + b3*a32 + b4*a43 + bh3*a32*c2 + bh4*a43*c3 + bh4*a42*c2 + b3*a31 + b4*a41
               + b4*a42)*z**4
            + (-b3 - b2 - bh3*c3 - bh4*c4 - bh2*c2 - b4 - b1)*z**2)


def poly_Q(z, b1, b2, b3, b4, bh1, bh2, bh3, bh4, c2, c3, c4, a21, a31, a32, a41, a42, a43, **_):
    z8 = (-bh4*a43*a31*b2*c2 - bh4*a42*a21*b3*c3 - bh2*a21*b4*a43*c3
          - bh3*a32*a21*b4*c4 + b3*a31*bh4*a42*c2 - bh3*a31*b4*a42*c2 - bh4*a43*a32*a21
          + b4*a42*a21*bh3*c3 - bh1*b4*a43*a32*c2 + b4*a41*bh3*a32*c2 - bh4*a41*b3*a32*c2
          + b4*a43*a32*a21 + b1*bh4*a43*a32*c2 + b3*a32*a21*bh4*c4 + b4*a43*a31*bh2*c2
          + b2*a21*bh4*a43*c3)
    z6 = (-b4*a43*a31 - b3*a32*a21 - b4*a42*a21 - b4*a43*a32 - b1*bh4*a42*c2 - b1*bh3*a32*c2
          - b3*bh4*a42*c2 + bh2*b4*a43*c3 - b2*a21*bh3*c3 - b2*a21*bh4*c4 - b4*a41*bh3*c3
          - b4*a41*bh2*c2 - b4*a42*bh3*c3 + bh3*a32*b4*c4 + bh4*a41*b3*c3 + bh4*a41*b2*c2
          + bh4*a42*b3*c3 - b2*bh4*a43*c3 + bh2*a21*b4*c4 + bh3*a31*b4*c4 + bh3*a31*b2*c2
          - b3*a31*bh4*c4 - b3*a31*bh2*c2 - b4*a43*bh2*c2 - b3*a32*bh4*c4 - b4*bh3*a32*c2
          - b1*bh4*a43*c3 + bh4*b3*a32*c2 + bh1*b4*a43*c3 + bh4*a43*b2*c2 + bh1*b4*a42*c2
          + bh1*b3*a32*c2 + bh3*b4*a42*c2 + bh2*a21*b3*c3 + bh3*a32*a21 + bh4*a43*a31
          + bh4*a42*a21 + bh4*a43*a32 - bh4*a43*a32*c2)
    z4 = (-bh4*b3*c3 + b4*bh2*c2 - bh2*b4*c4 - bh3*b4*c4 + b2*bh4*c4 + b3*bh2*c2 + b3*bh4*c4
          - bh1*b3*c3 + b4*bh3*c3 + b1*bh3*c3 - bh4*b2*c2 - bh1*b2*c2 - bh1*b4*c4 + b1*bh2*c2
          + b2*bh3*c3 + b1*bh4*c4 - bh3*b2*c2 - bh2*b3*c3 - bh2*a21 - bh3*a31 - bh3*a32
          - bh4*a41 - bh4*a42 - bh4*a43 + b2*a21 + b4*a41 + b4*a42 + b3*a31 + b4*a43 + b3*a32
          + bh3*a32*c2 + bh4*a43*c3 + bh4*a42*c2)
    z2 = -b2 - bh4*c4 + bh2 - b4 + bh1 + bh3 - bh2*c2 - b1 - b3 - bh3*c3 + bh4
    return 1 + z8*z**8 + z6*z**6 + z4*z**4 + z2*z**2


def all_entries(z, coeffs=DPRKN4):
    """(A, B, A', B', R, Q) from the transcribed expansions."""
    return tuple(
        f(z, **coeffs) for f in (poly_A, poly_B, poly_A_prime, poly_B_prime, poly_R, poly_Q)
    )


def taylor_a43(z):
    """Even series of the fitted coefficient, exact in ``Fraction``."""
    z = F(z)
    return (F(25, 189) - F(43, 2400) * z**2 - F(1531, 30240000) * z**4
            - F(3273029, 36288000000) * z**6 + F(59772887431, 9699782400000000) * z**8)
