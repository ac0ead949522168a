"""Runge-Kutta-Nystrom integration with a phase-fitted Dormand-Prince RKN4.

The fitted method retunes one stage coefficient so that the phase lag on
``u'' = -nu^2 u`` vanishes at the run's ``z = nu h``.
"""
from ._backend import BACKEND
from .bench import AccuracyReport, accuracy, run_problem, run_table2, write_csv
from .core import NystromTableau, SecondOrderIVP, StepState, integrate, iter_states, step
from .exceptions import (
    FittingDegenerate,
    NoAnalyticSolution,
    NoPowerLaw,
    NumericalBlowUp,
    OutsideStabilityRange,
)
from .fitting import (
    MethodKind,
    MethodSpec,
    build_tableau,
    dprkn4_tableau,
    fitted_a43,
    fitted_a43_taylor,
)
from .phase import (
    StabilityMatrix,
    amplification_error,
    det_Q,
    estimate_phase_lag_order,
    phase_lag,
    stability_matrix,
    trace_R,
)
from .problems import ProblemId, make_problem

__version__ = "0.1.0"
