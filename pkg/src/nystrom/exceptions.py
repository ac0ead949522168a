"""Exception types raised by the integrators and the phase-lag tools."""


class NumericalBlowUp(ArithmeticError):
    """A non-finite value appeared while stepping.

    Attributes
    ----------
    stage : int or None
        Zero-based stage whose acceleration (or the final update, when
        ``None``) went non-finite.
    step_index : int or None
        One-based index of the failing step when raised from a driver.
    """

    def __init__(self, message, stage=None, step_index=None):
        super().__init__(message)
        self.stage = stage
        self.step_index = step_index


class OutsideStabilityRange(ValueError):
    """The stability matrix does not have complex-conjugate eigenvalues."""


class FittingDegenerate(ValueError):
    """No admissible root of the phase-fitting condition exists at this z."""


class NoPowerLaw(ValueError):
    """The phase lag does not follow a clean power law on the probe grid."""


class NoAnalyticSolution(ValueError):
    """An accuracy measurement was requested for a problem without one."""
