"""Exception and warning types shared across the toolkit."""


class KerrQndError(Exception):
    """Base class for all toolkit-specific errors."""


class ZeroGainError(KerrQndError):
    """The homodyne direction is blind to the phase-modulation signal.

    Raised when the signal projection of the measured quadrature
    vanishes, so the measurement carries no photon-number information
    and the error diverges.
    """


class NoFiniteOptimumError(KerrQndError):
    """The measurement error has no interior minimum in probe power.

    Happens for a lossless detector or a vanishing self-phase
    modulation coefficient, where the error decreases monotonically
    with the probe photon number.
    """


class DegenerateDirectionError(KerrQndError):
    """Both noise-coupling coefficients vanish.

    The optimal squeeze angle is undefined in this case; any angle
    gives the same (zero) projected noise.
    """


class NonConvergenceError(KerrQndError):
    """An optimizer exhausted its evaluation budget before converging."""


class ConfigError(KerrQndError):
    """Invalid configuration input.

    Attributes:
        field: Dotted path of the offending configuration field.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class LinearizationWarning(UserWarning):
    """The probe power is low enough to strain the linearized model.

    The chain treats the probe classically apart from its quadrature
    fluctuations, which assumes a mean field much larger than the
    fluctuations.  Results at very low photon number are indicative
    only.
    """
