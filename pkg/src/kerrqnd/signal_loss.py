"""Signal-mode loss propagation.

Second-moment algebra for the two ways loss enters the signal path:
before the measurement (input coupling, detector-side inefficiency
referred to the input) and after it (output coupling, when the
measurement is used to prepare a known-photon-number state).  Loss is
modeled as binomial thinning with efficiency ``mu``, which acts on
mean and variance as

    ``n -> mu n,    var -> mu^2 var + mu (1 - mu) n``

and composes exactly: thinning by ``mu1`` then ``mu2`` equals thinning
by ``mu1 mu2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _check_mu(mu: float):
    if not (0.0 < mu <= 1.0 and math.isfinite(mu)):
        raise ValueError(f"efficiency mu must be in (0, 1], got {mu!r}")


def _check_nonneg(name: str, value: float):
    if not (value >= 0.0 and math.isfinite(value)):
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class SignalLossConfig:
    """Signal-path loss scenario.

    Attributes:
        mu: Signal quantum efficiency in ``(0, 1]``.
        n_s: Mean photon number at the referenced plane.
        var_in: Incident photon-number variance (measurement scenario
            only; ignored for state preparation).
    """

    mu: float
    n_s: float
    var_in: float = 0.0

    def __post_init__(self):
        _check_mu(self.mu)
        _check_nonneg("n_s", self.n_s)
        _check_nonneg("var_in", self.var_in)


def apply_input_loss(n_s_in: float, var_in: float, mu: float):
    """Thins the incident signal by the input coupling efficiency.

    Args:
        n_s_in: Incident mean photon number, >= 0.
        var_in: Incident photon-number variance, >= 0.
        mu: Coupling efficiency in ``(0, 1]``.

    Returns:
        Tuple ``(n_s, var)`` of the intracavity mean and variance:
        ``(mu n_s_in, mu^2 var_in + mu (1 - mu) n_s_in)``.
    """
    _check_nonneg("n_s_in", n_s_in)
    _check_nonneg("var_in", var_in)
    _check_mu(mu)
    return mu * n_s_in, mu * mu * var_in + mu * (1.0 - mu) * n_s_in


def measurement_error_with_input_loss(n_s: float, error_sq_meas: float,
                                      mu: float) -> float:
    """Squared error of the incident photon number, referred to the input.

    The measurement resolves the intracavity number with squared error
    ``error_sq_meas``; inferring the incident number divides by the
    efficiency and adds the thinning noise:

        ``(mu (1 - mu) n_s + error_sq_meas) / mu^2``

    where ``n_s`` is the incident mean.  Normalized by the incident
    mean this is ``(1 - mu)/mu + error_sq_meas/(mu^2 n_s)``,
    so beating the shot-noise limit of the incident beam requires
    ``mu > 1/2`` regardless of how good the measurement is.
    """
    _check_nonneg("n_s", n_s)
    _check_nonneg("error_sq_meas", error_sq_meas)
    _check_mu(mu)
    return (mu * (1.0 - mu) * n_s + error_sq_meas) / (mu * mu)


def prepared_state(n_s: float, error_sq_meas: float, mu: float):
    """Mean and variance of the state heralded by the measurement.

    A measurement with squared error ``error_sq_meas`` followed by
    output loss ``mu`` prepares a state with

        ``n_prep = mu n_s,
        var_prep = mu^2 error_sq_meas + mu (1 - mu) n_s``

    i.e. the measurement error takes the role of the pre-loss variance.
    The Fano factor is ``1 - mu (1 - error_sq_meas / n_s)``, below one
    (sub-Poissonian) whenever ``error_sq_meas < n_s``.

    Returns:
        Tuple ``(n_prep, var_prep)``.
    """
    _check_nonneg("n_s", n_s)
    _check_nonneg("error_sq_meas", error_sq_meas)
    _check_mu(mu)
    return mu * n_s, mu * mu * error_sq_meas + mu * (1.0 - mu) * n_s


def is_sub_poissonian(n_prep: float, var_prep: float) -> bool:
    """Whether a state's photon-number variance is below its mean."""
    if not (n_prep > 0.0 and math.isfinite(n_prep)):
        raise ValueError(f"mean photon number must be > 0, got {n_prep!r}")
    _check_nonneg("var_prep", var_prep)
    return var_prep < n_prep
