"""Numeric model of the probe measurement chain.

The chain prepares a bright probe, squeezes it, imprints the Kerr
interaction (cross-phase signal plus self-phase noise coupling),
amplifies with a second squeezer, and detects one quadrature with a
lossy homodyne.  Everything here is evaluated numerically from the
symplectic building blocks in :mod:`kerrqnd.gaussian`; the closed
forms in :mod:`kerrqnd.analytic` are validated against this module.

The inferred photon-number error of the measurement is

    ``delta_ns = sqrt(noise_variance) / |gain|``

where ``gain`` is the homodyne response to one signal photon and
``noise_variance`` is the detected quadrature variance.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import gaussian
from .errors import LinearizationWarning, ZeroGainError

# Signal projections below this magnitude are treated as a blind
# homodyne direction rather than an astronomically large error.
ZERO_GAIN_TOL = 1e-14

# Probe photon numbers below this strain the linearized probe model.
_LINEAR_REGIME_MIN_NP = 100.0


@dataclass(frozen=True)
class ChainConfig:
    """Full parameter set of one measurement-chain evaluation.

    Attributes:
        n_p: Probe mean photon number, > 0.
        gamma_x: Cross-phase modulation coefficient (probe phase shift
            per signal photon), > 0.
        gamma_s: Self-phase modulation coefficient (probe phase shift
            per probe photon), >= 0.
        eta: Homodyne detection efficiency in ``(0, 1]``.
        r: Input squeeze parameter, >= 0.
        theta: Input squeeze orientation in radians.
        big_r: Amplifier (output squeezer) parameter, >= 0.
        phi: Amplifier orientation in radians.
        zeta: Homodyne quadrature angle in radians.
    """

    n_p: float
    gamma_x: float
    gamma_s: float
    eta: float
    r: float = 0.0
    theta: float = 0.0
    big_r: float = 0.0
    phi: float = 0.0
    zeta: float = math.pi / 2.0

    def __post_init__(self):
        for name in ("n_p", "gamma_x", "gamma_s", "eta", "r", "theta",
                     "big_r", "phi", "zeta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.n_p <= 0.0:
            raise ValueError(f"n_p must be > 0, got {self.n_p!r}")
        if self.gamma_x <= 0.0:
            raise ValueError(f"gamma_x must be > 0, got {self.gamma_x!r}")
        if self.gamma_s < 0.0:
            raise ValueError(f"gamma_s must be >= 0, got {self.gamma_s!r}")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta!r}")
        if self.r < 0.0 or self.big_r < 0.0:
            raise ValueError("squeeze parameters r and big_r must be >= 0")
        if self.n_p < _LINEAR_REGIME_MIN_NP:
            warnings.warn(
                f"n_p = {self.n_p:g} is small; the linearized probe model "
                "assumes a bright beam",
                LinearizationWarning,
                stacklevel=2,
            )

    @property
    def loss_factor(self) -> float:
        """Loss-to-transmission amplitude ratio ``sqrt((1 - eta) / eta)``."""
        return math.sqrt((1.0 - self.eta) / self.eta)

    def replace(self, **kwargs) -> "ChainConfig":
        """Returns a copy with the given fields replaced."""
        return dataclasses.replace(self, **kwargs)


@dataclass(frozen=True)
class ChainOutput:
    """Result of one chain evaluation.

    Attributes:
        gain: Homodyne signal per signal photon (can be negative).
        noise_variance: Detected quadrature variance.
        delta_ns: Photon-number measurement error,
            ``sqrt(noise_variance) / |gain|``.
    """

    gain: float
    noise_variance: float
    delta_ns: float


def signal_projection(config: ChainConfig) -> float:
    """Projection of the phase-quadrature signal onto the homodyne axis.

    The cross-phase signal enters the sine quadrature before the
    amplifier; this returns ``h(zeta)^T S(big_r, phi) (0, 1)^T``, the
    factor by which the amplifier and homodyne pass it through.
    """
    s_amp = gaussian.squeeze_matrix(config.big_r, config.phi)
    h = gaussian.homodyne_vector(config.zeta)
    return float(h @ s_amp[:, 1])


def gain(config: ChainConfig) -> float:
    """Homodyne response to one signal photon.

    One signal photon shifts the probe phase by ``gamma_x``, which
    displaces the sine quadrature by ``2 gamma_x`` times the probe
    amplitude ``sqrt(2 n_p)`` (halved to ``sqrt(n_p / 2) * 2``), then
    passes through the amplifier, homodyne projection and the
    ``sqrt(eta)`` amplitude transmission of the detector.
    """
    return (math.sqrt(2.0 * config.eta * config.n_p) * config.gamma_x
            * signal_projection(config))


def transfer_matrix(config: ChainConfig) -> np.ndarray:
    """Symplectic matrix of the whole chain (squeeze, shear, amplify)."""
    return (gaussian.squeeze_matrix(config.big_r, config.phi)
            @ gaussian.spm_matrix(config.n_p, config.gamma_s)
            @ gaussian.squeeze_matrix(config.r, config.theta))


def noise_variance(config: ChainConfig) -> float:
    """Detected quadrature variance of the propagated probe fluctuations.

    The probe fluctuations start in vacuum, so after the symplectic
    chain ``M`` the covariance is ``M M^T / 2`` and the variance along
    the homodyne axis ``h`` is ``|h^T M|^2 / 2``.  The homodyne vector
    is pulled back through the chain in that form: the forward sandwich
    ``M (1/2) M^T`` followed by projection cancels catastrophically
    when squeezing and shear nearly null the detected direction, while
    the pulled-back expression is a plain sum of squares.
    """
    back = gaussian.homodyne_vector(config.zeta) @ transfer_matrix(config)
    projected = 0.5 * float(back @ back)
    return gaussian.apply_loss_quadrature(projected, config.eta)


def measurement_error(config: ChainConfig) -> ChainOutput:
    """Evaluates the full chain and returns gain, noise and error.

    Raises:
        ZeroGainError: If the homodyne axis is orthogonal to the
            amplified signal quadrature, so the measurement carries no
            photon-number information.
    """
    projection = signal_projection(config)
    if abs(projection) <= ZERO_GAIN_TOL:
        raise ZeroGainError(
            f"homodyne angle zeta = {config.zeta:g} is blind to the signal "
            f"(projection = {projection:.3g})"
        )
    g = (math.sqrt(2.0 * config.eta * config.n_p) * config.gamma_x * projection)
    var = noise_variance(config)
    return ChainOutput(gain=g, noise_variance=var,
                       delta_ns=math.sqrt(var) / abs(g))
