r"""Closed-form error expressions for the probe measurement chain.

These are exact consequences of the Gaussian chain model in
:mod:`kerrqnd.chain` (no further approximation): for any amplifier
setting, choosing the homodyne angle equal to the amplifier
orientation, the amplifier orientation from :func:`optimal_angles` and
the input squeeze angle from :func:`optimal_squeeze_angle` minimizes the
photon-number error, and the minimized squared error takes the
two-term form

    ``(1 / gamma_x^2) [ (e^{-2r} + eps^2 e^{-2R}) / (4 n_p)
                        + n_p gamma_s^2 eps^2 / (e^{2R} + eps^2 e^{2r}) ]``

with ``eps^2 = (1 - eta) / eta``.  The first term is the projected
quantum noise, the second the self-phase noise folded in by detection
loss.  Minimizing over ``n_p`` gives the simple optimum
``gamma_s eps e^{-r-R} / gamma_x^2``.

The coherent-probe expressions are the ``r = R = 0`` special case and
are kept as named functions because they serve as the baseline in
sweeps and reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chain import ChainConfig
from .errors import DegenerateDirectionError, NoFiniteOptimumError


def sql(n_s: float) -> float:
    """Standard quantum limit on the photon-number error, ``sqrt(n_s)``.

    The shot-noise error of an ideal direct photon-number measurement
    on a coherent state of mean photon number ``n_s``.
    """
    if not (n_s >= 0.0 and math.isfinite(n_s)):
        raise ValueError(f"photon number must be finite and >= 0, got {n_s!r}")
    return math.sqrt(n_s)


def loss_factor(eta: float) -> float:
    """Loss-to-transmission amplitude ratio ``sqrt((1 - eta) / eta)``."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"efficiency must be in (0, 1], got {eta!r}")
    return math.sqrt((1.0 - eta) / eta)


def _check_chain_params(gamma_x: float, gamma_s: float, eta: float,
                        r: float, big_r: float):
    if not (gamma_x > 0.0 and math.isfinite(gamma_x)):
        raise ValueError(f"gamma_x must be finite and > 0, got {gamma_x!r}")
    if not (gamma_s >= 0.0 and math.isfinite(gamma_s)):
        raise ValueError(f"gamma_s must be finite and >= 0, got {gamma_s!r}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"efficiency must be in (0, 1], got {eta!r}")
    if not (r >= 0.0 and big_r >= 0.0
            and math.isfinite(r) and math.isfinite(big_r)):
        raise ValueError("squeeze parameters must be finite and >= 0")


def squeezed_error_sq(n_p: float, gamma_x: float, gamma_s: float, eta: float,
                      r: float, big_r: float) -> float:
    """Squared photon-number error at the optimal angles.

    Evaluates the closed form quoted in the module docstring.  Setting
    ``r = big_r = 0`` recovers the coherent-probe baseline.

    Args:
        n_p: Probe mean photon number, > 0.
        gamma_x: Cross-phase coefficient, > 0.
        gamma_s: Self-phase coefficient, >= 0.
        eta: Detection efficiency in ``(0, 1]``.
        r: Input squeeze parameter, >= 0.
        big_r: Amplifier parameter, >= 0.

    Returns:
        The squared error ``delta_ns^2``.
    """
    _check_chain_params(gamma_x, gamma_s, eta, r, big_r)
    if not (n_p > 0.0 and math.isfinite(n_p)):
        raise ValueError(f"n_p must be finite and > 0, got {n_p!r}")
    eps_sq = (1.0 - eta) / eta
    noise = (math.exp(-2.0 * r) + eps_sq * math.exp(-2.0 * big_r)) / (4.0 * n_p)
    spm = (n_p * gamma_s * gamma_s * eps_sq
           / (math.exp(2.0 * big_r) + eps_sq * math.exp(2.0 * r)))
    return (noise + spm) / (gamma_x * gamma_x)


def coherent_error_sq(n_p: float, gamma_x: float, gamma_s: float,
                      eta: float) -> float:
    """Squared error of the coherent-probe baseline (no squeezers)."""
    return squeezed_error_sq(n_p, gamma_x, gamma_s, eta, 0.0, 0.0)


def optimal_probe_photons(gamma_s: float, eta: float,
                          r: float = 0.0, big_r: float = 0.0) -> float:
    """Probe photon number minimizing the squared error.

    ``(e^{R - r} + eps^2 e^{r - R}) / (2 gamma_s eps)``, balancing the
    projected quantum noise against the loss-folded self-phase noise.

    Raises:
        NoFiniteOptimumError: If ``eta == 1`` or ``gamma_s == 0``; the
            error then falls monotonically with probe power and no
            finite optimum exists.
    """
    _check_chain_params(1.0, gamma_s, eta, r, big_r)
    eps = math.sqrt((1.0 - eta) / eta)
    if gamma_s == 0.0 or eps == 0.0:
        raise NoFiniteOptimumError(
            "error decreases monotonically with probe power "
            f"(gamma_s = {gamma_s:g}, eta = {eta:g}); no finite optimum"
        )
    eps_sq = eps * eps
    return ((math.exp(big_r - r) + eps_sq * math.exp(r - big_r))
            / (2.0 * gamma_s * eps))


def squeezed_error_sq_min(gamma_x: float, gamma_s: float, eta: float,
                          r: float, big_r: float) -> float:
    """Squared error at the optimal probe photon number.

    ``gamma_s eps e^{-r - R} / gamma_x^2``; both squeezers reduce the
    minimal error by their full amplitude factor.

    Raises:
        NoFiniteOptimumError: If ``eta == 1`` or ``gamma_s == 0``.
    """
    _check_chain_params(gamma_x, gamma_s, eta, r, big_r)
    eps = math.sqrt((1.0 - eta) / eta)
    if gamma_s == 0.0 or eps == 0.0:
        raise NoFiniteOptimumError(
            "error decreases monotonically with probe power "
            f"(gamma_s = {gamma_s:g}, eta = {eta:g}); no finite optimum"
        )
    return gamma_s * eps * math.exp(-r - big_r) / (gamma_x * gamma_x)


def coherent_error_sq_min(gamma_x: float, gamma_s: float, eta: float) -> float:
    """Minimal squared error of the coherent-probe baseline."""
    return squeezed_error_sq_min(gamma_x, gamma_s, eta, 0.0, 0.0)


@dataclass(frozen=True)
class ProjectionTerms:
    """Homodyne projections through the amplifier, and noise couplings.

    ``cos_projection`` and ``sin_projection`` are the components of
    ``h(zeta)^T S(big_r, phi)``: how the pre-amplifier cosine and sine
    quadratures appear on the homodyne axis.  ``sin_projection`` is
    also the signal projection, since the cross-phase signal sits in
    the sine quadrature.

    Folding in the self-phase shear gives the couplings of the
    measured quadrature to the squeezed-frame probe fluctuations:
    ``cos_coupling = cos_projection + 2 n_p gamma_s sin_projection``
    and ``sin_coupling = sin_projection``.
    """

    cos_projection: float
    sin_projection: float
    cos_coupling: float
    sin_coupling: float


def projection_terms(big_r: float, phi: float, zeta: float,
                     n_p: float, gamma_s: float) -> ProjectionTerms:
    """Computes the homodyne projections and noise couplings.

    Args:
        big_r: Amplifier parameter.
        phi: Amplifier orientation in radians.
        zeta: Homodyne angle in radians.
        n_p: Probe mean photon number.
        gamma_s: Self-phase coefficient.
    """
    e_plus = math.exp(big_r)
    e_minus = math.exp(-big_r)
    cos_d = math.cos(zeta - phi)
    sin_d = math.sin(zeta - phi)
    cos_p = math.cos(phi)
    sin_p = math.sin(phi)
    cos_projection = e_plus * cos_d * cos_p - e_minus * sin_d * sin_p
    sin_projection = e_plus * cos_d * sin_p + e_minus * sin_d * cos_p
    cos_coupling = cos_projection + 2.0 * n_p * gamma_s * sin_projection
    return ProjectionTerms(cos_projection, sin_projection,
                           cos_coupling, sin_projection)


def optimal_squeeze_angle(cos_coupling: float, sin_coupling: float) -> float:
    """Input squeeze orientation minimizing the projected noise.

    With couplings ``(B, A) = (cos_coupling, sin_coupling)`` the
    projected noise before loss is

        ``(1/2) [ (A^2 + B^2) cosh 2r
                  + ((B^2 - A^2) cos 2theta + 2 A B sin 2theta) sinh 2r ]``

    which is minimized, down to ``(A^2 + B^2) e^{-2r} / 2``, by
    ``2 theta = atan2(-2 A B, A^2 - B^2)``.  The result is reduced to
    ``[0, pi)``.

    Raises:
        DegenerateDirectionError: If both couplings vanish.
    """
    a = sin_coupling
    b = cos_coupling
    if a == 0.0 and b == 0.0:
        raise DegenerateDirectionError(
            "both noise couplings vanish; squeeze angle is undefined"
        )
    theta = 0.5 * math.atan2(-2.0 * a * b, a * a - b * b)
    return theta % math.pi


@dataclass(frozen=True)
class OptimalAngles:
    """Optimal squeeze, amplifier and homodyne angles.

    ``zeta == phi`` always holds here: measuring along the amplifier's
    stretched axis is optimal for any amplifier strength.
    """

    theta: float
    phi: float
    zeta: float


def optimal_angles(n_p: float, gamma_s: float, eta: float,
                   r: float, big_r: float) -> OptimalAngles:
    """Computes the error-minimizing angle triple.

    The amplifier orientation solves

        ``cot(phi) = -2 n_p gamma_s / (1 + eps^2 e^{2r - 2R})``

    with ``phi`` in ``(0, pi)``, the homodyne angle equals ``phi``,
    and the squeeze angle follows from :func:`optimal_squeeze_angle`
    at those settings.

    Args:
        n_p: Probe mean photon number, > 0.
        gamma_s: Self-phase coefficient, >= 0.
        eta: Detection efficiency in ``(0, 1]``.
        r: Input squeeze parameter, >= 0.
        big_r: Amplifier parameter, >= 0.
    """
    _check_chain_params(1.0, gamma_s, eta, r, big_r)
    if not (n_p > 0.0 and math.isfinite(n_p)):
        raise ValueError(f"n_p must be finite and > 0, got {n_p!r}")
    eps_sq = (1.0 - eta) / eta
    cot_phi = (-2.0 * n_p * gamma_s
               / (1.0 + eps_sq * math.exp(2.0 * (r - big_r))))
    phi = math.atan2(1.0, cot_phi)
    terms = projection_terms(big_r, phi, phi, n_p, gamma_s)
    theta = optimal_squeeze_angle(terms.cos_coupling, terms.sin_coupling)
    return OptimalAngles(theta=theta, phi=phi, zeta=phi)


def noise_variance_closed_form(config: ChainConfig) -> float:
    """Detected quadrature variance in closed form.

    Identical (to round-off) to :func:`kerrqnd.chain.noise_variance`
    at any parameter point, including non-optimal angles:

        ``(eta/2) [ (A^2 + B^2) cosh 2r
                    + ((B^2 - A^2) cos 2theta + 2 A B sin 2theta) sinh 2r
                    + eps^2 ]``

    with the couplings ``(B, A)`` from :func:`projection_terms`.
    """
    terms = projection_terms(config.big_r, config.phi, config.zeta,
                             config.n_p, config.gamma_s)
    a = terms.sin_coupling
    b = terms.cos_coupling
    quad = a * a + b * b
    aligned = ((b * b - a * a) * math.cos(2.0 * config.theta)
               + 2.0 * a * b * math.sin(2.0 * config.theta))
    eps_sq = (1.0 - config.eta) / config.eta
    return 0.5 * config.eta * (quad * math.cosh(2.0 * config.r)
                               + aligned * math.sinh(2.0 * config.r)
                               + eps_sq)


def measurement_error_closed_form(config: ChainConfig) -> float:
    """Photon-number error in closed form at arbitrary angles.

    Combines :func:`noise_variance_closed_form` with the signal gain.
    Returns ``inf`` if the homodyne direction is blind to the signal.
    """
    terms = projection_terms(config.big_r, config.phi, config.zeta,
                             config.n_p, config.gamma_s)
    if terms.sin_projection == 0.0:
        return math.inf
    g = (math.sqrt(2.0 * config.eta * config.n_p) * config.gamma_x
         * terms.sin_projection)
    return math.sqrt(noise_variance_closed_form(config)) / abs(g)


def optimal_config(gamma_x: float, gamma_s: float, eta: float,
                   r: float, big_r: float,
                   n_p: float | None = None) -> ChainConfig:
    """Assembles a chain configuration at the analytic optimum.

    Args:
        gamma_x: Cross-phase coefficient, > 0.
        gamma_s: Self-phase coefficient, >= 0.
        eta: Detection efficiency in ``(0, 1]``.
        r: Input squeeze parameter, >= 0.
        big_r: Amplifier parameter, >= 0.
        n_p: Probe photon number; if omitted, the optimal value is
            used (which requires ``eta < 1`` and ``gamma_s > 0``).

    Returns:
        A :class:`~kerrqnd.chain.ChainConfig` with the optimal angles.
    """
    if n_p is None:
        n_p = optimal_probe_photons(gamma_s, eta, r, big_r)
    angles = optimal_angles(n_p, gamma_s, eta, r, big_r)
    return ChainConfig(n_p=n_p, gamma_x=gamma_x, gamma_s=gamma_s, eta=eta,
                       r=r, theta=angles.theta, big_r=big_r,
                       phi=angles.phi, zeta=angles.zeta)
