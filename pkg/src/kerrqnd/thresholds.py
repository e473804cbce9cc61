"""Feasibility thresholds for non-classical signal states.

Order-of-magnitude criteria (numerical factors of order unity are
dropped throughout, matching the level of the underlying estimates):

* A photon-number measurement of a state with mean ``n`` produces a
  non-Gaussian state only if its error is below ``n^(1/3)``.
* With signal-path efficiency ``mu``, loss adds ``(1 - mu) n`` to the
  resolvable variance, so the admissible squared error is at most
  ``margin(n, mu) = n^(2/3) - (1 - mu) n``.
* That margin peaks at ``n* = 8 / (27 (1 - mu)^3)`` with value
  ``4 / (27 (1 - mu)^2)``; the exact 8/27 and 4/27 factors are kept
  in code even though comparisons to order-of-magnitude claims should
  only trust them to a factor of a few.
* Single-photon sensitivity additionally requires the loss noise
  itself to stay within one photon, ``(1 - mu) n <= 1``, which caps
  the usable signal photon number at ``~1 / (1 - mu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _check_mu(mu: float):
    if not (0.0 < mu <= 1.0 and math.isfinite(mu)):
        raise ValueError(f"efficiency mu must be in (0, 1], got {mu!r}")


@dataclass(frozen=True)
class ThresholdReport:
    """Feasibility summary at a given signal-path efficiency.

    Attributes:
        ns_star: Signal photon number maximizing the admissible error
            margin.
        dns_max: Largest admissible measurement error (photons),
            ``sqrt(margin(ns_star))``.
        margin_table: Tabulated ``(n_s, margin)`` pairs on a log grid
            up to past the peak.
        single_photon_feasible: Whether the given measurement error
            resolves single photons (error <= 1).
        single_photon_ns_limit: Largest signal photon number whose
            loss noise stays within one photon, ``~1 / (1 - mu)``
            (``inf`` for a lossless path).
    """

    ns_star: float
    dns_max: float
    margin_table: tuple
    single_photon_feasible: bool
    single_photon_ns_limit: float


def non_gaussian_bound(n: float) -> float:
    """Error level below which the post-measurement state is non-Gaussian.

    ``n^(1/3)`` up to a factor of order unity.
    """
    if not (n >= 0.0 and math.isfinite(n)):
        raise ValueError(f"photon number must be finite and >= 0, got {n!r}")
    return n ** (1.0 / 3.0)


def non_gaussian_margin(n_s: float, mu: float) -> float:
    """Admissible squared error after subtracting loss noise.

    ``n_s^(2/3) - (1 - mu) n_s``; negative values mean loss noise
    alone already exceeds the non-Gaussianity budget at this ``n_s``.
    """
    if not (n_s >= 0.0 and math.isfinite(n_s)):
        raise ValueError(f"photon number must be finite and >= 0, got {n_s!r}")
    _check_mu(mu)
    return n_s ** (2.0 / 3.0) - (1.0 - mu) * n_s


def margin_peak_ns(mu: float) -> float:
    """Signal photon number maximizing the margin, ``8 / (27 (1 - mu)^3)``.

    Raises:
        ValueError: If ``mu == 1``; the margin is then unbounded.
    """
    _check_mu(mu)
    if mu == 1.0:
        raise ValueError("margin grows without bound for a lossless path")
    return 8.0 / (27.0 * (1.0 - mu) ** 3)


def margin_peak_error(mu: float) -> float:
    """Largest admissible measurement error, ``sqrt(4 / (27 (1 - mu)^2))``.

    Evaluates to ``0.3849 / (1 - mu)`` photons.
    """
    _check_mu(mu)
    if mu == 1.0:
        raise ValueError("margin grows without bound for a lossless path")
    return math.sqrt(4.0 / 27.0) / (1.0 - mu)


def _bisect(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Root of a monotone function by bisection, ``|f| < tol`` at return."""
    f_lo = f(lo)
    if abs(f_lo) < tol:
        return lo
    f_hi = f(hi)
    if f_lo * f_hi > 0.0:
        raise ValueError("bisection bracket does not straddle a root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) < tol:
            return mid
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def single_photon_check(dns_meas: float, mu: float) -> ThresholdReport:
    """Feasibility report for single-photon-level sensitivity.

    A measurement error ``dns_meas <= 1`` resolves individual photons;
    the report also gives the signal photon number scale at which loss
    noise ``(1 - mu) n_s`` reaches one photon (bracketed numerically),
    beyond which single-photon sensitivity is lost no matter how good
    the measurement is.

    Args:
        dns_meas: Measurement error in photons, >= 0.
        mu: Signal-path efficiency in ``(0, 1]``.
    """
    if not (dns_meas >= 0.0 and math.isfinite(dns_meas)):
        raise ValueError(f"error must be finite and >= 0, got {dns_meas!r}")
    _check_mu(mu)
    if mu == 1.0:
        ns_star = math.inf
        dns_max = math.inf
        ns_limit = math.inf
        grid = np.logspace(0.0, 6.0, 13)
    else:
        ns_star = margin_peak_ns(mu)
        dns_max = margin_peak_error(mu)
        ns_limit = _bisect(lambda n: (1.0 - mu) * n - 1.0,
                           0.0, 2.0 / (1.0 - mu))
        grid = np.logspace(0.0, math.log10(10.0 * ns_star), 13)
    table = tuple((float(n), non_gaussian_margin(float(n), mu)) for n in grid)
    return ThresholdReport(
        ns_star=ns_star,
        dns_max=dns_max,
        margin_table=table,
        single_photon_feasible=dns_meas <= 1.0,
        single_photon_ns_limit=ns_limit,
    )
