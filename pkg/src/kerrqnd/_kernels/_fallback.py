"""Pure-Python backend for the chain-error objective.

Mirrors the arithmetic of the compiled backend step for step so the
two agree to round-off.  Used automatically when the compiled
extension is unavailable, or when ``KERRQND_FORCE_PURE=1`` is set.

Instead of pushing the covariance matrix forward through the chain,
the kernel pulls the measured direction back through the adjoints:

    ``var = |S(r, theta) F^T T^T h|^2 / 2``

This is the same quadratic form, but the self-phase shear magnitude
``2 n_p gamma_s`` enters linearly rather than squared, which keeps
the evaluation well conditioned even at extreme probe powers where
the forward sandwich loses all significant digits.
"""

from __future__ import annotations

import math

import numpy as np

# Signal projections below this magnitude mean a blind homodyne
# direction; the objective returns inf there (matches chain.ZERO_GAIN_TOL).
_ZERO_GAIN_TOL = 1e-14


def chain_error_sq(theta: float, phi: float, zeta: float, n_p: float,
                   gamma_x: float, gamma_s: float, eta: float,
                   r: float, big_r: float) -> float:
    """Squared photon-number error of the chain at arbitrary angles.

    Returns ``inf`` when the homodyne direction is blind to the
    signal, which keeps the function safe to minimize without
    special-casing.
    """
    chb = math.cosh(big_r)
    shb = math.sinh(big_r)
    cb2 = math.cos(2.0 * phi)
    sb2 = math.sin(2.0 * phi)
    t11 = chb + shb * cb2
    t12 = shb * sb2
    t22 = chb - shb * cb2

    hc = math.cos(zeta)
    hs = math.sin(zeta)
    projection = hc * t12 + hs * t22
    if abs(projection) <= _ZERO_GAIN_TOL:
        return math.inf

    # Amplifier adjoint on the measured direction (T is symmetric).
    v1 = t11 * hc + t12 * hs
    v2 = projection

    # Self-phase shear adjoint [[1, g], [0, 1]].
    g = 2.0 * n_p * gamma_s
    b = v1 + g * v2
    a = v2

    ch = math.cosh(r)
    sh = math.sinh(r)
    c2 = math.cos(2.0 * theta)
    s2 = math.sin(2.0 * theta)
    m1 = (ch + sh * c2) * b + sh * s2 * a
    m2 = sh * s2 * b + (ch - sh * c2) * a

    variance = eta * 0.5 * (m1 * m1 + m2 * m2) + (1.0 - eta) * 0.5
    gain_sq = (2.0 * eta * n_p * gamma_x * gamma_x) * projection * projection
    return variance / gain_sq


def chain_error_sq_slope(theta: float, u: float, delta: float, n_p: float,
                         gamma_x: float, gamma_s: float, eta: float,
                         r: float, big_r: float) -> float:
    """Same objective with the amplifier angle given as ``u = cot(phi)``.

    The homodyne angle is ``phi + delta``.  For large shear the optimal
    ``phi`` sits within the double-precision spacing of ``pi``, where
    angle arguments cannot resolve the minimum; the slope variable can.
    """
    # sin(2 phi) = 2 u / (1 + u^2), cos(2 phi) = (u^2 - 1) / (1 + u^2),
    # with phi = acot(u) in (0, pi).
    inv = 1.0 / (1.0 + u * u)
    sb2 = 2.0 * u * inv
    cb2 = (u * u - 1.0) * inv
    chb = math.cosh(big_r)
    shb = math.sinh(big_r)
    t11 = chb + shb * cb2
    t12 = shb * sb2
    t22 = chb - shb * cb2

    sphi = math.sqrt(inv)
    cphi = u * sphi
    cd = math.cos(delta)
    sd = math.sin(delta)
    hc = cphi * cd - sphi * sd
    hs = sphi * cd + cphi * sd
    projection = hc * t12 + hs * t22
    if abs(projection) <= _ZERO_GAIN_TOL:
        return math.inf

    v1 = t11 * hc + t12 * hs
    g = 2.0 * n_p * gamma_s
    b = v1 + g * projection
    a = projection

    ch = math.cosh(r)
    sh = math.sinh(r)
    c2 = math.cos(2.0 * theta)
    s2 = math.sin(2.0 * theta)
    m1 = (ch + sh * c2) * b + sh * s2 * a
    m2 = sh * s2 * b + (ch - sh * c2) * a

    variance = eta * 0.5 * (m1 * m1 + m2 * m2) + (1.0 - eta) * 0.5
    gain_sq = (2.0 * eta * n_p * gamma_x * gamma_x) * projection * projection
    return variance / gain_sq


def chain_error_sq_batch(thetas, phis, zetas, n_p: float, gamma_x: float,
                         gamma_s: float, eta: float, r: float,
                         big_r: float) -> np.ndarray:
    """Vectorized :func:`chain_error_sq` over equal-length angle arrays."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    zetas = np.asarray(zetas, dtype=float)

    chb = math.cosh(big_r)
    shb = math.sinh(big_r)
    cb2 = np.cos(2.0 * phis)
    sb2 = np.sin(2.0 * phis)
    t11 = chb + shb * cb2
    t12 = shb * sb2
    t22 = chb - shb * cb2

    hc = np.cos(zetas)
    hs = np.sin(zetas)
    projection = hc * t12 + hs * t22

    v1 = t11 * hc + t12 * hs
    g = 2.0 * n_p * gamma_s
    b = v1 + g * projection
    a = projection

    ch = math.cosh(r)
    sh = math.sinh(r)
    c2 = np.cos(2.0 * thetas)
    s2 = np.sin(2.0 * thetas)
    m1 = (ch + sh * c2) * b + sh * s2 * a
    m2 = sh * s2 * b + (ch - sh * c2) * a

    variance = eta * 0.5 * (m1 * m1 + m2 * m2) + (1.0 - eta) * 0.5
    gain_sq = (2.0 * eta * n_p * gamma_x * gamma_x) * projection * projection
    with np.errstate(divide="ignore", invalid="ignore"):
        out = variance / gain_sq
    return np.where(np.abs(projection) <= _ZERO_GAIN_TOL, np.inf, out)
