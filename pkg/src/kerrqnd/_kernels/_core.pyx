# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled backend for the chain-error objective.

Keeps the arithmetic step for step identical to the pure-Python
fallback: the measured direction is pulled back through the chain
adjoints so the self-phase shear enters linearly, never squared.
"""

from libc.math cimport cos, sin, cosh, sinh, sqrt, fabs, INFINITY

import numpy as np

cdef double _ZERO_GAIN_TOL = 1e-14


cdef double _chain_error_sq(double theta, double phi, double zeta,
                            double n_p, double gamma_x, double gamma_s,
                            double eta, double r, double big_r) nogil:
    cdef double chb = cosh(big_r)
    cdef double shb = sinh(big_r)
    cdef double cb2 = cos(2.0 * phi)
    cdef double sb2 = sin(2.0 * phi)
    cdef double t11 = chb + shb * cb2
    cdef double t12 = shb * sb2
    cdef double t22 = chb - shb * cb2

    cdef double hc = cos(zeta)
    cdef double hs = sin(zeta)
    cdef double projection = hc * t12 + hs * t22
    if fabs(projection) <= _ZERO_GAIN_TOL:
        return INFINITY

    cdef double v1 = t11 * hc + t12 * hs
    cdef double v2 = projection

    cdef double g = 2.0 * n_p * gamma_s
    cdef double b = v1 + g * v2
    cdef double a = v2

    cdef double ch = cosh(r)
    cdef double sh = sinh(r)
    cdef double c2 = cos(2.0 * theta)
    cdef double s2 = sin(2.0 * theta)
    cdef double m1 = (ch + sh * c2) * b + sh * s2 * a
    cdef double m2 = sh * s2 * b + (ch - sh * c2) * a

    cdef double variance = eta * 0.5 * (m1 * m1 + m2 * m2) + (1.0 - eta) * 0.5
    cdef double gain_sq = (2.0 * eta * n_p * gamma_x * gamma_x) \
        * projection * projection
    return variance / gain_sq


cdef double _chain_error_sq_slope(double theta, double u, double delta,
                                  double n_p, double gamma_x, double gamma_s,
                                  double eta, double r, double big_r) nogil:
    # sin(2 phi) = 2 u / (1 + u^2), cos(2 phi) = (u^2 - 1) / (1 + u^2),
    # with phi = acot(u) in (0, pi).
    cdef double inv = 1.0 / (1.0 + u * u)
    cdef double sb2 = 2.0 * u * inv
    cdef double cb2 = (u * u - 1.0) * inv
    cdef double chb = cosh(big_r)
    cdef double shb = sinh(big_r)
    cdef double t11 = chb + shb * cb2
    cdef double t12 = shb * sb2
    cdef double t22 = chb - shb * cb2

    cdef double sphi = sqrt(inv)
    cdef double cphi = u * sphi
    cdef double cd = cos(delta)
    cdef double sd = sin(delta)
    cdef double hc = cphi * cd - sphi * sd
    cdef double hs = sphi * cd + cphi * sd
    cdef double projection = hc * t12 + hs * t22
    if fabs(projection) <= _ZERO_GAIN_TOL:
        return INFINITY

    cdef double v1 = t11 * hc + t12 * hs
    cdef double g = 2.0 * n_p * gamma_s
    cdef double b = v1 + g * projection
    cdef double a = projection

    cdef double ch = cosh(r)
    cdef double sh = sinh(r)
    cdef double c2 = cos(2.0 * theta)
    cdef double s2 = sin(2.0 * theta)
    cdef double m1 = (ch + sh * c2) * b + sh * s2 * a
    cdef double m2 = sh * s2 * b + (ch - sh * c2) * a

    cdef double variance = eta * 0.5 * (m1 * m1 + m2 * m2) + (1.0 - eta) * 0.5
    cdef double gain_sq = (2.0 * eta * n_p * gamma_x * gamma_x) \
        * projection * projection
    return variance / gain_sq


def chain_error_sq(double theta, double phi, double zeta, double n_p,
                   double gamma_x, double gamma_s, double eta,
                   double r, double big_r):
    """Squared photon-number error of the chain at arbitrary angles."""
    return _chain_error_sq(theta, phi, zeta, n_p, gamma_x, gamma_s,
                           eta, r, big_r)


def chain_error_sq_slope(double theta, double u, double delta, double n_p,
                         double gamma_x, double gamma_s, double eta,
                         double r, double big_r):
    """Same objective with the amplifier angle given as ``u = cot(phi)``.

    The homodyne angle is ``phi + delta``.  For large shear the optimal
    ``phi`` sits within the double-precision spacing of ``pi``, where
    angle arguments cannot resolve the minimum; the slope variable can.
    """
    return _chain_error_sq_slope(theta, u, delta, n_p, gamma_x, gamma_s,
                                 eta, r, big_r)


def chain_error_sq_batch(thetas, phis, zetas, double n_p, double gamma_x,
                         double gamma_s, double eta, double r, double big_r):
    """Vectorized :func:`chain_error_sq` over equal-length angle arrays."""
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    cdef double[::1] ze = np.ascontiguousarray(zetas, dtype=np.float64)
    cdef Py_ssize_t n = th.shape[0]
    if ph.shape[0] != n or ze.shape[0] != n:
        raise ValueError("angle arrays must have equal length")
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            out[i] = _chain_error_sq(th[i], ph[i], ze[i], n_p, gamma_x,
                                     gamma_s, eta, r, big_r)
    return out_arr
