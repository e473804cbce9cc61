r"""Single-mode Gaussian primitives on the cosine/sine quadrature pair.

A state is described by a two-component mean vector and a 2x2 covariance
matrix in the convention where the vacuum quadrature variance is 1/2.
The building blocks provided here, squeezing, Kerr self-phase modulation,
homodyne projection and detection loss, are composed by
:mod:`kerrqnd.chain` into the full probe measurement chain.

Conventions:
    * Quadrature vector is ``(x_c, x_s)`` with ``[x_c, x_s] = i``,
      so a coherent state has ``cov = I/2``.
    * A probe of mean photon number ``n_p`` is displaced along the
      cosine quadrature with amplitude ``sqrt(2 n_p)``.
    * ``squeeze_matrix(r, theta)`` squeezes the quadrature at angle
      ``theta + pi/2`` and stretches the one at ``theta`` by ``e^r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Vacuum variance of a single quadrature in the chosen units.
VACUUM_VARIANCE = 0.5

# Relative slack for symmetry / uncertainty validation of covariances.
_COV_TOL = 1e-9


@dataclass(frozen=True)
class GaussianMode:
    """A single-mode Gaussian state.

    Attributes:
        mean: Quadrature mean vector, shape ``(2,)``.
        cov: Quadrature covariance matrix, shape ``(2, 2)``.  Must be
            symmetric with positive diagonal and satisfy the
            uncertainty bound ``det(cov) >= 1/4`` up to round-off.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(2)
        cov = np.asarray(self.cov, dtype=float).reshape(2, 2)
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise ValueError("mode has non-finite mean or covariance")
        scale = max(1.0, float(np.abs(cov).max()))
        if abs(cov[0, 1] - cov[1, 0]) > _COV_TOL * scale:
            raise ValueError("covariance matrix is not symmetric")
        if cov[0, 0] <= 0.0 or cov[1, 1] <= 0.0:
            raise ValueError("covariance diagonal must be positive")
        det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
        if det < 0.25 - _COV_TOL * scale * scale:
            raise ValueError(
                f"covariance violates the uncertainty bound: det = {det:.6g} < 1/4"
            )
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


def vacuum_mode() -> GaussianMode:
    """Returns the vacuum state: zero mean, covariance ``I/2``."""
    return GaussianMode(np.zeros(2), VACUUM_VARIANCE * np.eye(2))


def probe_mode(n_p: float) -> GaussianMode:
    """Returns a coherent probe of mean photon number ``n_p``.

    The displacement is along the cosine quadrature with amplitude
    ``sqrt(2 n_p)``, so ``mean @ mean / 2 == n_p``.

    Args:
        n_p: Mean photon number, must be >= 0.
    """
    if not (n_p >= 0.0 and math.isfinite(n_p)):
        raise ValueError(f"photon number must be finite and >= 0, got {n_p!r}")
    return GaussianMode(np.array([math.sqrt(2.0 * n_p), 0.0]),
                        VACUUM_VARIANCE * np.eye(2))


def squeeze_matrix(r: float, theta: float) -> np.ndarray:
    r"""Symplectic matrix of a single-mode squeezer.

    The returned matrix is

    .. math::

        S(r, \theta) = \begin{pmatrix}
            \cosh r + \sinh r \cos 2\theta & \sinh r \sin 2\theta \\
            \sinh r \sin 2\theta & \cosh r - \sinh r \cos 2\theta
        \end{pmatrix}

    which stretches the quadrature at angle ``theta`` by ``e^r`` and
    shrinks the orthogonal one by ``e^-r``.  It satisfies the
    composition rule ``S(r, t) @ S(r, t) == S(2 r, t)``.

    Args:
        r: Squeeze parameter, any real number (negative swaps the
            stretched and squeezed directions).
        theta: Orientation of the stretched axis in radians.

    Returns:
        The 2x2 symplectic matrix as an ndarray.
    """
    ch = math.cosh(r)
    sh = math.sinh(r)
    c2 = math.cos(2.0 * theta)
    s2 = math.sin(2.0 * theta)
    return np.array([[ch + sh * c2, sh * s2],
                     [sh * s2, ch - sh * c2]])


def spm_matrix(n_p: float, gamma_s: float) -> np.ndarray:
    """Linearized self-phase modulation of a bright probe.

    In the frame rotated to the probe mean field, Kerr self-phase
    modulation shears the sine quadrature by the cosine one:

        ``[[1, 0], [2 n_p gamma_s, 1]]``

    Args:
        n_p: Probe mean photon number.
        gamma_s: Self-phase modulation coefficient (phase per photon).

    Returns:
        The 2x2 shear matrix as an ndarray.
    """
    return np.array([[1.0, 0.0], [2.0 * n_p * gamma_s, 1.0]])


def homodyne_vector(zeta: float) -> np.ndarray:
    """Unit vector of the quadrature measured by a homodyne at angle ``zeta``."""
    return np.array([math.cos(zeta), math.sin(zeta)])


def propagate(mode: GaussianMode, matrix: np.ndarray) -> GaussianMode:
    """Pushes a Gaussian state through a linear symplectic map.

    The mean transforms as ``M @ mean`` and the covariance as
    ``M @ cov @ M.T`` (symmetrized against round-off).

    Args:
        mode: Input state.
        matrix: 2x2 transformation matrix; must be finite.

    Returns:
        The transformed state.

    Raises:
        ValueError: If the matrix has the wrong shape or non-finite
            entries, or the output violates state validation.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise ValueError("transformation must be a finite 2x2 matrix")
    cov = m @ mode.cov @ m.T
    return GaussianMode(m @ mode.mean, 0.5 * (cov + cov.T))


def projected_variance(mode: GaussianMode, direction: np.ndarray) -> float:
    """Variance of the quadrature along a unit direction, ``h^T cov h``."""
    h = np.asarray(direction, dtype=float).reshape(2)
    return float(h @ mode.cov @ h)


def apply_loss_quadrature(variance: float, eta: float) -> float:
    """Quadrature variance after a beam-splitter loss channel.

    A detector of efficiency ``eta`` mixes the signal with vacuum:

        ``eta * variance + (1 - eta) / 2``

    Args:
        variance: Input quadrature variance, must be >= 0.
        eta: Detection efficiency in ``(0, 1]``.

    Returns:
        The detected quadrature variance.
    """
    if not (variance >= 0.0 and math.isfinite(variance)):
        raise ValueError(f"variance must be finite and >= 0, got {variance!r}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"efficiency must be in (0, 1], got {eta!r}")
    return eta * variance + (1.0 - eta) * VACUUM_VARIANCE


def db_to_factor(db: float) -> float:
    """Converts a decibel value to a linear power factor, ``10^(db/10)``."""
    return 10.0 ** (db / 10.0)


def factor_to_db(factor: float) -> float:
    """Converts a linear power factor to decibels, ``10 log10(factor)``."""
    if not (factor > 0.0 and math.isfinite(factor)):
        raise ValueError(f"factor must be finite and > 0, got {factor!r}")
    return 10.0 * math.log10(factor)


def squeeze_parameter_from_db(db: float) -> float:
    """Squeeze parameter ``r`` for a quoted noise-reduction level in dB.

    A squeezer quoted at ``db`` reduces the squeezed quadrature variance
    by ``10^(db/10) = e^(2r)``, so ``r = db ln(10) / 20``.
    """
    return 0.5 * math.log(db_to_factor(db))
