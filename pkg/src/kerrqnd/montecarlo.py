"""Monte-Carlo sampler for the measurement chain.

Independent statistical check of the analytic and covariance results:
draws the probe quadrature fluctuations, pushes each sample through
the squeeze / shear / amplify / homodyne pipeline, forms the linear
photon-number estimator and compares its spread and response slope
with the deterministic predictions.

Reproducibility: samples are generated in fixed-size chunks, each
from its own counter-derived substream, and chunk statistics are
merged in chunk order.  The report is therefore bit-identical for a
given ``(seed, n_samples, chain)`` regardless of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import chain as chain_mod
from . import gaussian

# Samples per substream chunk; fixed so that threading cannot change
# which generator produces which sample.
_CHUNK = 1 << 16


@dataclass(frozen=True)
class McConfig:
    """Sampler configuration.

    Attributes:
        seed: Base seed (64-bit unsigned).
        n_samples: Number of samples, >= 1.
        injected_dns: Standard deviation of the injected signal
            photon-number fluctuation; 0 disables injection (the gain
            slope is then undefined and reported as nan).
        chain: Chain parameters to sample.
    """

    seed: int
    n_samples: int
    injected_dns: float
    chain: chain_mod.ChainConfig

    def __post_init__(self):
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, "
                             f"got {self.seed!r}")
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise ValueError(f"n_samples must be an integer >= 1, "
                             f"got {self.n_samples!r}")
        if not (self.injected_dns >= 0.0 and math.isfinite(self.injected_dns)):
            raise ValueError(f"injected_dns must be finite and >= 0, "
                             f"got {self.injected_dns!r}")


@dataclass(frozen=True)
class McReport:
    """Sampler output.

    Attributes:
        empirical_gain: Least-squares slope of the homodyne signal
            against the injected fluctuation (nan without injection).
        empirical_dns: Sample standard deviation of the estimator
            error, in photons.
        stderr_dns: Standard error of ``empirical_dns``
            (``empirical_dns / sqrt(2 n)`` for Gaussian data).
        n_samples: Number of samples used.
    """

    empirical_gain: float
    empirical_dns: float
    stderr_dns: float
    n_samples: int


def seeded_stream(seed: int, stream_id: int) -> np.random.Generator:
    """Deterministic, non-overlapping random substream.

    Streams with different ``stream_id`` under the same ``seed`` are
    statistically independent; the same pair always yields the same
    generator state.
    """
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(stream_id,))
    return np.random.Generator(np.random.PCG64(seq))


def _chunk_moments(cfg: McConfig, chunk_id: int, count: int,
                   noise_cos: float, noise_sin: float, loss_amp: float,
                   gain: float) -> np.ndarray:
    """Accumulates raw sums for one substream chunk.

    Returns ``[n, sum_e, sum_e2, sum_delta, sum_delta2, sum_d,
    sum_delta_d]`` where ``e`` is the estimator error and ``d`` the
    homodyne outcome.
    """
    rng = seeded_stream(cfg.seed, chunk_id)
    draws = rng.standard_normal((count, 4))
    quad_scale = math.sqrt(gaussian.VACUUM_VARIANCE)
    z_cos = draws[:, 0] * quad_scale
    z_sin = draws[:, 1] * quad_scale
    y_loss = draws[:, 2] * quad_scale
    delta = draws[:, 3] * cfg.injected_dns

    eta = cfg.chain.eta
    d0 = (math.sqrt(eta) * (noise_cos * z_cos + noise_sin * z_sin)
          + loss_amp * y_loss)
    d = d0 + gain * delta
    err = d0 / gain
    return np.array([
        float(count),
        float(err.sum()),
        float((err * err).sum()),
        float(delta.sum()),
        float((delta * delta).sum()),
        float(d.sum()),
        float((delta * d).sum()),
    ])


def run(cfg: McConfig, threads: int = 1) -> McReport:
    """Samples the chain and reports empirical error and gain.

    Args:
        cfg: Sampler configuration.
        threads: Worker threads for chunk evaluation; has no effect on
            the result, only on wall time.

    Raises:
        ZeroGainError: If the configured homodyne direction is blind
            to the signal (via the deterministic chain evaluation).
    """
    # Raises ZeroGainError on a blind configuration before any sampling.
    deterministic = chain_mod.measurement_error(cfg.chain)
    gain = deterministic.gain

    c = cfg.chain
    row = gaussian.homodyne_vector(c.zeta) @ chain_mod.transfer_matrix(c)
    noise_cos, noise_sin = float(row[0]), float(row[1])
    loss_amp = math.sqrt(1.0 - c.eta)

    n = cfg.n_samples
    chunks = [(i, min(_CHUNK, n - i * _CHUNK))
              for i in range((n + _CHUNK - 1) // _CHUNK)]

    def work(spec):
        chunk_id, count = spec
        return _chunk_moments(cfg, chunk_id, count, noise_cos, noise_sin,
                              loss_amp, gain)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(spec) for spec in chunks]

    # Merge in chunk order so the result is independent of scheduling.
    totals = parts[0].copy()
    for part in parts[1:]:
        totals += part
    (count, sum_e, sum_e2, sum_delta, sum_delta2,
     sum_d, sum_delta_d) = totals

    if count > 1:
        var_e = (sum_e2 - sum_e * sum_e / count) / (count - 1.0)
    else:
        var_e = 0.0
    empirical_dns = math.sqrt(max(var_e, 0.0))

    if cfg.injected_dns > 0.0 and count > 1:
        delta_ss = sum_delta2 - sum_delta * sum_delta / count
        empirical_gain = (sum_delta_d - sum_delta * sum_d / count) / delta_ss
    else:
        empirical_gain = math.nan

    return McReport(
        empirical_gain=empirical_gain,
        empirical_dns=empirical_dns,
        stderr_dns=empirical_dns / math.sqrt(2.0 * count),
        n_samples=n,
    )
