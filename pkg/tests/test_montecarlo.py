"""Tests for the Monte-Carlo sampler and its reproducibility."""

import math

import numpy as np
import pytest

from kerrqnd import analytic, chain, montecarlo
from kerrqnd.errors import ZeroGainError
from kerrqnd.gaussian import squeeze_parameter_from_db

R_10DB = squeeze_parameter_from_db(10.0)
R_40DB = squeeze_parameter_from_db(40.0)


def _optimum_config():
    return analytic.optimal_config(0.85e-5, 0.425e-5, 0.9, R_10DB, R_40DB)


def test_seeded_stream_reproducible():
    a = montecarlo.seeded_stream(123, 0).standard_normal(8)
    b = montecarlo.seeded_stream(123, 0).standard_normal(8)
    np.testing.assert_array_equal(a, b)


def test_seeded_streams_distinct():
    a = montecarlo.seeded_stream(123, 0).standard_normal(8)
    b = montecarlo.seeded_stream(123, 1).standard_normal(8)
    c = montecarlo.seeded_stream(124, 0).standard_normal(8)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_streams_uncorrelated():
    n = 100_000
    a = montecarlo.seeded_stream(7, 0).standard_normal(n)
    b = montecarlo.seeded_stream(7, 1).standard_normal(n)
    rho = np.corrcoef(a, b)[0, 1]
    assert abs(rho) < 4.0 / math.sqrt(n)


def test_config_validation():
    cfg = _optimum_config()
    with pytest.raises(ValueError):
        montecarlo.McConfig(seed=-1, n_samples=10, injected_dns=1.0,
                            chain=cfg)
    with pytest.raises(ValueError):
        montecarlo.McConfig(seed=2 ** 64, n_samples=10, injected_dns=1.0,
                            chain=cfg)
    with pytest.raises(ValueError):
        montecarlo.McConfig(seed=1, n_samples=0, injected_dns=1.0, chain=cfg)
    with pytest.raises(ValueError):
        montecarlo.McConfig(seed=1, n_samples=10, injected_dns=-1.0,
                            chain=cfg)


def test_run_matches_deterministic_prediction():
    cfg = montecarlo.McConfig(seed=1234, n_samples=200_000,
                              injected_dns=10.0, chain=_optimum_config())
    report = montecarlo.run(cfg)
    expected = chain.measurement_error(cfg.chain)
    z = (report.empirical_dns - expected.delta_ns) / report.stderr_dns
    assert abs(z) < 4.0
    gain_stderr = (abs(expected.gain) * expected.delta_ns
                   / (math.sqrt(cfg.n_samples) * cfg.injected_dns))
    assert abs(report.empirical_gain - expected.gain) < 4.0 * gain_stderr


def test_run_thread_invariant():
    cfg = montecarlo.McConfig(seed=99, n_samples=150_000, injected_dns=5.0,
                              chain=_optimum_config())
    serial = montecarlo.run(cfg, threads=1)
    parallel = montecarlo.run(cfg, threads=4)
    assert serial.empirical_dns == parallel.empirical_dns
    assert serial.empirical_gain == parallel.empirical_gain
    assert serial.stderr_dns == parallel.stderr_dns


def test_run_seed_reproducible():
    cfg = montecarlo.McConfig(seed=7, n_samples=50_000, injected_dns=5.0,
                              chain=_optimum_config())
    first = montecarlo.run(cfg)
    second = montecarlo.run(cfg)
    assert first == second
    other = montecarlo.run(montecarlo.McConfig(
        seed=8, n_samples=50_000, injected_dns=5.0, chain=_optimum_config()))
    assert other.empirical_dns != first.empirical_dns


def test_run_without_injection():
    cfg = montecarlo.McConfig(seed=5, n_samples=20_000, injected_dns=0.0,
                              chain=_optimum_config())
    report = montecarlo.run(cfg)
    assert math.isnan(report.empirical_gain)
    assert report.empirical_dns > 0.0


def test_run_single_sample():
    cfg = montecarlo.McConfig(seed=5, n_samples=1, injected_dns=1.0,
                              chain=_optimum_config())
    report = montecarlo.run(cfg)
    assert report.empirical_dns == 0.0
    assert report.n_samples == 1


def test_run_blind_configuration_raises():
    blind = _optimum_config().replace(big_r=0.0, phi=0.0, zeta=0.0)
    cfg = montecarlo.McConfig(seed=5, n_samples=10, injected_dns=1.0,
                              chain=blind)
    with pytest.raises(ZeroGainError):
        montecarlo.run(cfg)


def test_agreement_across_random_configs():
    # Statistical invariant: over 20 random configurations at 1e5
    # samples each, at most 2 may land outside 3 standard errors.
    rng = np.random.default_rng(81)
    failures = 0
    for index in range(20):
        g_s = 10 ** rng.uniform(-6, -4)
        cfg_chain = analytic.optimal_config(
            2 * g_s, g_s, rng.uniform(0.6, 0.95),
            rng.uniform(0, 1.5), rng.uniform(0, 3.5))
        cfg = montecarlo.McConfig(seed=1000 + index, n_samples=100_000,
                                  injected_dns=3.0, chain=cfg_chain)
        report = montecarlo.run(cfg)
        expected = chain.measurement_error(cfg_chain)
        z = (report.empirical_dns - expected.delta_ns) / report.stderr_dns
        if abs(z) > 3.0:
            failures += 1
    assert failures <= 2
