"""Tests for signal-path loss propagation."""

import numpy as np
import pytest

from kerrqnd import signal_loss


def test_apply_input_loss_example():
    n_s, var = signal_loss.apply_input_loss(100.0, 0.0, 0.8)
    assert n_s == pytest.approx(80.0, rel=1e-15)
    assert var == pytest.approx(16.0, rel=1e-15)


def test_apply_input_loss_lossless():
    assert signal_loss.apply_input_loss(50.0, 7.0, 1.0) == (50.0, 7.0)


def test_thinning_composes():
    # Loss mu1 followed by mu2 equals a single loss of mu1 mu2.
    rng = np.random.default_rng(61)
    for _ in range(100):
        n = rng.uniform(1.0, 1e6)
        var = rng.uniform(0.0, n)
        mu1 = rng.uniform(0.1, 1.0)
        mu2 = rng.uniform(0.1, 1.0)
        step1 = signal_loss.apply_input_loss(n, var, mu1)
        step2 = signal_loss.apply_input_loss(*step1, mu2)
        direct = signal_loss.apply_input_loss(n, var, mu1 * mu2)
        assert step2[0] == pytest.approx(direct[0], rel=1e-12)
        assert step2[1] == pytest.approx(direct[1], rel=1e-12)


def test_measurement_error_with_input_loss_example():
    got = signal_loss.measurement_error_with_input_loss(80.0, 62.0, 0.8)
    assert got == pytest.approx(116.875, rel=1e-15)


def test_sub_sql_boundary_at_half():
    # Even a perfect measurement beats the incident-beam shot noise
    # only for mu > 1/2.
    n = 1e4
    below = signal_loss.measurement_error_with_input_loss(n, 0.0, 0.5 - 1e-6)
    above = signal_loss.measurement_error_with_input_loss(n, 0.0, 0.5 + 1e-6)
    assert below > n
    assert above < n


def test_prepared_state_moments():
    n_prep, var_prep = signal_loss.prepared_state(100.0, 10.0, 0.8)
    assert n_prep == pytest.approx(80.0, rel=1e-15)
    assert var_prep == pytest.approx(0.64 * 10.0 + 16.0, rel=1e-15)


def test_prepared_state_sub_poissonian_iff_good_measurement():
    rng = np.random.default_rng(62)
    for _ in range(100):
        n = rng.uniform(1.0, 1e4)
        mu = rng.uniform(0.05, 0.999)
        good = rng.uniform(0.0, 0.999) * n
        bad = n * rng.uniform(1.001, 10.0)
        assert signal_loss.is_sub_poissonian(
            *signal_loss.prepared_state(n, good, mu))
        assert not signal_loss.is_sub_poissonian(
            *signal_loss.prepared_state(n, bad, mu))


def test_is_sub_poissonian_boundary():
    assert not signal_loss.is_sub_poissonian(10.0, 10.0)
    assert signal_loss.is_sub_poissonian(10.0, 9.999)
    with pytest.raises(ValueError):
        signal_loss.is_sub_poissonian(0.0, 1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        signal_loss.SignalLossConfig(mu=0.0, n_s=10.0)
    with pytest.raises(ValueError):
        signal_loss.SignalLossConfig(mu=1.5, n_s=10.0)
    with pytest.raises(ValueError):
        signal_loss.SignalLossConfig(mu=0.9, n_s=-1.0)
    cfg = signal_loss.SignalLossConfig(mu=0.9, n_s=10.0, var_in=2.0)
    assert cfg.var_in == 2.0


def test_argument_validation():
    with pytest.raises(ValueError):
        signal_loss.apply_input_loss(-1.0, 0.0, 0.9)
    with pytest.raises(ValueError):
        signal_loss.measurement_error_with_input_loss(10.0, -1.0, 0.9)
    with pytest.raises(ValueError):
        signal_loss.prepared_state(10.0, 1.0, 0.0)
