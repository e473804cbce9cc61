"""Acceptance gate: one test per release criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line with the measured
worst deviation and runtime (run with ``pytest -s`` to see them for
passing tests), then asserts.  Tolerances and runtime budgets are part
of the criterion, so a slow pass is a fail.
"""

import math
import time
from pathlib import Path

import numpy as np

from kerrqnd import (analytic, chain, cli, montecarlo, optimize, resonator,
                     signal_loss, sweep, thresholds)
from kerrqnd.gaussian import squeeze_parameter_from_db

_DATA = Path(__file__).resolve().parent / "data"
_GAMMA_X = 0.85e-5
_GAMMA_S = 0.425e-5
_ETA = 0.9
_R10 = squeeze_parameter_from_db(10.0)
_R40 = squeeze_parameter_from_db(40.0)


def _report(num: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    print(line, flush=True)
    assert ok, line


def _rel(value: float, want: float) -> float:
    return abs(value - want) / abs(want)


def test_criterion_01_coherent_reduction():
    start = time.perf_counter()
    worst = 0.0
    for eta in (0.5, 0.9, 0.99):
        for n_p in np.logspace(4.0, 8.0, 7):
            squeezed = analytic.squeezed_error_sq(
                float(n_p), _GAMMA_X, _GAMMA_S, eta, 0.0, 0.0)
            coherent = analytic.coherent_error_sq(
                float(n_p), _GAMMA_X, _GAMMA_S, eta)
            worst = max(worst, _rel(squeezed, coherent))
    elapsed = time.perf_counter() - start
    _report(1, worst <= 1e-12 and elapsed < 1.0,
            f"r=R=0 reduces to the coherent formula, worst rel dev "
            f"{worst:.2e} (limit 1e-12), {elapsed:.2f} s (budget 1 s)")


def _random_params(rng, big_r_low=0.0):
    gamma_s = 10.0 ** rng.uniform(-7.0, -4.0)
    return dict(gamma_x=2.0 * gamma_s, gamma_s=gamma_s,
                eta=rng.uniform(0.5, 1.0), r=rng.uniform(0.0, 2.5),
                big_r=rng.uniform(big_r_low, 5.0),
                n_p=10.0 ** rng.uniform(3.0, 9.0))


def test_criterion_02_chain_matches_closed_form():
    rng = np.random.default_rng(20220202)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        p = _random_params(rng)
        n_p = p.pop("n_p")
        config = analytic.optimal_config(n_p=n_p, **p)
        got = chain.measurement_error(config).delta_ns
        want = math.sqrt(analytic.squeezed_error_sq(
            n_p, p["gamma_x"], p["gamma_s"], p["eta"], p["r"], p["big_r"]))
        worst = max(worst, _rel(got, want))
    elapsed = time.perf_counter() - start
    _report(2, worst <= 1e-9 and elapsed < 5.0,
            f"covariance chain at optimal angles vs closed form, 1000 "
            f"configs, worst rel dev {worst:.2e} (limit 1e-9), "
            f"{elapsed:.2f} s (budget 5 s)")


def test_criterion_03_optimizer_oracle():
    rng = np.random.default_rng(20220303)
    start = time.perf_counter()
    worst = 0.0
    slack_violation = -math.inf
    for _ in range(200):
        p = _random_params(rng, big_r_low=1.0)
        n_p = p.pop("n_p")
        config = analytic.optimal_config(n_p=n_p, **p)
        result = optimize.minimize_angles(config)
        want = analytic.squeezed_error_sq(
            n_p, p["gamma_x"], p["gamma_s"], p["eta"], p["r"], p["big_r"])
        worst = max(worst, _rel(result.best_value, want))
        # One-sided check: the numeric minimum may never undercut the
        # analytic one beyond rounding slack.
        slack_violation = max(
            slack_violation,
            (want - result.best_value) - 1e-9 * (1.0 + abs(want)))
    elapsed = time.perf_counter() - start
    _report(3, worst <= 1e-6 and slack_violation <= 0.0 and elapsed < 120.0,
            f"minimize_angles vs closed form, 200 configs with R >= 1, "
            f"worst rel dev {worst:.2e} (limit 1e-6), undercut slack "
            f"margin {slack_violation:.2e} (limit 0), {elapsed:.1f} s "
            f"(budget 120 s)")


def test_criterion_04_optimal_probe_power():
    rng = np.random.default_rng(20220404)
    start = time.perf_counter()
    worst_identity = 0.0
    for _ in range(200):
        p = _random_params(rng)
        p.pop("n_p")
        if p["eta"] >= 1.0 or p["gamma_s"] <= 0.0:
            continue
        np_opt = analytic.optimal_probe_photons(
            p["gamma_s"], p["eta"], p["r"], p["big_r"])
        at_opt = analytic.squeezed_error_sq(
            np_opt, p["gamma_x"], p["gamma_s"], p["eta"], p["r"], p["big_r"])
        floor = analytic.squeezed_error_sq_min(
            p["gamma_x"], p["gamma_s"], p["eta"], p["r"], p["big_r"])
        worst_identity = max(worst_identity, _rel(at_opt, floor))

    worst_argmin = 0.0
    cases = [dict(gamma_x=_GAMMA_X, gamma_s=_GAMMA_S, eta=_ETA,
                  r=_R10, big_r=_R40)]
    for _ in range(2):
        p = _random_params(rng)
        p.pop("n_p")
        cases.append(p)
    for p in cases:
        config = analytic.optimal_config(n_p=1e6, **p)
        found = optimize.minimize_np(config).best_params[3]
        np_opt = analytic.optimal_probe_photons(
            p["gamma_s"], p["eta"], p["r"], p["big_r"])
        worst_argmin = max(worst_argmin, _rel(found, np_opt))
    elapsed = time.perf_counter() - start
    _report(4, worst_identity <= 1e-12 and worst_argmin <= 1e-4
            and elapsed < 10.0,
            f"error at np_opt vs closed-form minimum, worst rel dev "
            f"{worst_identity:.2e} (limit 1e-12); golden-section argmin "
            f"vs np_opt, worst rel dev {worst_argmin:.2e} (limit 1e-4), "
            f"{elapsed:.1f} s (budget 10 s)")


def test_criterion_05_headline_numbers():
    baseline = math.sqrt(analytic.coherent_error_sq_min(
        _GAMMA_X, _GAMMA_S, _ETA))
    full = math.sqrt(analytic.squeezed_error_sq_min(
        _GAMMA_X, _GAMMA_S, _ETA, _R10, _R40))
    np_opt = analytic.optimal_probe_photons(_GAMMA_S, _ETA, _R10, _R40)
    ratio = baseline / full
    ok = (abs(baseline - 140.0) <= 0.5
          and abs(full - 7.88) <= 0.05
          and _rel(np_opt, 1.116e7) <= 5e-3
          and abs(ratio - 17.78) <= 0.1)
    _report(5, ok,
            f"baseline error {baseline:.4f} (140.0 +/- 0.5), squeezed "
            f"{full:.4f} (7.88 +/- 0.05) at n_p {np_opt:.4e} "
            f"(1.116e7 +/- 0.5%), improvement ratio {ratio:.4f} "
            f"(17.78 +/- 0.1)")


def test_criterion_06_monte_carlo():
    start = time.perf_counter()
    config = analytic.optimal_config(_GAMMA_X, _GAMMA_S, _ETA, _R10, _R40)
    expected = chain.measurement_error(config)
    mc_config = montecarlo.McConfig(seed=42, n_samples=1_000_000,
                                    injected_dns=10.0, chain=config)
    report = montecarlo.run(mc_config)
    z_dns = abs(report.empirical_dns - expected.delta_ns) / report.stderr_dns
    stderr_gain = (abs(expected.gain) * expected.delta_ns
                   / (math.sqrt(report.n_samples) * mc_config.injected_dns))
    z_gain = abs(report.empirical_gain - expected.gain) / stderr_gain
    again = montecarlo.run(mc_config, threads=4)
    elapsed = time.perf_counter() - start
    _report(6, z_dns <= 3.0 and z_gain <= 3.0 and again == report
            and elapsed < 30.0,
            f"1e6 samples at the 10 dB / 40 dB optimum: error "
            f"{report.empirical_dns:.4f} vs {expected.delta_ns:.4f} "
            f"({z_dns:.2f} sigma, limit 3), gain slope {z_gain:.2f} sigma "
            f"(limit 3), deterministic per seed: {again == report}, "
            f"{elapsed:.1f} s (budget 30 s)")


def test_criterion_07_variance_closed_form():
    rng = np.random.default_rng(20220707)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        p = _random_params(rng)
        config = chain.ChainConfig(
            n_p=p["n_p"], gamma_x=p["gamma_x"], gamma_s=p["gamma_s"],
            eta=p["eta"], r=p["r"], big_r=p["big_r"],
            theta=rng.uniform(0.0, math.pi), phi=rng.uniform(0.0, math.pi),
            zeta=rng.uniform(0.0, math.pi))
        got = chain.noise_variance(config)
        want = analytic.noise_variance_closed_form(config)
        worst = max(worst, _rel(got, want))
    elapsed = time.perf_counter() - start
    _report(7, worst <= 1e-9 and elapsed < 5.0,
            f"propagated vs closed-form variance, 1000 random configs, "
            f"worst rel dev {worst:.2e} (limit 1e-9), {elapsed:.2f} s "
            f"(budget 5 s)")


def test_criterion_08_input_loss_properties():
    rng = np.random.default_rng(20220808)
    worst = 0.0
    for _ in range(100):
        n = 10.0 ** rng.uniform(0.0, 6.0)
        var = n * rng.uniform(0.0, 2.0)
        mu1, mu2 = rng.uniform(0.1, 1.0, size=2)
        stepped = signal_loss.apply_input_loss(
            *signal_loss.apply_input_loss(n, var, mu1), mu2)
        direct = signal_loss.apply_input_loss(n, var, mu1 * mu2)
        worst = max(worst, _rel(stepped[0], direct[0]),
                    abs(stepped[1] - direct[1]) / max(1.0, abs(direct[1])))
    composition_ok = worst <= 1e-12

    n = 1e4
    below = signal_loss.measurement_error_with_input_loss(n, 0.0, 0.5 - 1e-6)
    above = signal_loss.measurement_error_with_input_loss(n, 0.0, 0.5 + 1e-6)
    boundary_ok = below > n and above < n

    preserved = True
    for _ in range(100):
        n_s = 10.0 ** rng.uniform(0.0, 6.0)
        err_sq = n_s * rng.uniform(0.0, 1.0)  # sub-Poissonian resolution
        mu = rng.uniform(0.05, 1.0)
        preserved &= signal_loss.is_sub_poissonian(
            *signal_loss.prepared_state(n_s, err_sq, mu))
    _report(8, composition_ok and boundary_ok and preserved,
            f"thinning composition worst dev {worst:.2e} (limit 1e-12); "
            f"sub-shot-noise boundary at mu = 1/2 (below {below:.2f} > "
            f"{n:.0f} > above {above:.2f}); sub-Poissonian preservation "
            f"on 100 random points: {preserved}")


def test_criterion_09_non_gaussian_values():
    ns_star = thresholds.margin_peak_ns(0.9)
    margin_max = thresholds.non_gaussian_margin(ns_star, 0.9)
    report = thresholds.single_photon_check(1.0, 0.9)
    ok = (abs(ns_star - 8000.0 / 27.0) <= 1e-6
          and abs(margin_max - 400.0 / 27.0) <= 1e-6
          and f"{ns_star:.2f}" == "296.30" and f"{margin_max:.2f}" == "14.81"
          and report.single_photon_feasible
          and 2.0 <= report.single_photon_ns_limit <= 50.0)
    _report(9, ok,
            f"ns_star(0.9) = {ns_star:.6f} (8000/27 +/- 1e-6), margin max "
            f"{margin_max:.6f} (400/27 +/- 1e-6), single-photon minimal "
            f"n_s {report.single_photon_ns_limit:.2f} (accepted [2, 50])")


def test_criterion_10_resonator_preset():
    spec = resonator.default_spec()
    gamma_x, gamma_s = resonator.kerr_phase_factors(spec)
    check = resonator.loading_check(spec, _ETA)
    ok = (_rel(gamma_x, _GAMMA_X) <= 0.01 and gamma_s == gamma_x / 2.0
          and check.verdict == "PASS")
    _report(10, ok,
            f"shipped preset gives gamma_x = {gamma_x:.4e} "
            f"({_rel(gamma_x, _GAMMA_X) * 100:.2f}% from 0.85e-5, limit "
            f"1%), loading check {check.verdict}")


def test_criterion_11_cli_golden_files(tmp_path, capsys):
    start = time.perf_counter()
    worst = 0.0
    roundtrip_ok = True
    for preset, name in (("probe-power", "probe_power"),
                         ("amplification", "amplification")):
        out = tmp_path / name
        code = cli.main(["sweep", "--preset", preset, "--out", str(out)])
        assert code == 0
        axis_name, axis, labels, columns = sweep.read_csv(
            out / f"{name}.csv")
        g_name, g_axis, g_labels, g_columns = sweep.read_csv(
            _DATA / f"{name}.csv")
        assert (axis_name, labels) == (g_name, g_labels)
        worst = max(worst, float(np.max(np.abs(axis - g_axis)
                                        / np.abs(g_axis + (g_axis == 0.0)))))
        worst = max(worst, float(np.max(np.abs(columns - g_columns)
                                        / np.abs(g_columns))))
        # Bit-exact CSV round trip against a fresh in-memory run.
        result = sweep.run_sweep(cli._PRESETS[preset]())
        roundtrip_ok &= bool(np.array_equal(columns, result.errors)
                             and np.array_equal(axis, result.axis_values))

    codes = (
        cli.main(["error"]),
        cli.main(["sweep"]),
        cli.main(["error", "--eta", "1"]),
        cli.main(["error", "--config", str(tmp_path / "missing.json")]),
    )
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    _report(11, worst <= 1e-9 and roundtrip_ok and codes == (0, 2, 3, 4)
            and elapsed < 60.0,
            f"preset CSVs vs goldens, worst rel dev {worst:.2e} (limit "
            f"1e-9); round trip bit-exact: {roundtrip_ok}; exit codes "
            f"{codes} (want (0, 2, 3, 4)), {elapsed:.1f} s (budget 60 s)")
