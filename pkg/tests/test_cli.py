"""End-to-end tests for the command-line interface.

Covers the exit-code contract (0 success, 2 config error, 3 numeric
failure, 4 I/O error), flag/file precedence, and the emitted files.
"""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from kerrqnd import cli, sweep


def _machine_values(captured: str) -> dict:
    """Parses the key=value block at the end of a command's output."""
    values = {}
    seen = False
    for line in captured.splitlines():
        if line.startswith("# machine-readable"):
            seen = True
            continue
        if seen and " = " in line:
            key, _, value = line.partition(" = ")
            values[key.strip()] = value.strip()
    assert seen, "machine-readable block missing"
    return values


def test_error_defaults(capsys):
    assert cli.main(["error"]) == 0
    out = capsys.readouterr().out
    values = _machine_values(out)
    # Defaults: no squeezing, optimal probe power, coherent baseline.
    assert float(values["error.analytic"]) == pytest.approx(
        140.02800840280098, rel=1e-12)
    assert float(values["error.chain"]) == pytest.approx(
        140.02800840280098, rel=1e-9)
    assert "(optimal)" in out


def test_error_with_squeezing_flags(capsys):
    code = cli.main(["error", "--squeeze-db", "10",
                     "--amplification-db", "40"])
    assert code == 0
    values = _machine_values(capsys.readouterr().out)
    assert float(values["error.analytic"]) == pytest.approx(
        7.874353580899644, rel=1e-12)
    assert float(values["n_p"]) == pytest.approx(11162220.085951209,
                                                 rel=1e-12)


def test_error_explicit_probe_power(capsys):
    assert cli.main(["error", "--n-p", "1000000"]) == 0
    values = _machine_values(capsys.readouterr().out)
    assert float(values["n_p"]) == 1e6


def test_error_with_optimizer(capsys):
    code = cli.main(["error", "--n-p", "1000000", "--optimize"])
    assert code == 0
    values = _machine_values(capsys.readouterr().out)
    assert float(values["error.optimizer"]) == pytest.approx(
        float(values["error.analytic"]), rel=1e-6)
    assert values["optimizer.converged"] == "true"


def test_flags_override_config_file(tmp_path, capsys):
    config = tmp_path / "chain.json"
    config.write_text(json.dumps({
        "eta": 0.8, "squeeze_db": 10.0, "amplification_db": 40.0,
    }), encoding="utf-8")
    assert cli.main(["error", "--config", str(config), "--eta", "0.9"]) == 0
    values = _machine_values(capsys.readouterr().out)
    # eta from the flag, squeezing from the file.
    assert float(values["error.analytic"]) == pytest.approx(
        7.874353580899644, rel=1e-12)


def test_error_writes_output_file(tmp_path, capsys):
    assert cli.main(["error", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    text = (tmp_path / "error.txt").read_text(encoding="utf-8")
    assert "error.analytic = " in text


def test_bad_json_is_config_error(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text("{not json", encoding="utf-8")
    assert cli.main(["error", "--config", str(config)]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_key_is_config_error(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"bogus": 1}), encoding="utf-8")
    assert cli.main(["error", "--config", str(config)]) == 2


def test_wrong_type_is_config_error(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"eta": "high"}), encoding="utf-8")
    assert cli.main(["error", "--config", str(config)]) == 2


def test_missing_config_is_io_error(tmp_path, capsys):
    assert cli.main(["error", "--config", str(tmp_path / "nope.json")]) == 4
    assert "I/O error" in capsys.readouterr().err


def test_lossless_detection_is_numeric_failure(capsys):
    # eta = 1 with n_p = "optimal" has no finite optimum.
    assert cli.main(["error", "--eta", "1"]) == 3
    err = capsys.readouterr().err
    assert "numeric failure" in err
    assert "n_p" in err  # actionable hint


def test_blind_angles_is_numeric_failure(tmp_path, capsys):
    config = tmp_path / "blind.json"
    config.write_text(json.dumps({
        "n_p": 1e6,
        "angles": {"theta": 0.0, "phi": 0.0, "zeta": 0.0},
    }), encoding="utf-8")
    assert cli.main(["error", "--config", str(config)]) == 3


def test_sweep_preset_probe_power(tmp_path, capsys):
    code = cli.main(["sweep", "--preset", "probe-power",
                     "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "per-scenario minima" in out
    axis_name, axis, labels, columns = sweep.read_csv(
        tmp_path / "probe_power.csv")
    assert axis_name == "probe_photons"
    assert len(axis) == 201
    assert labels == ("sq0dB_amp0dB", "sq10dB_amp0dB", "sq0dB_amp40dB",
                      "sq10dB_amp40dB")
    assert columns.shape == (4, 201)
    meta = json.loads((tmp_path / "probe_power.meta.json").read_text(
        encoding="utf-8"))
    assert meta["spec"]["axis"] == "probe_photons"


def test_sweep_preset_amplification_with_svg(tmp_path, capsys):
    code = cli.main(["sweep", "--preset", "amplification",
                     "--out", str(tmp_path), "--svg"])
    assert code == 0
    capsys.readouterr()
    _, axis, labels, columns = sweep.read_csv(tmp_path / "amplification.csv")
    assert len(axis) == 81
    assert labels == ("sq10dB",)
    # Monotone improvement with amplification.
    assert columns[0, -1] < columns[0, 0]
    root = ET.parse(tmp_path / "amplification.svg").getroot()
    assert root.tag.endswith("svg")


def test_sweep_from_config(tmp_path, capsys):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "axis": "probe_photons", "start": 1e5, "stop": 1e7, "points": 4,
        "log_axis": True, "label": "mini",
        "scenarios": [[0.0, 0.0], [10.0, 40.0]],
    }), encoding="utf-8")
    code = cli.main(["sweep", "--config", str(config), "--out",
                     str(tmp_path)])
    assert code == 0
    capsys.readouterr()
    _, axis, labels, _ = sweep.read_csv(tmp_path / "mini.csv")
    assert len(axis) == 4
    assert labels == ("sq0dB_amp0dB", "sq10dB_amp40dB")


def test_sweep_requires_preset_or_config(capsys):
    assert cli.main(["sweep"]) == 2


def test_sweep_config_missing_key(tmp_path, capsys):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"axis": "probe_photons"}), encoding="utf-8")
    assert cli.main(["sweep", "--config", str(config)]) == 2


def test_thresholds_defaults(capsys):
    assert cli.main(["thresholds"]) == 0
    values = _machine_values(capsys.readouterr().out)
    assert float(values["ns_star"]) == pytest.approx(8000.0 / 27.0,
                                                     rel=1e-12)
    assert values["feasible"] == "true"
    assert float(values["ns_limit"]) == pytest.approx(10.0, abs=1e-6)


def test_thresholds_infeasible(capsys):
    assert cli.main(["thresholds", "--dns", "2.5"]) == 0
    values = _machine_values(capsys.readouterr().out)
    assert values["feasible"] == "false"


def test_thresholds_bad_mu(capsys):
    assert cli.main(["thresholds", "--mu", "1.5"]) == 2


def test_resonator_default_preset(capsys):
    assert cli.main(["resonator"]) == 0
    values = _machine_values(capsys.readouterr().out)
    assert float(values["gamma_x"]) == pytest.approx(8.486872322795109e-6,
                                                     rel=1e-12)
    assert values["verdict"] == "PASS"


def test_resonator_spec_file(tmp_path, capsys):
    spec = tmp_path / "res.txt"
    spec.write_text(
        "q_load = 2.0e10\nq_intr = 3.0e11\nn0 = 1.43\nn2 = 1.9e-20\n"
        "lambda0 = 1.55e-6\nv_eff = 1.203e-15\n", encoding="utf-8")
    assert cli.main(["resonator", "--spec", str(spec)]) == 0
    values = _machine_values(capsys.readouterr().out)
    # Double q_load doubles gamma_x.
    assert float(values["gamma_x"]) == pytest.approx(
        2 * 8.486872322795109e-6, rel=1e-12)


def test_resonator_missing_spec_is_io_error(tmp_path, capsys):
    assert cli.main(["resonator", "--spec", str(tmp_path / "no.txt")]) == 4


def test_resonator_malformed_spec_is_config_error(tmp_path, capsys):
    spec = tmp_path / "res.txt"
    spec.write_text("q_load = banana\n", encoding="utf-8")
    assert cli.main(["resonator", "--spec", str(spec)]) == 2


def test_resonator_bad_eta(capsys):
    assert cli.main(["resonator", "--eta", "1"]) == 2


def test_mc_deterministic(capsys):
    args = ["mc", "--samples", "20000", "--seed", "11"]
    assert cli.main(args) == 0
    first = _machine_values(capsys.readouterr().out)
    assert cli.main(args) == 0
    second = _machine_values(capsys.readouterr().out)
    assert first["empirical_dns"] == second["empirical_dns"]
    assert cli.main(["mc", "--samples", "20000", "--seed", "12"]) == 0
    third = _machine_values(capsys.readouterr().out)
    assert third["empirical_dns"] != first["empirical_dns"]


def test_mc_agrees_with_analytic(capsys):
    assert cli.main(["mc", "--samples", "50000", "--seed", "3"]) == 0
    values = _machine_values(capsys.readouterr().out)
    emp = float(values["empirical_dns"])
    ana = float(values["analytic_dns"])
    stderr = float(values["stderr_dns"])
    assert abs(emp - ana) < 4.0 * stderr


def test_mc_chain_from_config(tmp_path, capsys):
    config = tmp_path / "mc.json"
    config.write_text(json.dumps({
        "seed": 4, "n_samples": 10000, "injected_dns": 5.0,
        "chain": {"squeeze_db": 0.0, "amplification_db": 0.0, "n_p": 1e6},
    }), encoding="utf-8")
    assert cli.main(["mc", "--config", str(config)]) == 0
    values = _machine_values(capsys.readouterr().out)
    assert values["seed"] == "4"
    assert values["n_samples"] == "10000"


def test_version_flag():
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0


def test_missing_command_exits():
    with pytest.raises(SystemExit):
        cli.main([])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kerrqnd", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "kerrqnd" in out.stdout
