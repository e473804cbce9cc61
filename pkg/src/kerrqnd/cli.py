"""Command-line interface.

Subcommands:
    ``error``       single-configuration error report (analytic,
                    covariance chain, optional numeric optimizer).
    ``sweep``       scenario sweeps with CSV / metadata / SVG output.
    ``thresholds``  non-Gaussianity and single-photon feasibility.
    ``resonator``   Kerr coefficients and loading check from a spec file.
    ``mc``          Monte-Carlo cross-check of a configuration.

Configs are JSON files (one file per command); command-line flags
override file values, and dB quantities are converted to hyperbolic
squeeze parameters only at this boundary.  Exit codes: 0 success,
2 config error, 4 I/O error, 3 numeric failure (no finite optimum,
blind homodyne direction, optimizer non-convergence).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import (__version__, analytic, chain, montecarlo, optimize, resonator,
               thresholds)
from . import sweep as sweep_mod
from .errors import (ConfigError, DegenerateDirectionError, KerrQndError,
                     NoFiniteOptimumError, NonConvergenceError, ZeroGainError)
from .gaussian import squeeze_parameter_from_db

_DEFAULT_GAMMA_X = 0.85e-5
_DEFAULT_ETA = 0.9
_DEFAULT_MC_SAMPLES = 1_000_000
_DEFAULT_MC_SEED = 42
_DEFAULT_MC_INJECTED = 10.0


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _load_json(path: Path) -> dict:
    """Loads a JSON config file; parse problems are config errors,
    unreadable files are I/O errors."""
    text = path.read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ConfigError(str(path), "top level must be a JSON object")
    return obj


def _number(source: str, key: str, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{source}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _take_number(cfg: dict, source: str, key: str, default):
    if key not in cfg:
        return default
    return _number(source, key, cfg[key])


def _check_unknown(cfg: dict, source: str, known):
    for key in cfg:
        if key not in known:
            raise ConfigError(f"{source}.{key}", "unknown key")


def _resolve_chain(cfg: dict, source: str, flags=None):
    """Builds a ChainConfig from a config mapping plus flag overrides.

    Returns ``(config, notes)`` where ``notes`` records which derived
    choices (optimal probe power, optimal angles) were applied.
    """
    known = ("eta", "gamma_x", "gamma_s", "squeeze_db", "amplification_db",
             "n_p", "angles")
    _check_unknown(cfg, source, known)
    flags = flags or {}

    gamma_x = _take_number(cfg, source, "gamma_x", _DEFAULT_GAMMA_X)
    gamma_s = _take_number(cfg, source, "gamma_s", gamma_x / 2.0)
    eta = _take_number(cfg, source, "eta", _DEFAULT_ETA)
    squeeze_db = _take_number(cfg, source, "squeeze_db", 0.0)
    amplification_db = _take_number(cfg, source, "amplification_db", 0.0)
    if flags.get("eta") is not None:
        eta = flags["eta"]
    if flags.get("squeeze_db") is not None:
        squeeze_db = flags["squeeze_db"]
    if flags.get("amplification_db") is not None:
        amplification_db = flags["amplification_db"]

    if squeeze_db < 0.0 or amplification_db < 0.0:
        raise ConfigError(source, "squeeze_db and amplification_db must be >= 0")
    r = squeeze_parameter_from_db(squeeze_db)
    big_r = squeeze_parameter_from_db(amplification_db)

    notes = {}
    n_p = flags.get("n_p")
    if n_p is None:
        n_p = cfg.get("n_p", "optimal")
    if isinstance(n_p, str):
        if n_p != "optimal":
            raise ConfigError(f"{source}.n_p",
                              f"expected a number or 'optimal', got {n_p!r}")
        n_p = analytic.optimal_probe_photons(gamma_s, eta, r, big_r)
        notes["n_p"] = "optimal"
    else:
        n_p = _number(source, "n_p", n_p)

    angles = cfg.get("angles", "optimal")
    if isinstance(angles, str):
        if angles != "optimal":
            raise ConfigError(f"{source}.angles",
                              f"expected 'optimal' or an object, got {angles!r}")
        try:
            opt = analytic.optimal_angles(n_p, gamma_s, eta, r, big_r)
        except ValueError as exc:
            raise ConfigError(source, str(exc)) from None
        theta, phi, zeta = opt.theta, opt.phi, opt.zeta
        notes["angles"] = "optimal"
    elif isinstance(angles, dict):
        _check_unknown(angles, f"{source}.angles", ("theta", "phi", "zeta"))
        theta = _take_number(angles, f"{source}.angles", "theta", 0.0)
        phi = _take_number(angles, f"{source}.angles", "phi", 0.0)
        zeta = _take_number(angles, f"{source}.angles", "zeta", math.pi / 2.0)
    else:
        raise ConfigError(f"{source}.angles",
                          f"expected 'optimal' or an object, got {angles!r}")

    try:
        config = chain.ChainConfig(n_p=n_p, gamma_x=gamma_x, gamma_s=gamma_s,
                                   eta=eta, r=r, theta=theta, big_r=big_r,
                                   phi=phi, zeta=zeta)
    except ValueError as exc:
        raise ConfigError(source, str(exc)) from None
    return config, notes


def _print_block(title: str, rows):
    print(title)
    for key, value in rows:
        print(f"  {key:<22} {value}")


def _machine_block(pairs, out_dir: Path | None, name: str):
    """Prints the key=value block and optionally writes it to a file."""
    lines = [f"{key} = {value}" for key, value in pairs]
    print("# machine-readable")
    for line in lines:
        print(line)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{name}.txt"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {path}")


def cmd_error(args) -> int:
    cfg = _load_json(args.config) if args.config else {}
    source = str(args.config) if args.config else "defaults"
    flags = {"eta": args.eta, "squeeze_db": args.squeeze_db,
             "amplification_db": args.amplification_db, "n_p": args.n_p}
    config, notes = _resolve_chain(cfg, source, flags)

    analytic_dns = math.sqrt(analytic.squeezed_error_sq(
        config.n_p, config.gamma_x, config.gamma_s, config.eta,
        config.r, config.big_r))
    output = chain.measurement_error(config)

    _print_block("configuration", [
        ("n_p", _fmt(config.n_p) + (" (optimal)" if "n_p" in notes else "")),
        ("gamma_x", _fmt(config.gamma_x)),
        ("gamma_s", _fmt(config.gamma_s)),
        ("eta", _fmt(config.eta)),
        ("squeeze r", _fmt(config.r)),
        ("amplification R", _fmt(config.big_r)),
        ("theta", _fmt(config.theta)
         + (" (optimal)" if "angles" in notes else "")),
        ("phi", _fmt(config.phi)),
        ("zeta", _fmt(config.zeta)),
    ])
    rows = [
        ("analytic optimum", _fmt(analytic_dns)),
        ("covariance chain", _fmt(output.delta_ns)),
        ("gain", _fmt(output.gain)),
    ]
    pairs = [
        ("error.analytic", _fmt(analytic_dns)),
        ("error.chain", _fmt(output.delta_ns)),
        ("gain", _fmt(output.gain)),
        ("noise_variance", _fmt(output.noise_variance)),
        ("n_p", _fmt(config.n_p)),
    ]
    if args.optimize:
        result = optimize.minimize_angles(config)
        rows.append(("numeric optimizer", _fmt(math.sqrt(result.best_value))
                     + f"  ({result.evaluations} evaluations)"))
        pairs.append(("error.optimizer", _fmt(math.sqrt(result.best_value))))
        pairs.append(("optimizer.evaluations", str(result.evaluations)))
        pairs.append(("optimizer.converged", str(result.converged).lower()))
    _print_block("photon-number error (photons)", rows)
    _machine_block(pairs, args.out, "error")
    return 0


_PRESETS = {
    "probe-power": sweep_mod.probe_power_sweep,
    "amplification": sweep_mod.amplification_sweep,
}


def _sweep_spec_from_config(cfg: dict, source: str) -> sweep_mod.SweepSpec:
    known = ("axis", "start", "stop", "points", "log_axis", "scenarios",
             "eta", "gamma_x", "gamma_s", "angle_mode", "fixed_angles",
             "probe_photons", "label", "ref_mu")
    _check_unknown(cfg, source, known)
    required = ("axis", "start", "stop", "points", "scenarios")
    for key in required:
        if key not in cfg:
            raise ConfigError(f"{source}.{key}", "required key missing")

    scenarios = []
    raw = cfg["scenarios"]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"{source}.scenarios", "expected a non-empty array")
    for index, entry in enumerate(raw):
        where = f"{source}.scenarios[{index}]"
        try:
            if isinstance(entry, dict):
                _check_unknown(entry, where, ("squeeze_db", "amplification_db"))
                scenarios.append(sweep_mod.Scenario(
                    squeeze_db=_take_number(entry, where, "squeeze_db", 0.0),
                    amplification_db=(
                        _number(where, "amplification_db",
                                entry["amplification_db"])
                        if entry.get("amplification_db") is not None else None),
                ))
            elif isinstance(entry, list) and len(entry) == 2:
                amp = entry[1]
                scenarios.append(sweep_mod.Scenario(
                    squeeze_db=_number(where, "squeeze_db", entry[0]),
                    amplification_db=(None if amp is None else
                                      _number(where, "amplification_db", amp)),
                ))
            else:
                raise ConfigError(
                    where, "expected [squeeze_db, amplification_db] or object")
        except ValueError as exc:
            raise ConfigError(where, str(exc)) from None

    points = cfg["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError(f"{source}.points", f"expected an integer, "
                          f"got {points!r}")
    fixed_angles = cfg.get("fixed_angles")
    if fixed_angles is not None:
        if not isinstance(fixed_angles, list) or len(fixed_angles) != 3:
            raise ConfigError(f"{source}.fixed_angles",
                              "expected [theta, phi, zeta]")
        fixed_angles = tuple(
            _number(f"{source}.fixed_angles", str(i), v)
            for i, v in enumerate(fixed_angles))
    label = cfg.get("label", "sweep")
    if not isinstance(label, str):
        raise ConfigError(f"{source}.label", f"expected a string, got {label!r}")
    angle_mode = cfg.get("angle_mode", "analytic_optimal")
    if not isinstance(angle_mode, str):
        raise ConfigError(f"{source}.angle_mode",
                          f"expected a string, got {angle_mode!r}")
    probe_photons = cfg.get("probe_photons")
    if probe_photons is not None:
        probe_photons = _number(source, "probe_photons", probe_photons)

    gamma_x = _take_number(cfg, source, "gamma_x", _DEFAULT_GAMMA_X)
    try:
        return sweep_mod.SweepSpec(
            axis=cfg["axis"] if isinstance(cfg["axis"], str) else repr(cfg["axis"]),
            start=_number(source, "start", cfg["start"]),
            stop=_number(source, "stop", cfg["stop"]),
            points=points,
            log_axis=bool(cfg.get("log_axis", False)),
            scenarios=tuple(scenarios),
            eta=_take_number(cfg, source, "eta", _DEFAULT_ETA),
            gamma_x=gamma_x,
            gamma_s=_take_number(cfg, source, "gamma_s", gamma_x / 2.0),
            angle_mode=angle_mode,
            fixed_angles=fixed_angles,
            probe_photons=probe_photons,
            label=label,
            ref_mu=_take_number(cfg, source, "ref_mu", 0.99),
        )
    except ValueError as exc:
        raise ConfigError(source, str(exc)) from None


def cmd_sweep(args) -> int:
    if args.config is not None:
        spec = _sweep_spec_from_config(_load_json(args.config),
                                       str(args.config))
    elif args.preset is not None:
        spec = _PRESETS[args.preset]()
    else:
        raise ConfigError("sweep", "either --preset or --config is required")

    result = sweep_mod.run_sweep(spec, threads=args.threads)

    out_dir = args.out if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{spec.label}.csv"
    meta_path = out_dir / f"{spec.label}.meta.json"
    sweep_mod.write_csv(result, csv_path)
    sweep_mod.write_metadata(result, meta_path)
    print(f"wrote {csv_path}")
    print(f"wrote {meta_path}")
    if args.svg:
        svg_path = out_dir / f"{spec.label}.svg"
        sweep_mod.write_svg(result, svg_path)
        print(f"wrote {svg_path}")

    print("per-scenario minima")
    for label, column in zip(result.labels, result.errors):
        best = min(range(len(column)), key=lambda i: column[i])
        print(f"  {label:<22} min error {column[best]:.4f} photons "
              f"at {result.axis_name} = {result.axis_values[best]:.6g}")
    return 0


def cmd_thresholds(args) -> int:
    cfg = _load_json(args.config) if args.config else {}
    source = str(args.config) if args.config else "defaults"
    _check_unknown(cfg, source, ("mu", "dns"))
    mu = args.mu if args.mu is not None else _take_number(cfg, source, "mu", 0.9)
    dns = args.dns if args.dns is not None else _take_number(cfg, source,
                                                             "dns", 1.0)
    try:
        report = thresholds.single_photon_check(dns, mu)
    except ValueError as exc:
        raise ConfigError(source, str(exc)) from None

    _print_block(f"feasibility at mu = {mu:g}, measurement error = {dns:g}", [
        ("single-photon feasible", "yes" if report.single_photon_feasible
         else "no"),
        ("best-margin photon number", f"{report.ns_star:.6g}"),
        ("max admissible error", f"{report.dns_max:.6g} photons"),
        ("single-photon n_s limit", f"{report.single_photon_ns_limit:.6g}"),
    ])
    print("margin table (order-of-magnitude; unity factors dropped)")
    for n_s, margin in report.margin_table:
        print(f"  n_s = {n_s:>12.4g}   margin = {margin:>12.4g}")
    pairs = [
        ("mu", _fmt(mu)),
        ("dns", _fmt(dns)),
        ("feasible", str(report.single_photon_feasible).lower()),
        ("ns_star", _fmt(report.ns_star)),
        ("dns_max", _fmt(report.dns_max)),
        ("ns_limit", _fmt(report.single_photon_ns_limit)),
    ]
    _machine_block(pairs, args.out, "thresholds")
    return 0


def cmd_resonator(args) -> int:
    if args.spec is not None:
        spec = resonator.load_spec(args.spec)
        origin = str(args.spec)
    else:
        spec = resonator.default_spec()
        origin = "shipped CaF2 preset"
    eta = args.eta if args.eta is not None else _DEFAULT_ETA
    gamma_x, gamma_s = resonator.kerr_phase_factors(spec)
    try:
        report = resonator.loading_check(spec, eta)
    except ValueError as exc:
        raise ConfigError("eta", str(exc)) from None

    _print_block(f"resonator ({origin})", [
        ("q_load", f"{spec.q_load:g}"),
        ("q_intr", f"{spec.q_intr:g}"),
        ("n0", f"{spec.n0:g}"),
        ("n2", f"{spec.n2:g} m^2/W"),
        ("lambda0", f"{spec.lambda0:g} m"),
        ("v_eff", f"{spec.v_eff:g} m^3"),
    ])
    _print_block("derived", [
        ("gamma_x", _fmt(gamma_x)),
        ("gamma_s", _fmt(gamma_s)),
        ("loading ratio", _fmt(report.ratio)),
        ("loss factor eps^2", _fmt(report.epsilon_sq)),
        ("loading verdict", report.verdict),
    ])
    pairs = [
        ("gamma_x", _fmt(gamma_x)),
        ("gamma_s", _fmt(gamma_s)),
        ("ratio", _fmt(report.ratio)),
        ("epsilon_sq", _fmt(report.epsilon_sq)),
        ("verdict", report.verdict),
    ]
    _machine_block(pairs, args.out, "resonator")
    return 0


def cmd_mc(args) -> int:
    cfg = _load_json(args.config) if args.config else {}
    source = str(args.config) if args.config else "defaults"
    _check_unknown(cfg, source, ("seed", "n_samples", "injected_dns", "chain"))

    chain_cfg = cfg.get("chain")
    if chain_cfg is None:
        chain_config, _ = _resolve_chain(
            {"squeeze_db": 10.0, "amplification_db": 40.0}, "defaults")
    else:
        if not isinstance(chain_cfg, dict):
            raise ConfigError(f"{source}.chain", "expected an object")
        chain_config, _ = _resolve_chain(chain_cfg, f"{source}.chain")

    seed = args.seed
    if seed is None:
        seed = cfg.get("seed", _DEFAULT_MC_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"{source}.seed", f"expected an integer, got {seed!r}")
    n_samples = args.samples
    if n_samples is None:
        n_samples = cfg.get("n_samples", _DEFAULT_MC_SAMPLES)
    if isinstance(n_samples, bool) or not isinstance(n_samples, int):
        raise ConfigError(f"{source}.n_samples",
                          f"expected an integer, got {n_samples!r}")
    injected = args.injected_dns
    if injected is None:
        injected = _take_number(cfg, source, "injected_dns",
                                _DEFAULT_MC_INJECTED)

    try:
        mc_config = montecarlo.McConfig(seed=seed, n_samples=n_samples,
                                        injected_dns=injected,
                                        chain=chain_config)
    except ValueError as exc:
        raise ConfigError(source, str(exc)) from None

    report = montecarlo.run(mc_config, threads=args.threads)
    expected = chain.measurement_error(chain_config)
    z = ((report.empirical_dns - expected.delta_ns) / report.stderr_dns
         if report.stderr_dns > 0.0 else math.nan)

    _print_block(f"monte carlo ({n_samples} samples, seed {seed})", [
        ("empirical error", f"{report.empirical_dns:.6g} "
         f"+/- {report.stderr_dns:.2g} photons"),
        ("analytic error", f"{expected.delta_ns:.6g} photons"),
        ("deviation", f"{z:+.2f} standard errors"),
        ("empirical gain", f"{report.empirical_gain:.6g}"),
        ("analytic gain", f"{expected.gain:.6g}"),
    ])
    pairs = [
        ("seed", str(seed)),
        ("n_samples", str(n_samples)),
        ("injected_dns", _fmt(injected)),
        ("empirical_dns", _fmt(report.empirical_dns)),
        ("stderr_dns", _fmt(report.stderr_dns)),
        ("analytic_dns", _fmt(expected.delta_ns)),
        ("empirical_gain", _fmt(report.empirical_gain)),
        ("analytic_gain", _fmt(expected.gain)),
    ]
    _machine_block(pairs, args.out, "mc")
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrqnd",
        description="Sensitivity toolkit for squeezed-light Kerr QND "
                    "photon-number measurement.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, metavar="PATH",
                        help="JSON config file for this command")
    common.add_argument("--out", type=Path, metavar="DIR",
                        help="directory for output files")
    common.add_argument("--svg", action="store_true",
                        help="also write an SVG plot (sweep only)")
    common.add_argument("--seed", type=int, metavar="U64",
                        help="random seed (mc only)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        metavar="N", help="worker threads")

    sub = parser.add_subparsers(dest="command", required=True)

    p_error = sub.add_parser("error", parents=[common],
                             help="single-configuration error report")
    p_error.add_argument("--eta", type=float, help="detection efficiency")
    p_error.add_argument("--squeeze-db", type=float, dest="squeeze_db",
                         help="input squeezing in dB")
    p_error.add_argument("--amplification-db", type=float,
                         dest="amplification_db",
                         help="output amplification in dB")
    p_error.add_argument("--n-p", type=float, dest="n_p",
                         help="probe photon number (default: optimal)")
    p_error.add_argument("--optimize", action="store_true",
                         help="also run the numeric angle optimizer")
    p_error.set_defaults(func=cmd_error)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="scenario sweep with CSV/SVG output")
    p_sweep.add_argument("--preset", choices=sorted(_PRESETS),
                         help="built-in sweep preset")
    p_sweep.set_defaults(func=cmd_sweep)

    p_thresh = sub.add_parser("thresholds", parents=[common],
                              help="non-classicality feasibility report")
    p_thresh.add_argument("--mu", type=float, help="signal-path efficiency")
    p_thresh.add_argument("--dns", type=float,
                          help="measurement error in photons")
    p_thresh.set_defaults(func=cmd_thresholds)

    p_res = sub.add_parser("resonator", parents=[common],
                           help="Kerr coefficients from a resonator spec")
    p_res.add_argument("--spec", type=Path, metavar="PATH",
                       help="key-value resonator spec file "
                            "(default: shipped CaF2 preset)")
    p_res.add_argument("--eta", type=float, help="probe detection efficiency")
    p_res.set_defaults(func=cmd_resonator)

    p_mc = sub.add_parser("mc", parents=[common],
                          help="Monte-Carlo cross-check")
    p_mc.add_argument("--samples", type=_positive_int, metavar="N",
                      help="number of samples")
    p_mc.add_argument("--injected-dns", type=float, dest="injected_dns",
                      help="stdev of injected signal fluctuation")
    p_mc.set_defaults(func=cmd_mc)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NoFiniteOptimumError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        print("hint: set an explicit probe photon number (n_p) to evaluate "
              "this configuration anyway", file=sys.stderr)
        return 3
    except (NonConvergenceError, ZeroGainError,
            DegenerateDirectionError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except KerrQndError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4


def entry():
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    entry()
