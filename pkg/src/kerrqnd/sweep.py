"""Scenario sweeps of the measurement error, with CSV/SVG emission.

A sweep evaluates the photon-number error over a one-dimensional axis
(probe photon number, or amplifier strength in dB) for several
squeeze/amplification scenarios at once.  Two presets reproduce the
standard summary figures:

* :func:`probe_power_sweep`: error vs probe photon number for the
  four squeeze/amplification combinations (none, squeeze only,
  amplification only, both).
* :func:`amplification_sweep`: optimized error vs amplifier strength
  at fixed input squeezing, with the probe power re-optimized at
  every point.

CSV columns are written with 17 significant digits, so parsing an
emitted file reproduces the float64 arrays bit-exactly.  Every run
embeds its fully resolved parameter set in the metadata.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import analytic, chain, optimize, svgplot, thresholds
from .gaussian import squeeze_parameter_from_db

_AXES = ("probe_photons", "amplification_db")
_ANGLE_MODES = ("analytic_optimal", "numeric_optimal", "fixed")

_AXIS_CAPTIONS = {
    "probe_photons": "probe photon number",
    "amplification_db": "amplification (dB)",
}


def _fmt_db(db: float) -> str:
    return f"{db:g}dB"


@dataclass(frozen=True)
class Scenario:
    """One curve of a sweep: fixed squeeze and amplification levels.

    ``amplification_db`` must be ``None`` when the sweep axis is the
    amplification itself.
    """

    squeeze_db: float
    amplification_db: float | None = None

    def __post_init__(self):
        if not (self.squeeze_db >= 0.0 and math.isfinite(self.squeeze_db)):
            raise ValueError(
                f"squeeze_db must be finite and >= 0, got {self.squeeze_db!r}")
        if self.amplification_db is not None and not (
                self.amplification_db >= 0.0
                and math.isfinite(self.amplification_db)):
            raise ValueError(f"amplification_db must be finite and >= 0, "
                             f"got {self.amplification_db!r}")

    @property
    def label(self) -> str:
        if self.amplification_db is None:
            return f"sq{_fmt_db(self.squeeze_db)}"
        return (f"sq{_fmt_db(self.squeeze_db)}"
                f"_amp{_fmt_db(self.amplification_db)}")


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one sweep.

    Attributes:
        axis: ``"probe_photons"`` or ``"amplification_db"``.
        start: First axis value.
        stop: Last axis value, > start.
        points: Number of axis samples, >= 2.
        log_axis: Log-spaced axis samples (requires start > 0).
        scenarios: Curves to evaluate.
        eta: Detection efficiency in ``(0, 1]``.
        gamma_x: Cross-phase coefficient, > 0.
        gamma_s: Self-phase coefficient, >= 0.
        angle_mode: ``"analytic_optimal"`` (closed-form optimal
            angles), ``"numeric_optimal"`` (angle optimizer at every
            point) or ``"fixed"`` (use ``fixed_angles``).
        fixed_angles: ``(theta, phi, zeta)``, required for
            ``angle_mode == "fixed"``.
        probe_photons: Probe photon number for amplification-axis
            sweeps; ``None`` re-optimizes it at every point.
        label: Basename used for output files.
        ref_mu: Signal efficiency assumed for the non-Gaussianity
            reference line in plots.
    """

    axis: str
    start: float
    stop: float
    points: int
    log_axis: bool
    scenarios: tuple
    eta: float
    gamma_x: float
    gamma_s: float
    angle_mode: str = "analytic_optimal"
    fixed_angles: tuple | None = None
    probe_photons: float | None = None
    label: str = "sweep"
    ref_mu: float = 0.99

    def __post_init__(self):
        if self.axis not in _AXES:
            raise ValueError(f"axis must be one of {_AXES}, got {self.axis!r}")
        if not (isinstance(self.points, int) and self.points >= 2):
            raise ValueError(f"points must be an integer >= 2, "
                             f"got {self.points!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)
                and self.start < self.stop):
            raise ValueError(f"need start < stop, got {self.start!r}, "
                             f"{self.stop!r}")
        if self.log_axis and self.start <= 0.0:
            raise ValueError("log axis requires start > 0")
        if self.axis == "amplification_db" and self.start < 0.0:
            raise ValueError("amplification sweep requires start >= 0 dB")
        if not self.scenarios:
            raise ValueError("at least one scenario is required")
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        for scenario in self.scenarios:
            swept = self.axis == "amplification_db"
            if swept and scenario.amplification_db is not None:
                raise ValueError(
                    f"scenario {scenario.label!r} fixes amplification_db "
                    "but the sweep axis is amplification_db")
            if not swept and scenario.amplification_db is None:
                raise ValueError(
                    f"scenario {scenario.label!r} needs amplification_db "
                    "for a probe-photon sweep")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta!r}")
        if not (self.gamma_x > 0.0 and math.isfinite(self.gamma_x)):
            raise ValueError(f"gamma_x must be finite and > 0, "
                             f"got {self.gamma_x!r}")
        if not (self.gamma_s >= 0.0 and math.isfinite(self.gamma_s)):
            raise ValueError(f"gamma_s must be finite and >= 0, "
                             f"got {self.gamma_s!r}")
        if self.angle_mode not in _ANGLE_MODES:
            raise ValueError(f"angle_mode must be one of {_ANGLE_MODES}, "
                             f"got {self.angle_mode!r}")
        if self.angle_mode == "fixed":
            if (self.fixed_angles is None or len(self.fixed_angles) != 3):
                raise ValueError("angle_mode 'fixed' requires fixed_angles "
                                 "= (theta, phi, zeta)")
            object.__setattr__(self, "fixed_angles",
                               tuple(float(a) for a in self.fixed_angles))
        if self.probe_photons is not None and not (
                self.probe_photons > 0.0
                and math.isfinite(self.probe_photons)):
            raise ValueError(f"probe_photons must be finite and > 0, "
                             f"got {self.probe_photons!r}")

    def axis_values(self) -> np.ndarray:
        if self.log_axis:
            return np.logspace(math.log10(self.start), math.log10(self.stop),
                               self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepResult:
    """Evaluated sweep: axis samples, per-scenario errors, metadata."""

    axis_name: str
    axis_values: tuple
    labels: tuple
    errors: tuple
    log_axis: bool
    ref_mu: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for column in self.errors:
            if len(column) != len(self.axis_values):
                raise ValueError("error column length does not match axis")
        if len(self.labels) != len(self.errors):
            raise ValueError("one label per error column required")


def probe_power_sweep(points: int = 201) -> SweepSpec:
    """Preset: error vs probe photon number, four scenarios.

    Log axis 1e4 to 1e9 photons; scenarios pair 0 or 10 dB squeezing
    with 0 or 40 dB amplification; detection efficiency 0.9 and the
    resonator-preset Kerr coefficients.
    """
    return SweepSpec(
        axis="probe_photons", start=1e4, stop=1e9, points=points,
        log_axis=True,
        scenarios=(
            Scenario(0.0, 0.0),
            Scenario(10.0, 0.0),
            Scenario(0.0, 40.0),
            Scenario(10.0, 40.0),
        ),
        eta=0.9, gamma_x=0.85e-5, gamma_s=0.425e-5,
        angle_mode="analytic_optimal", label="probe_power",
    )


def amplification_sweep(points: int = 81) -> SweepSpec:
    """Preset: optimized error vs amplification at 10 dB squeezing.

    Linear axis 0 to 40 dB; the probe photon number is re-optimized
    at every point.
    """
    return SweepSpec(
        axis="amplification_db", start=0.0, stop=40.0, points=points,
        log_axis=False,
        scenarios=(Scenario(10.0, None),),
        eta=0.9, gamma_x=0.85e-5, gamma_s=0.425e-5,
        angle_mode="analytic_optimal", label="amplification",
    )


def _point_error(spec: SweepSpec, scenario: Scenario,
                 axis_value: float) -> float:
    """Error of one scenario at one axis sample."""
    r = squeeze_parameter_from_db(scenario.squeeze_db)
    if spec.axis == "amplification_db":
        big_r = squeeze_parameter_from_db(axis_value)
        if spec.probe_photons is not None:
            n_p = spec.probe_photons
        else:
            n_p = analytic.optimal_probe_photons(spec.gamma_s, spec.eta,
                                                 r, big_r)
    else:
        big_r = squeeze_parameter_from_db(scenario.amplification_db)
        n_p = axis_value

    if spec.angle_mode == "analytic_optimal":
        return math.sqrt(analytic.squeezed_error_sq(
            n_p, spec.gamma_x, spec.gamma_s, spec.eta, r, big_r))
    config = chain.ChainConfig(n_p=n_p, gamma_x=spec.gamma_x,
                               gamma_s=spec.gamma_s, eta=spec.eta,
                               r=r, big_r=big_r)
    if spec.angle_mode == "numeric_optimal":
        return math.sqrt(optimize.minimize_angles(config).best_value)
    theta, phi, zeta = spec.fixed_angles
    config = config.replace(theta=theta, phi=phi, zeta=zeta)
    return chain.measurement_error(config).delta_ns


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Evaluates a sweep.

    Axis points are evaluated in parallel when ``threads > 1``; the
    result assembly is ordered by axis index, so the output does not
    depend on the thread count.
    """
    values = spec.axis_values()

    def column(axis_value: float):
        return [_point_error(spec, scenario, float(axis_value))
                for scenario in spec.scenarios]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(column, values))
    else:
        rows = [column(value) for value in values]

    errors = tuple(tuple(row[i] for row in rows)
                   for i in range(len(spec.scenarios)))
    from . import __version__

    metadata = {
        "tool": "kerrqnd",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "spec": asdict(spec),
    }
    return SweepResult(
        axis_name=spec.axis,
        axis_values=tuple(float(v) for v in values),
        labels=tuple(s.label for s in spec.scenarios),
        errors=errors,
        log_axis=spec.log_axis,
        ref_mu=spec.ref_mu,
        metadata=metadata,
    )


def write_csv(result: SweepResult, path):
    """Writes the sweep as CSV: header ``<axis>,<label>...``, 17
    significant digits per cell (bit-exact float64 round-trip)."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join((result.axis_name,) + result.labels) + "\n")
        for index, axis_value in enumerate(result.axis_values):
            cells = [f"{axis_value:.17g}"]
            cells += [f"{column[index]:.17g}" for column in result.errors]
            handle.write(",".join(cells) + "\n")


def read_csv(path):
    """Parses a sweep CSV back into ``(axis_name, axis, labels, columns)``.

    ``axis`` is a float ndarray, ``columns`` a ``(scenarios, points)``
    float ndarray.
    """
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader if row]
    data = np.array(rows, dtype=float)
    return header[0], data[:, 0], tuple(header[1:]), data[:, 1:].T


def write_metadata(result: SweepResult, path):
    """Writes the run metadata as pretty-printed JSON."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(result.metadata, handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_svg(result: SweepResult, path):
    """Renders the sweep with the single-photon and non-Gaussianity
    reference levels and writes it to ``path``."""
    series = [svgplot.Series(label, result.axis_values, column)
              for label, column in zip(result.labels, result.errors)]
    ref_lines = [svgplot.RefLine(1.0, "single-photon sensitivity")]
    if result.ref_mu < 1.0:
        level = thresholds.margin_peak_error(result.ref_mu)
        ref_lines.append(svgplot.RefLine(
            level, f"non-Gaussian bound (mu={result.ref_mu:g})"))
    markup = svgplot.line_plot(
        series,
        x_label=_AXIS_CAPTIONS[result.axis_name],
        y_label="photon-number error (photons)",
        title=f"measurement error: {result.metadata.get('spec', {}).get('label', '')}",
        x_log=result.log_axis,
        y_log=True,
        ref_lines=ref_lines,
    )
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(markup)
