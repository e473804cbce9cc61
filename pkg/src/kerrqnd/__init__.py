"""Sensitivity toolkit for squeezed-light Kerr QND photon-number measurement.

Models a bright probe that reads out a signal photon number through
cross-phase modulation in a Kerr medium: input squeezing, the
parasitic self-phase shear, output parametric amplification and lossy
homodyne detection.  The same physics is implemented three ways that
check each other: explicit Gaussian covariance propagation
(:mod:`kerrqnd.chain`), closed-form optima (:mod:`kerrqnd.analytic`)
and derivative-free numeric optimization (:mod:`kerrqnd.optimize`),
plus a Monte-Carlo sampler (:mod:`kerrqnd.montecarlo`).  Supporting
modules cover signal-path loss bookkeeping, non-classicality
thresholds, resonator parameter conversion and scenario sweeps with
CSV/SVG output.
"""

from .analytic import (OptimalAngles, ProjectionTerms, coherent_error_sq,
                       coherent_error_sq_min, loss_factor,
                       measurement_error_closed_form,
                       noise_variance_closed_form, optimal_angles,
                       optimal_config, optimal_probe_photons,
                       optimal_squeeze_angle, projection_terms, sql,
                       squeezed_error_sq, squeezed_error_sq_min)
from .chain import (ChainConfig, ChainOutput, gain, measurement_error,
                    noise_variance, signal_projection)
from .errors import (ConfigError, DegenerateDirectionError, KerrQndError,
                     LinearizationWarning, NoFiniteOptimumError,
                     NonConvergenceError, ZeroGainError)
from .gaussian import (VACUUM_VARIANCE, GaussianMode, apply_loss_quadrature,
                       db_to_factor, factor_to_db, homodyne_vector,
                       probe_mode, propagate, spm_matrix,
                       squeeze_matrix, squeeze_parameter_from_db,
                       vacuum_mode)
from .montecarlo import McConfig, McReport, seeded_stream
from .optimize import OptimizationResult, minimize_angles, minimize_np
from .resonator import (LoadingReport, ResonatorSpec, default_spec,
                        kerr_phase_factors, load_spec, loading_check)
from .signal_loss import (SignalLossConfig, apply_input_loss,
                          is_sub_poissonian,
                          measurement_error_with_input_loss, prepared_state)
from .sweep import (Scenario, SweepResult, SweepSpec, amplification_sweep,
                    probe_power_sweep, run_sweep)
from .thresholds import (ThresholdReport, margin_peak_error, margin_peak_ns,
                         non_gaussian_bound, non_gaussian_margin,
                         single_photon_check)
from ._kernels import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "ChainOutput",
    "ConfigError",
    "DegenerateDirectionError",
    "GaussianMode",
    "KerrQndError",
    "LinearizationWarning",
    "LoadingReport",
    "McConfig",
    "McReport",
    "NoFiniteOptimumError",
    "NonConvergenceError",
    "OptimalAngles",
    "OptimizationResult",
    "ProjectionTerms",
    "ResonatorSpec",
    "Scenario",
    "SignalLossConfig",
    "SweepResult",
    "SweepSpec",
    "ThresholdReport",
    "VACUUM_VARIANCE",
    "ZeroGainError",
    "amplification_sweep",
    "apply_input_loss",
    "apply_loss_quadrature",
    "coherent_error_sq",
    "coherent_error_sq_min",
    "db_to_factor",
    "default_spec",
    "factor_to_db",
    "gain",
    "homodyne_vector",
    "is_sub_poissonian",
    "kernel_backend",
    "kerr_phase_factors",
    "load_spec",
    "loading_check",
    "loss_factor",
    "margin_peak_error",
    "margin_peak_ns",
    "measurement_error",
    "measurement_error_closed_form",
    "measurement_error_with_input_loss",
    "minimize_angles",
    "minimize_np",
    "noise_variance",
    "noise_variance_closed_form",
    "non_gaussian_bound",
    "non_gaussian_margin",
    "optimal_angles",
    "optimal_config",
    "optimal_probe_photons",
    "optimal_squeeze_angle",
    "prepared_state",
    "probe_mode",
    "probe_power_sweep",
    "projection_terms",
    "propagate",
    "run_sweep",
    "seeded_stream",
    "signal_projection",
    "single_photon_check",
    "spm_matrix",
    "sql",
    "squeeze_matrix",
    "squeeze_parameter_from_db",
    "squeezed_error_sq",
    "squeezed_error_sq_min",
    "vacuum_mode",
]
