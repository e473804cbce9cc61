"""Derivative-free minimization of the chain error.

Two objectives only: the squared photon-number error over the three
angles (input squeeze orientation, amplifier orientation, homodyne
angle) at fixed probe power, and the same quantity additionally
minimized over the probe photon number.  Both serve as independent
numerical oracles for the closed forms in :mod:`kerrqnd.analytic`, so
they deliberately share no formulas with that module; every objective
evaluation goes through the covariance-propagation kernel.

The angle search runs a fixed coarse grid over ``[0, pi)^3`` followed
by local simplex descent from the best grid cells.  The amplifier
angle is additionally refined in the slope variable ``u = cot(phi)``
with the homodyne angle tied to ``phi``: for large ``n_p * gamma_s``
the optimum sits within ``~1/(n_p gamma_s)`` of ``phi = pi``, a region
far too narrow for angle-space steps but benign in ``u``.  A final
small-step simplex in ``(theta, u, zeta - phi)`` releases the tie and
polishes all three directions.  Everything is deterministic: fixed
grid, fixed start order, stable tie-breaking, no randomness.

The probe-power search is a golden-section scan of the angle-minimized
error over ``log n_p``, which is unimodal there (the error is a sum of
a decreasing and an increasing exponential in ``log n_p``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import (chain_error_sq, chain_error_sq_batch,
                       chain_error_sq_slope)
from .chain import ChainConfig
from .errors import NoFiniteOptimumError, NonConvergenceError

# Coarse-grid resolution and number of refined starts.
_GRID_POINTS = 16
_STARTS = 5

# Simplex iteration cap per refinement run.
_MAX_SIMPLEX_ITER = 600

# Absolute-ish tolerance on simplex extent (scaled by 1 + |x|).
_XATOL = 1e-8

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a minimization run.

    Attributes:
        best_params: ``(theta, phi, zeta)`` for the angle search, or
            ``(theta, phi, zeta, n_p)`` for the joint search.  Angles
            are reported as found; the objective is pi-periodic in
            each of them.
        best_value: Minimized squared error.
        evaluations: Number of objective evaluations consumed.
        converged: Whether the final simplex (and bracket, for the
            joint search) shrank below tolerance.
    """

    best_params: tuple
    best_value: float
    evaluations: int
    converged: bool


class _EvalBudget:
    """Counts objective evaluations and enforces a hard cap."""

    def __init__(self, limit: int):
        self.limit = int(limit)
        self.used = 0

    def charge(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise NonConvergenceError(
                f"evaluation budget of {self.limit} exhausted before convergence"
            )


def _nelder_mead(f, x0, steps, fatol, xatol, max_iter=_MAX_SIMPLEX_ITER):
    """Minimizes ``f`` by the Nelder-Mead simplex method.

    Plain-list implementation tuned for 2 or 3 variables; ties are
    broken by lexicographic vertex comparison so runs are
    deterministic.  Returns ``(x_best, f_best, converged)``.
    ``inf`` objective values are legal and simply rank worst.
    """
    n = len(x0)
    sim = [list(x0)]
    for i in range(n):
        vertex = list(x0)
        vertex[i] += steps[i]
        sim.append(vertex)
    vals = [f(v) for v in sim]
    converged = False
    for _ in range(max_iter):
        order = sorted(range(n + 1), key=lambda j: (vals[j], sim[j]))
        sim = [sim[j] for j in order]
        vals = [vals[j] for j in order]
        f_best = vals[0]
        spread = vals[-1] - f_best
        diam = max(abs(sim[j][i] - sim[0][i])
                   for j in range(1, n + 1) for i in range(n))
        x_scale = 1.0 + max(abs(c) for c in sim[0])
        if spread <= fatol * (1.0 + abs(f_best)) and diam <= xatol * x_scale:
            converged = True
            break
        centroid = [sum(sim[j][i] for j in range(n)) / n for i in range(n)]
        worst = sim[-1]
        xr = [2.0 * centroid[i] - worst[i] for i in range(n)]
        fr = f(xr)
        if fr < vals[0]:
            xe = [3.0 * centroid[i] - 2.0 * worst[i] for i in range(n)]
            fe = f(xe)
            if fe < fr:
                sim[-1], vals[-1] = xe, fe
            else:
                sim[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            sim[-1], vals[-1] = xr, fr
        else:
            if fr < vals[-1]:
                xc = [centroid[i] + 0.5 * (xr[i] - centroid[i])
                      for i in range(n)]
            else:
                xc = [centroid[i] - 0.5 * (centroid[i] - worst[i])
                      for i in range(n)]
            fc = f(xc)
            if fc < min(fr, vals[-1]):
                sim[-1], vals[-1] = xc, fc
            else:
                for j in range(1, n + 1):
                    sim[j] = [sim[0][i] + 0.5 * (sim[j][i] - sim[0][i])
                              for i in range(n)]
                    vals[j] = f(sim[j])
    order = sorted(range(n + 1), key=lambda j: (vals[j], sim[j]))
    return sim[order[0]], vals[order[0]], converged


def _slope_to_angle(u: float) -> float:
    """Maps the slope variable ``u = cot(phi)`` back to ``phi`` in (0, pi)."""
    return math.atan2(1.0, u)


def _angle_to_slope(phi: float) -> float:
    """Maps an angle to the slope variable, clamped away from the poles."""
    reduced = phi % math.pi
    margin = math.pi / 64.0
    reduced = min(max(reduced, margin), math.pi - margin)
    return 1.0 / math.tan(reduced)


def minimize_angles(config: ChainConfig, tol: float = 1e-10,
                    budget: int = 100_000) -> OptimizationResult:
    """Minimizes the squared error over the three chain angles.

    The angle fields of ``config`` are ignored; all other fields are
    taken as fixed.  See the module docstring for the search strategy.

    Args:
        config: Chain parameters (probe power, Kerr coefficients,
            efficiency, squeeze strengths).
        tol: Relative value tolerance; the result lies within
            ``tol * (1 + |value|)`` of the local minimum reached.
        budget: Hard cap on objective evaluations.

    Returns:
        An :class:`OptimizationResult` with
        ``best_params = (theta, phi, zeta)``.  At extreme shear the
        optimal amplifier angle lies within the double-precision
        spacing of ``pi``; ``best_value`` is then computed in the slope
        variable and can undercut a re-evaluation at the rounded
        angles.

    Raises:
        NonConvergenceError: If the evaluation budget is exhausted.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    n_p, gamma_x, gamma_s = config.n_p, config.gamma_x, config.gamma_s
    eta, r, big_r = config.eta, config.r, config.big_r
    bud = _EvalBudget(budget)

    axis = np.arange(_GRID_POINTS) * (math.pi / _GRID_POINTS)
    mesh = np.meshgrid(axis, axis, axis, indexing="ij")
    thetas, phis, zetas = (m.ravel() for m in mesh)
    bud.charge(thetas.size)
    grid_vals = chain_error_sq_batch(thetas, phis, zetas, n_p, gamma_x,
                                     gamma_s, eta, r, big_r)
    # Primary key value, ties broken lexicographically by the angles.
    order = np.lexsort((zetas, phis, thetas, grid_vals))
    starts = order[:_STARTS]

    def f_angles(x):
        bud.charge()
        return chain_error_sq(x[0], x[1], x[2], n_p, gamma_x, gamma_s,
                              eta, r, big_r)

    def f_tied_slope(x):
        # (theta, u) with zeta == phi == acot(u).
        bud.charge()
        return chain_error_sq_slope(x[0], x[1], 0.0, n_p, gamma_x, gamma_s,
                                    eta, r, big_r)

    def f_slope(x):
        # (theta, u, delta) with phi = acot(u), zeta = phi + delta.
        bud.charge()
        return chain_error_sq_slope(x[0], x[1], x[2], n_p, gamma_x, gamma_s,
                                    eta, r, big_r)

    candidates = []
    for idx in starts:
        x0 = (float(thetas[idx]), float(phis[idx]), float(zetas[idx]))
        x_best, f_best, conv = _nelder_mead(
            f_angles, x0, steps=(0.15, 0.15, 0.15), fatol=tol, xatol=_XATOL)
        candidates.append((f_best, tuple(x_best), conv))

        # Slope-space pass: ride the u = cot(phi) valley with the
        # homodyne tied to the amplifier, then release the tie with a
        # small-step polish.  Handles optima exponentially close to
        # phi = 0 or pi.
        x0_u = (float(thetas[idx]), _angle_to_slope(float(phis[idx])))
        x_u, _, _ = _nelder_mead(
            f_tied_slope, x0_u, steps=(0.15, 0.3), fatol=tol, xatol=_XATOL)
        u_scale = 1.0 + abs(x_u[1])
        x_polish = (x_u[0], x_u[1], 0.0)
        x_p, f_p, conv_p = _nelder_mead(
            f_slope, x_polish, steps=(1e-6, 1e-6 * u_scale, 1e-9),
            fatol=tol, xatol=_XATOL)
        phi_p = _slope_to_angle(x_p[1])
        candidates.append((f_p, (x_p[0], phi_p, phi_p + x_p[2]), conv_p))

    candidates.sort(key=lambda c: (c[0], c[1]))
    best_value, best_x, conv = candidates[0]

    # Restart once from a nudged best point; guards against descents
    # stranded by the gain-blind manifold or a lucky grid cell.
    u_best = _angle_to_slope(best_x[1])
    u_scale = 1.0 + abs(u_best)
    x0_r = (best_x[0] + 1.7e-5, u_best - 1.3e-5 * u_scale,
            (best_x[2] - best_x[1]) + 1.1e-9)
    x_r, f_r, conv_r = _nelder_mead(
        f_slope, x0_r, steps=(1e-5, 1e-5 * u_scale, 1e-8),
        fatol=tol, xatol=_XATOL)
    if f_r < best_value:
        phi_r = _slope_to_angle(x_r[1])
        best_value, best_x, conv = f_r, (x_r[0], phi_r, phi_r + x_r[2]), conv_r

    return OptimizationResult(best_params=tuple(best_x),
                              best_value=best_value,
                              evaluations=bud.used, converged=conv)


def minimize_np(config: ChainConfig, bracket: tuple = (1e2, 1e12),
                tol: float = 1e-5, budget: int = 2_000_000,
                angle_tol: float = 1e-10) -> OptimizationResult:
    """Minimizes the squared error jointly over angles and probe power.

    Golden-section search on ``log n_p`` of the angle-minimized error;
    the ``n_p`` and angle fields of ``config`` are ignored.

    Args:
        config: Chain parameters; only the Kerr coefficients,
            efficiency and squeeze strengths are used.
        bracket: ``(low, high)`` probe-photon-number bracket assumed
            to span the optimum.
        tol: Convergence tolerance on ``log n_p`` (roughly the
            relative tolerance on ``n_p``).
        budget: Hard cap on total objective evaluations, including
            those spent inside the angle searches.
        angle_tol: Value tolerance passed to the inner angle search.

    Returns:
        An :class:`OptimizationResult` with
        ``best_params = (theta, phi, zeta, n_p)``.

    Raises:
        NoFiniteOptimumError: If the minimum lands at a bracket edge,
            which means the objective is monotone across the bracket
            (or the bracket is too tight).
        NonConvergenceError: If the evaluation budget is exhausted.
    """
    lo, hi = bracket
    if not (0.0 < lo < hi and math.isfinite(hi)):
        raise ValueError(f"bracket must satisfy 0 < low < high, got {bracket!r}")
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol!r}")

    total = 0

    def angle_min(x: float):
        nonlocal total
        result = minimize_angles(config.replace(n_p=math.exp(x)),
                                 tol=angle_tol,
                                 budget=budget - total)
        total += result.evaluations
        return result

    x_lo = math.log(lo)
    x_hi = math.log(hi)
    a, b = x_lo, x_hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    res_c = angle_min(c)
    res_d = angle_min(d)
    while b - a > tol:
        if res_c.best_value <= res_d.best_value:
            b, d, res_d = d, c, res_c
            c = b - _INVPHI * (b - a)
            res_c = angle_min(c)
        else:
            a, c, res_c = c, d, res_d
            d = a + _INVPHI * (b - a)
            res_d = angle_min(d)
    if res_c.best_value <= res_d.best_value:
        x_best, res_best = c, res_c
    else:
        x_best, res_best = d, res_d

    edge_tol = max(10.0 * tol, 1e-3)
    if x_best - x_lo <= edge_tol or x_hi - x_best <= edge_tol:
        raise NoFiniteOptimumError(
            "angle-minimized error is monotone across the probe-power "
            f"bracket [{lo:g}, {hi:g}] (argmin at n_p = {math.exp(x_best):g}); "
            "widen the bracket or fix n_p explicitly"
        )

    theta, phi, zeta = res_best.best_params
    return OptimizationResult(
        best_params=(theta, phi, zeta, math.exp(x_best)),
        best_value=res_best.best_value,
        evaluations=total,
        converged=res_best.converged and (b - a) <= tol,
    )
