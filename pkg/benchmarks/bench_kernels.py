"""Timing comparison of the compiled and pure-Python error kernels.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends implement the same arithmetic step for step (that is a
correctness requirement, see ``tests/test_kernels.py``), so the ratio
reported here is interpreter overhead only.  The scalar entry points
dominate the Nelder-Mead simplex search; the batch entry point is the
16^3 coarse grid that seeds it.
"""

import argparse
import math
import time

import numpy as np

from kerrqnd._kernels import _fallback

try:
    from kerrqnd._kernels import _core
except ImportError:
    _core = None

# Representative operating point: 10 dB squeeze, 40 dB amplification,
# optimal angles at the optimal probe photon number.
POINT = dict(n_p=11162220.085951209, gamma_x=0.85e-5, gamma_s=0.425e-5,
             eta=0.9, r=1.1512925464970228, big_r=4.6051701859880914)
THETA = 3.1310521184335447
PHI = ZETA = 3.1310521184345230
SLOPE = 1.0 / math.tan(PHI)


def _best_of(fn, repeat: int) -> float:
    """Best per-call time over five timing passes, in seconds."""
    best = math.inf
    for _ in range(5):
        start = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - start) / repeat)
    return best


def bench_backend(mod, repeat: int, grid) -> dict:
    thetas, phis, zetas = grid
    return {
        "scalar": _best_of(
            lambda: mod.chain_error_sq(THETA, PHI, ZETA, **POINT), repeat),
        "slope": _best_of(
            lambda: mod.chain_error_sq_slope(THETA, SLOPE, 0.0, **POINT),
            repeat),
        "batch": _best_of(
            lambda: mod.chain_error_sq_batch(thetas, phis, zetas, **POINT),
            max(1, repeat // 100)) / len(thetas),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20000,
                        help="scalar calls per timing pass (default 20000)")
    args = parser.parse_args()

    axis = np.linspace(0.0, math.pi, 16, endpoint=False)
    mesh = np.meshgrid(axis, axis, axis, indexing="ij")
    grid = tuple(np.ascontiguousarray(m.ravel()) for m in mesh)

    results = {"pure": bench_backend(_fallback, args.repeat, grid)}
    if _core is not None:
        results["compiled"] = bench_backend(_core, args.repeat, grid)
    else:
        print("compiled extension not importable; timing the fallback only")

    names = {"scalar": "chain_error_sq (per call)",
             "slope": "chain_error_sq_slope (per call)",
             "batch": f"chain_error_sq_batch (per point, n={len(grid[0])})"}
    for key, label in names.items():
        line = f"{label:<42}"
        for backend in ("pure", "compiled"):
            if backend in results:
                line += f"  {backend} {results[backend][key] * 1e9:9.1f} ns"
        if "compiled" in results:
            ratio = results["pure"][key] / results["compiled"][key]
            line += f"  speedup {ratio:5.1f}x"
        print(line)


if __name__ == "__main__":
    main()
