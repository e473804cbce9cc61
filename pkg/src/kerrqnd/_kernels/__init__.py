"""Kernel backend selection for the chain-error objective.

Imports the compiled extension when present, otherwise the pure-Python
fallback.  Setting the environment variable ``KERRQND_FORCE_PURE=1``
skips the extension, which is how the benchmark and the backend
cross-checks exercise both implementations.
"""

import os

if os.environ.get("KERRQND_FORCE_PURE") == "1":
    from . import _fallback as _impl

    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _fallback as _impl  # type: ignore[no-redef]

        BACKEND = "pure"

chain_error_sq = _impl.chain_error_sq
chain_error_sq_slope = _impl.chain_error_sq_slope
chain_error_sq_batch = _impl.chain_error_sq_batch

__all__ = ["BACKEND", "chain_error_sq", "chain_error_sq_slope",
           "chain_error_sq_batch"]
