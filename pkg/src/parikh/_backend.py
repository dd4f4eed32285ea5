"""Kernel backend selection.

The compiled extension is preferred when present; setting the environment
variable ``PARIKH_PURE_PYTHON`` to a non-empty value forces the pure-Python
kernels (useful for benchmarking and debugging).
"""

import os

if os.environ.get("PARIKH_PURE_PYTHON"):
    from parikh import _kernels_py as kernels
else:
    try:
        from parikh import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from parikh import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    return kernels.BACKEND
