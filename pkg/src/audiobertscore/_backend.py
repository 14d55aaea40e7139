"""Selects the scoring kernel backend at import time.

Prefers the compiled extension; falls back to the NumPy implementation.
Set AUDIOBERTSCORE_PURE_PYTHON=1 to force the fallback (backend parity
tests and the benchmark do this).
"""

import os

if os.environ.get("AUDIOBERTSCORE_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels

    HAVE_COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        HAVE_COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        HAVE_COMPILED = False


def backend_name() -> str:
    return kernels.NAME
