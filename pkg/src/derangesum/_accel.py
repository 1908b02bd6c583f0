"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python twin.  Setting ``DERANGESUM_PURE_PYTHON=1`` forces the fallback.
"""

import os

from derangesum import _kernels_py

PURE_ENV = "DERANGESUM_PURE_PYTHON"

kernels = _kernels_py
BACKEND = "python"

if os.environ.get(PURE_ENV, "") in ("", "0"):
    try:
        from derangesum import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

count_derangements = kernels.count_derangements
adaptive_simpson = kernels.adaptive_simpson
QuadratureError = _kernels_py.QuadratureError
