"""Kernel backend selection.

The compiled Cython core is preferred; the NumPy twin is used when the
extension is missing or when EXPRATIO_PURE_PYTHON=1 is set.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("EXPRATIO_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py


def backend_name() -> str:
    return kernels.BACKEND


def available_backends():
    """All importable kernel modules (used by tests and the benchmark)."""
    mods = {_kernels_py.BACKEND: _kernels_py}
    try:
        from . import _kernels

        mods[_kernels.BACKEND] = _kernels
    except ImportError:
        pass
    return mods
