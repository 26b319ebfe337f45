"""Kernel backend selection.

The exact-search kernel exists twice: a numba @njit build and a pure-Python
reference. ZDGPOSET_PURE_PYTHON=1 forces the Python path; otherwise numba is
used when importable. Both explore identical search trees.
"""

import os

_flag = os.environ.get("ZDGPOSET_PURE_PYTHON", "").strip()
PURE_PYTHON = _flag not in ("", "0")

if PURE_PYTHON:
    from ._kernels_py import solve_coloring
    BACKEND = "python"
else:
    try:
        from ._kernels_numba import solve_coloring
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba
        from ._kernels_py import solve_coloring
        BACKEND = "python"

__all__ = ["solve_coloring", "BACKEND", "PURE_PYTHON"]
