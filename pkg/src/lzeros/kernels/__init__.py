"""Hurwitz zeta evaluation kernels: compiled extension with numpy fallback.

The hot loop of the whole package is zeta(1/2 + it, a/q) on dense height
grids. Two interchangeable backends implement it:

  - _em_cy: Cython extension, per-point Euler-Maclaurin loop;
  - _em_numpy: pure numpy, points bucketed by term count.

Selection happens once at import: the extension if it built, else numpy.
Set LZEROS_FORCE_NUMPY=1 to force the fallback (used by the benchmark and
the backend-equivalence tests). Both backends implement the same formula;
they agree to ~1e-13 relative (summation order differs).

Public surface:
    backend_name() -> "cython" | "numpy"
    hurwitz_grid(sigma, ts, a) -> complex128 array
    hurwitz_point(s, a) -> complex
"""

from __future__ import annotations

import os

from . import _em_numpy

_impl = _em_numpy
if not os.environ.get("LZEROS_FORCE_NUMPY"):
    try:
        from . import _em_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _em_numpy

numpy_backend = _em_numpy
active_backend = _impl

hurwitz_grid = _impl.hurwitz_grid
hurwitz_point = _impl.hurwitz_point


def backend_name() -> str:
    """Which kernel is live: 'cython' (compiled) or 'numpy' (fallback)."""
    return _impl.BACKEND


__all__ = ["hurwitz_grid", "hurwitz_point", "backend_name",
           "numpy_backend", "active_backend"]
