"""Backend selection for the numerical kernels.

The compiled extension is used when it imports cleanly; otherwise the
pure-Python twins are used. Set ``ZESTSIM_PURE_PYTHON=1`` to force the
fallback (the benchmark and the parity tests do this explicitly).
"""
import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("ZESTSIM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

rk4_step = _impl.rk4_step
scan_min_separation = _impl.scan_min_separation


def polyline_nearest(px, py, xs, ys):
    """Nearest point on a polyline given as float64 coordinate arrays."""
    return _impl.polyline_nearest(float(px), float(py), xs, ys)


__all__ = ["BACKEND", "rk4_step", "scan_min_separation", "polyline_nearest"]
