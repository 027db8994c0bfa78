"""Backend selection for the grid kernels.

The compiled extension ``_kernels`` is used when it imports; otherwise, or
when ``HOMFINSLER_PURE_PYTHON`` is set, the numpy implementation in
``_kernels_py`` is used.  Both expose the same three functions.
"""

import os

import numpy as np

from . import _kernels_py

FIELDS = ("Q", "Qp", "Qpp", "Delta", "psi", "Phi")

_ext = None
if not os.environ.get("HOMFINSLER_PURE_PYTHON"):
    try:
        from . import _kernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"
_impl = _ext if _ext is not None else _kernels_py


def available_backends() -> dict:
    out = {"python": _kernels_py}
    if _ext is not None:
        out["cython"] = _ext
    return out


def _prep(s, b2, n):
    s, b2, n = np.broadcast_arrays(np.asarray(s, float), np.asarray(b2, float), np.asarray(n, float))
    shape = s.shape
    flat = [np.array(a, dtype=np.float64).ravel() for a in (s, b2, n)]  # broadcast views are read-only
    return shape, flat


def generic_jets(coeffs, s, b2, n, backend=None):
    """Array of shape s.shape + (6, 3): fields x (value, d/ds, d2/ds2)."""
    impl = available_backends()[backend] if backend else _impl
    shape, (s, b2, n) = _prep(s, b2, n)
    c = np.ascontiguousarray(np.asarray(coeffs, dtype=np.float64))
    return impl.generic_jets(c, s, b2, n).reshape(shape + (6, 3))


def square_closed(s, b2, n, backend=None):
    impl = available_backends()[backend] if backend else _impl
    shape, (s, b2, n) = _prep(s, b2, n)
    return impl.square_closed(s, b2, n).reshape(shape + (6,))


def randers_square_closed(s, b2, n, backend=None):
    impl = available_backends()[backend] if backend else _impl
    shape, (s, b2, n) = _prep(s, b2, n)
    return impl.randers_square_closed(s, b2, n).reshape(shape + (6,))
