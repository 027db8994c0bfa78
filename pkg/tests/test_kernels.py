import os
import subprocess
import sys

import numpy as np
import pytest

from homfinsler import _kernels_py, kernels
from homfinsler.metric import PhiSpec

HAS_EXT = "cython" in kernels.available_backends()
needs_ext = pytest.mark.skipif(not HAS_EXT, reason="compiled extension not built")


def _grid(m=2000, seed=1, bmax=0.35):
    rng = np.random.default_rng(seed)
    b = rng.uniform(0.0, bmax, m)
    return b * rng.uniform(-1, 1, m), b * b, rng.integers(2, 7, m).astype(float)


def test_fields_order():
    assert kernels.FIELDS == ("Q", "Qp", "Qpp", "Delta", "psi", "Phi")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def _rel(a, b):
    scale = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(invalid="ignore"):
        r = np.abs(a - b) / scale
    r[scale == 0] = 0
    return r


@needs_ext
@pytest.mark.parametrize("family", ["square", "randers_square", "riemannian"])
def test_generic_backends_agree(family):
    s, b2, n = _grid()
    c = PhiSpec.named(family).float_coeffs
    a = kernels.generic_jets(c, s, b2, n, backend="cython")
    p = kernels.generic_jets(c, s, b2, n, backend="python")
    assert _rel(a, p).max() < 1e-13


@needs_ext
def test_closed_backends_agree():
    s, b2, n = _grid()
    for fn in (kernels.square_closed, kernels.randers_square_closed):
        a, p = fn(s, b2, n, backend="cython"), fn(s, b2, n, backend="python")
        assert _rel(a, p).max() < 1e-14


def test_broadcasting_shapes():
    out = kernels.generic_jets((1.0, 2.0, 1.0), np.zeros((3, 4)), 0.25, 3)
    assert out.shape == (3, 4, 6, 3)
    assert kernels.square_closed(0.1, 0.25, 3).shape == (6,)


def test_python_module_direct():
    s = np.array([0.0])
    out = _kernels_py.square_closed(s, np.array([0.25]), np.array([2.0]))
    np.testing.assert_allclose(out[0], [2, 2, 4, 1.5, 2 / 3, -9])


def test_pure_python_env_selects_fallback():
    code = "from homfinsler import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, HOMFINSLER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
