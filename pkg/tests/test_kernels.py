import numpy as np
import pytest

from mtzeta import kernels
from mtzeta.kernels import available_backends, get_backend

BACKENDS = available_backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in ("cython", "python")


def test_unknown_backend():
    with pytest.raises(ValueError):
        get_backend("fortran")


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("args", [(1.5, 2.0, 3.7, 24, 8), (0.0, 3.0, 0.25, 20, 8), (-0.5, 2.5, 12.0, 30, 6)])
def test_inner_sum_parity(args):
    a = get_backend("python").inner_sum(*args)
    b = get_backend("cython").inner_sum(*args)
    np.testing.assert_allclose(np.ravel(a), np.ravel(b), rtol=1e-14, atol=0)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("args", [(1.0, 2.0, 1.0, 1.0, 40, 18, 8), (2.5, 3.0, 0.5, 0.2, 200, 20, 8)])
def test_direct_block_parity(args):
    a = get_backend("python").direct_block(*args)
    b = get_backend("cython").direct_block(*args)
    np.testing.assert_allclose(np.ravel(a), np.ravel(b), rtol=1e-13, atol=1e-300)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("s", [-1.0, 0.5, 2.0, 3.5])
def test_polylog_parity(s):
    y = np.linspace(0.5, 800.0, 97)
    a = get_backend("python").polylog_series(s, y)
    b = get_backend("cython").polylog_series(s, y)
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=0)


def test_pure_python_selection(monkeypatch):
    import importlib

    monkeypatch.setenv("MTZETA_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("MTZETA_PURE_PYTHON")
        importlib.reload(kernels)
