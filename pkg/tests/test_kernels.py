"""Backend contract: the compiled and NumPy kernels agree and are deterministic."""

import numpy as np
import pytest

from oospred import _recursive_py
from oospred import kernels

try:
    from oospred import _recursive

    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False

BACKENDS = [_recursive_py] + ([_recursive] if HAVE_EXT else [])


def test_some_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.skipif(not HAVE_EXT, reason="compiled extension unavailable")
def test_backends_agree(rng):
    for _ in range(20):
        n = int(rng.integers(20, 200))
        k0 = int(rng.integers(2, n - 2))
        y = rng.standard_normal(n)
        x = np.cumsum(rng.standard_normal(n))  # persistent regressor
        b_c = _recursive.benchmark_errors(y, k0)
        b_p = _recursive_py.benchmark_errors(y, k0)
        np.testing.assert_allclose(b_c, b_p, rtol=1e-10, atol=1e-12)
        e_c, f_c = _recursive.marginal_errors(y, x, k0)
        e_p, f_p = _recursive_py.marginal_errors(y, x, k0)
        np.testing.assert_allclose(e_c, e_p, rtol=1e-10, atol=1e-12)
        np.testing.assert_array_equal(f_c, f_p)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.split(".")[-1])
def test_rerun_is_bit_identical(impl, rng):
    y = rng.standard_normal(300)
    x = rng.standard_normal(300)
    e1, f1 = impl.marginal_errors(y, x, 40)
    e2, f2 = impl.marginal_errors(y, x, 40)
    assert np.array_equal(e1, e2)
    assert np.array_equal(f1, f2)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.split(".")[-1])
def test_persistent_regressor_precision(impl, rng):
    # Sum of x^2 grows ~ t * var(x); near-unit-root levels stress the solve.
    n = 3000
    v = rng.standard_normal(n)
    x = np.empty(n)
    x[0] = v[0]
    for t in range(1, n):
        x[t] = 0.999 * x[t - 1] + v[t]
    y = 0.3 * np.roll(x, 1) + rng.standard_normal(n)
    y[0] = rng.standard_normal()
    errors, flags = impl.marginal_errors(y, x, 500)
    assert not flags.any()
    # spot check a few origins against the from-scratch solve
    for t in (500, 1500, 2999):
        design = np.column_stack([np.ones(t - 1), x[: t - 1]])
        coef, *_ = np.linalg.lstsq(design, y[1:t], rcond=None)
        want = y[t] - (coef[0] + coef[1] * x[t - 1])
        got = errors[t - 500]
        assert abs(got - want) <= 1e-8 * max(1.0, abs(want))
