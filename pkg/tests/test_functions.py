import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from tfo import functions as fn

CATALOG = [
    fn.gaussian(0.5), fn.gaussian(1.3), fn.hermite_function(0), fn.hermite_function(5),
    fn.exp_decay(), fn.xi2_exp(), fn.xi_exp(), fn.power(2.5), fn.parabola(2.0),
    fn.log_endpoint(1.0), fn.inverse_endpoint(1.0), fn.reciprocal(),
]


@pytest.mark.parametrize("x", CATALOG, ids=lambda x: x.name)
@pytest.mark.parametrize("t", [0.2, 0.55])
def test_derivatives_match_finite_differences(x, t):
    h = 1e-4
    d1 = (x(t + h) - x(t - h)) / (2 * h)
    d2 = (x(t + h) - 2 * x(t) + x(t - h)) / (h * h)
    assert x.df(t) == pytest.approx(d1, rel=1e-6, abs=1e-8)
    assert x.d2f(t) == pytest.approx(d2, rel=1e-4, abs=1e-5)


def test_hermite_values_match_scipy():
    t = np.linspace(-5, 5, 11)
    H = fn.hermite_values(8, t)
    for k in range(8):
        ref = special.eval_hermite(k, t) * np.exp(-t * t / 2) / math.sqrt(2**k * math.factorial(k) * math.sqrt(math.pi))
        assert np.max(np.abs(H[k] - ref)) <= 1e-13


def test_hermite_values_orthonormal():
    x, w = np.polynomial.hermite.hermgauss(60)
    H = fn.hermite_values(20, x) * np.exp(x * x / 2)
    G = (H * w) @ H.T
    assert np.max(np.abs(G - np.eye(20))) <= 1e-12


@given(st.floats(-3, 3), st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_scaled(t, c):
    x = fn.gaussian()
    y = x.scaled(c)
    assert y(t) == c * x(t) and y.df(t) == c * x.df(t) and y.d2f(t) == c * x.d2f(t)


def test_scalar_and_array_inputs():
    h = fn.hermite_function(2)
    assert np.ndim(h(0.3)) == 0
    assert h(np.array([0.1, 0.2])).shape == (2,)
    assert fn.constant(2.0)(np.zeros(3)).tolist() == [2.0, 2.0, 2.0]
