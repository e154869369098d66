import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from thetadft.series import (
    TaylorSeries1,
    TaylorSeries2,
    exp_bilinear,
    extract_mixed_derivative,
    series_exp,
    series_mul,
    theta_taylor,
)
from thetadft.theta import UnsupportedOrderError, theta2, theta3, theta3_z_derivative, theta4

from conftest import rel


def test_zero_scale_gives_constant():
    s = theta_taylor(0.2, 0.0, 1j, 5)
    assert rel(s.coeffs[0], theta3(0.2, 1j)) <= 1e-14
    assert np.all(s.coeffs[1:] == 0)


def test_order_zero():
    s = theta_taylor(0.3 + 0.1j, 1.0, 0.5j, 0)
    assert s.order == 0
    assert rel(s.coeffs[0], theta3(0.3 + 0.1j, 0.5j)) <= 1e-14


def test_second_coefficient_matches_derivative():
    s = theta_taylor(0, 1.0, 1j, 4)
    assert abs(s.coeffs[2] - theta3_z_derivative(0, 1j, 2) / 2) <= 1e-11 * abs(s.coeffs[2])


@pytest.mark.parametrize("shift,scale,tau", [
    (0.1, 0.7, 1j), (0.3 + 0.2j, -0.4 + 0.1j, 0.5 + 0.8j), (0.25, 0.5, 0.03j), (0.4, 1j, 0.2j),
])
def test_coefficients_match_scaled_derivatives(shift, scale, tau):
    s = theta_taylor(shift, scale, tau, 8)
    for p in range(9):
        expected = theta3_z_derivative(shift, tau, p) * scale**p / math.factorial(p)
        assert abs(s.coeffs[p] - expected) <= 1e-10 * max(abs(expected), abs(s.coeffs[0]))


@pytest.mark.parametrize("kind,fn", [(2, theta2), (4, theta4)])
def test_other_kinds_by_finite_difference(kind, fn):
    shift, scale, tau, h = 0.15, 0.3, 0.7j, 1e-4
    s = theta_taylor(shift, scale, tau, 2, kind=kind)
    assert rel(s.coeffs[0], fn(shift, tau)) <= 1e-13
    d1 = (fn(shift + scale * h, tau) - fn(shift - scale * h, tau)) / (2 * h)
    assert abs(s.coeffs[1] - d1) <= 1e-6 * abs(s.coeffs[0])


def test_order_cap():
    with pytest.raises(UnsupportedOrderError):
        theta_taylor(0, 1, 1j, 17)


def test_multiply_by_one_is_identity():
    a = TaylorSeries1([1, 2, 3])
    assert np.array_equal((a * TaylorSeries1([1, 0, 0])).coeffs, a.coeffs)
    b = TaylorSeries2(np.arange(9).reshape(3, 3))
    one = TaylorSeries2(np.zeros((3, 3)))
    one.coeffs[0, 0] = 1
    assert np.array_equal((b * one).coeffs, b.coeffs)


def test_exp_bilinear_zero():
    e = exp_bilinear(0, (3, 3))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(e.coeffs, expected)


def test_hand_product():
    one_t = TaylorSeries2([[1, 0], [1, 0]])
    one_s = TaylorSeries2([[1, 1], [0, 0]])
    assert np.array_equal(series_mul(one_t, one_s).coeffs, np.ones((2, 2)))


@pytest.mark.parametrize("n,m,expected", [(0, 0, 1), (1, 1, -2), (2, 2, 8), (2, 1, 0)])
def test_mixed_derivatives_of_exp_bilinear(n, m, expected):
    assert extract_mixed_derivative(exp_bilinear(-2, (3, 3)), n, m) == expected


def test_mixed_derivative_out_of_range():
    with pytest.raises(ValueError):
        extract_mixed_derivative(exp_bilinear(1, (2, 2)), 3, 0)


def test_series_exp_matches_exponential():
    # exp(2 x t - t^2) generates Hermite polynomials; at x = 0 the series is exp(-t^2)
    s = series_exp([0, 0, -1], 8)
    expected = [(-1) ** (p // 2) / math.factorial(p // 2) if p % 2 == 0 else 0 for p in range(9)]
    assert np.allclose(s.coeffs, expected, rtol=0, atol=1e-15)


def test_lift_substitution():
    # g(t) = exp(t): g(2t - s) = exp(2t) exp(-s)
    g = series_exp([0, 1], 6)
    lifted = g.lift(2, -1, (3, 3))
    direct = series_exp([0, 2], 3).coeffs[:, None] * series_exp([0, -1], 3).coeffs[None, :]
    assert np.allclose(lifted.coeffs, direct, rtol=1e-14, atol=0)


coef_grids = arrays(np.float64, (5, 5), elements=st.floats(-10, 10))


@given(coef_grids, coef_grids, coef_grids)
@settings(max_examples=60, deadline=None)
def test_bivariate_product_commutes_and_associates(a, b, c):
    A, B, C = TaylorSeries2(a), TaylorSeries2(b), TaylorSeries2(c)
    scale = 1 + np.max(np.abs(a)) * np.max(np.abs(b)) * np.max(np.abs(c)) * 100
    assert np.max(np.abs((A * B).coeffs - (B * A).coeffs)) <= 1e-13 * scale
    assert np.max(np.abs(((A * B) * C).coeffs - (A * (B * C)).coeffs)) <= 1e-13 * scale


@given(arrays(np.float64, 9, elements=st.floats(-10, 10)), arrays(np.float64, 9, elements=st.floats(-10, 10)))
@settings(max_examples=60, deadline=None)
def test_univariate_product_commutes(a, b):
    A, B = TaylorSeries1(a), TaylorSeries1(b)
    assert np.max(np.abs((A * B).coeffs - (B * A).coeffs)) <= 1e-13 * (1 + 100 * np.max(np.abs(a)) * np.max(np.abs(b)))
