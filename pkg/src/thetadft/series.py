"""Truncated Taylor series in one (t) or two (t, s) formal variables.

Derivatives at the origin of products such as
theta3(a t + b s, tau) * theta3(c t + d s, tau) * exp(-2 t s) are read off
the coefficient grid, so no symbolic algebra is needed.
"""

from __future__ import annotations

import math

import numpy as np

from .theta import (
    DEFAULT_POLICY,
    MAX_DERIVATIVE_ORDER,
    MODULAR_SWITCH,
    TruncationPolicy,
    UnsupportedOrderError,
    _check_tau,
    csum,
    reduce_quasi_period,
    summation_window,
)


class TaylorSeries1:
    """Coefficients c_p of t^p for p = 0..order."""

    def __init__(self, coeffs):
        self.coeffs = np.array(coeffs, dtype=complex).reshape(-1)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: TaylorSeries1) -> TaylorSeries1:
        if np.isscalar(other):
            return TaylorSeries1(self.coeffs * other)
        P = min(self.order, other.order)
        return TaylorSeries1(np.convolve(self.coeffs[: P + 1], other.coeffs[: P + 1])[: P + 1])

    __rmul__ = __mul__

    def __add__(self, other: TaylorSeries1) -> TaylorSeries1:
        P = min(self.order, other.order)
        return TaylorSeries1(self.coeffs[: P + 1] + other.coeffs[: P + 1])

    def derivative(self, n: int) -> complex:
        """n-th derivative at t = 0."""
        if not 0 <= n <= self.order:
            raise ValueError(f"derivative {n} beyond series order {self.order}")
        return self.coeffs[n] * math.factorial(n)

    def lift(self, a: complex, b: complex, orders: tuple[int, int]) -> TaylorSeries2:
        """The bivariate series of g(a t + b s), where self is g."""
        P, Q = orders
        if P + Q > self.order:
            raise ValueError(f"orders {orders} need a univariate order >= {P + Q}")
        grid = np.zeros((P + 1, Q + 1), dtype=complex)
        for p in range(P + 1):
            for q in range(Q + 1):
                grid[p, q] = self.coeffs[p + q] * math.comb(p + q, q) * a**p * b**q
        return TaylorSeries2(grid)


class TaylorSeries2:
    """Coefficients c_{p,q} of t^p s^q on a (P+1) x (Q+1) grid."""

    def __init__(self, coeffs):
        self.coeffs = np.array(coeffs, dtype=complex)
        if self.coeffs.ndim != 2:
            raise ValueError("bivariate series needs a 2-D coefficient grid")

    @property
    def orders(self) -> tuple[int, int]:
        P, Q = self.coeffs.shape
        return P - 1, Q - 1

    def __mul__(self, other: TaylorSeries2) -> TaylorSeries2:
        if np.isscalar(other):
            return TaylorSeries2(self.coeffs * other)
        P = min(self.orders[0], other.orders[0])
        Q = min(self.orders[1], other.orders[1])
        a = self.coeffs[: P + 1, : Q + 1]
        b = other.coeffs[: P + 1, : Q + 1]
        out = np.zeros((P + 1, Q + 1), dtype=complex)
        for p in range(P + 1):
            for q in range(Q + 1):
                out[p:, q:] += a[p, q] * b[: P + 1 - p, : Q + 1 - q]
        return TaylorSeries2(out)

    __rmul__ = __mul__

    def __add__(self, other: TaylorSeries2) -> TaylorSeries2:
        P = min(self.orders[0], other.orders[0])
        Q = min(self.orders[1], other.orders[1])
        return TaylorSeries2(self.coeffs[: P + 1, : Q + 1] + other.coeffs[: P + 1, : Q + 1])

    def __sub__(self, other: TaylorSeries2) -> TaylorSeries2:
        return self + other * -1.0


def series_mul(a, b):
    """Cauchy product truncated to the smaller carrier."""
    return a * b


def series_exp(poly, order: int) -> TaylorSeries1:
    """Taylor series of exp(p(t)) for a polynomial (or series) p."""
    p = np.asarray(poly, dtype=complex)
    out = np.zeros(order + 1, dtype=complex)
    out[0] = np.exp(p[0])
    for k in range(1, order + 1):
        j = np.arange(1, min(k, len(p) - 1) + 1)
        out[k] = np.sum(j * p[j] * out[k - j]) / k
    return TaylorSeries1(out)


def exp_bilinear(c: complex, orders: tuple[int, int]) -> TaylorSeries2:
    """Series of exp(c t s): entry (p, p) = c^p / p!."""
    P, Q = orders
    grid = np.zeros((P + 1, Q + 1), dtype=complex)
    for p in range(min(P, Q) + 1):
        grid[p, p] = c**p / math.factorial(p)
    return TaylorSeries2(grid)


def extract_mixed_derivative(series: TaylorSeries2, n: int, m: int) -> complex:
    """d^n/dt^n d^m/ds^m of the series at t = s = 0."""
    P, Q = series.orders
    if not (0 <= n <= P and 0 <= m <= Q):
        raise ValueError(f"derivative ({n}, {m}) beyond series orders {series.orders}")
    return series.coeffs[n, m] * math.factorial(n) * math.factorial(m)


def _direct_coeffs(shift, scale, tau, order, policy):
    boost = max(1.0, abs(scale)) ** order
    window_policy = TruncationPolicy(policy.tol / boost, policy.max_terms)
    a = summation_window(shift, tau, order, window_policy)
    term = np.exp(1j * np.pi * tau * a * a + 2j * np.pi * a * shift)
    step = 2j * np.pi * a * scale
    coeffs = np.empty(order + 1, dtype=complex)
    for p in range(order + 1):
        if p:
            term = term * step / p
        coeffs[p] = csum(term)
    return coeffs


def _theta_parts(shift, scale, tau, order, policy, route):
    # theta3(shift + scale t) = exp(logpoly(t)) * coeffs(t)
    red = reduce_quasi_period(shift, tau)
    logpoly = np.array([red.log_prefactor, -2j * np.pi * red.n * scale, 0.0], dtype=complex)
    shift = red.z0
    inv = -1.0 / tau
    if route == "auto" and tau.imag < MODULAR_SWITCH and inv.imag > tau.imag:
        logpoly += [
            -0.5 * np.log(-1j * tau) - 1j * np.pi * shift**2 / tau,
            -2j * np.pi * shift * scale / tau,
            -1j * np.pi * scale**2 / tau,
        ]
        inner, coeffs = _theta_parts(shift / tau, scale / tau, inv, order, policy, "series")
        return logpoly + inner, coeffs
    return logpoly, _direct_coeffs(shift, scale, tau, order, policy)


def theta_taylor(shift: complex, scale: complex, tau: complex, order: int, kind: int = 3,
                 policy: TruncationPolicy = DEFAULT_POLICY, route: str = "auto") -> TaylorSeries1:
    """Taylor series in t of theta_kind(shift + scale t, tau), kind in {2, 3, 4}."""
    if order > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(f"order {order} exceeds cap {MAX_DERIVATIVE_ORDER}")
    if kind not in (2, 3, 4):
        raise ValueError(f"kind must be 2, 3 or 4, got {kind}")
    shift, scale = complex(shift), complex(scale)
    tau = _check_tau(tau)
    pre = np.zeros(3, dtype=complex)
    if kind == 4:
        shift += 0.5
    elif kind == 2:
        pre[:2] = [1j * np.pi * (tau / 4 + shift), 1j * np.pi * scale]
        shift += tau / 2
    logpoly, coeffs = _theta_parts(shift, scale, tau, order, policy, route)
    logpoly = logpoly + pre
    if order == 0 or not logpoly[1:].any():
        return TaylorSeries1(coeffs * np.exp(logpoly[0]))
    # constant factor applied last
    envelope = series_exp(np.concatenate([[0.0], logpoly[1:]]), order)
    return TaylorSeries1((envelope * TaylorSeries1(coeffs)).coeffs * np.exp(logpoly[0]))
