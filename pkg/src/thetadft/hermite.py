"""Physicists' Hermite polynomials."""

from __future__ import annotations

import math

import numpy as np

from .report import ResidualReport

MAX_DEGREE = 64


def hermite(n: int, x):
    """H_n(x) from H_{k+1} = 2x H_k - 2k H_{k-1}, H_0 = 1, H_1 = 2x.

    Accepts scalars or arrays; returns the same shape as ``x``.
    """
    if not 0 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in [0, {MAX_DEGREE}], got {n}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for k in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return cur if cur.ndim else float(cur)


def hermite_generating_check(n: int, x: float, order: int | None = None,
                             tol: float = 1e-9) -> ResidualReport:
    """Compare hermite(n, x) with n! [t^n] exp(2 x t - t^2)."""
    from .series import series_exp

    order = n if order is None else order
    if not n <= order <= 20:
        raise ValueError(f"need n <= order <= 20, got n={n}, order={order}")
    gen = series_exp(np.array([0.0, 2.0 * x, -1.0]), order)
    rhs = gen.derivative(n).real
    lhs = hermite(n, x)
    residual = abs(lhs - rhs) / max(1.0, abs(lhs))
    return ResidualReport("hermite_generating", {"n": n, "x": x, "order": order},
                          lhs, rhs, residual, tol)
