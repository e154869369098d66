"""Inner products of the DFT eigenstates and how far they are from orthogonal.

Eigenvectors of a unitary map with different eigenvalues are orthogonal,
so (f_n, f_m) = 0 whenever n and m differ mod 4. Pairs with n = m (mod 4)
share an eigenvalue and nothing forces them to be orthogonal; their
normalised overlap is the ``conjecture_violation`` of a dimension.

Closed forms. With a = eps / pi = sqrt(2 / (pi N)) and states normalised
as the plain comb f_n(j) = sum_a exp(-pi/N (aN+j)^2) H_n(eps (aN+j)):

    even N:  (f_n, f_m) = sqrt(2/N) D [theta3(i a (t+s), 2i/N) theta3(a (t-s), 2i/N) e^{-2ts}]
    odd N:   the bracket gains - 1/2 theta4(i a (t+s)/2, i/2N) theta4(a (t-s)/2, i/2N) e^{-2ts}

where D = d^n/dt^n d^m/ds^m at t = s = 0. The "dual" route evaluates the
same quantities after the modular transform, where the Gaussian factors
combine to exp(2ts) exactly and no large terms cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigenstates import DegenerateStateError, eigenstate_direct, is_degenerate
from .series import exp_bilinear, extract_mixed_derivative, theta_taylor
from .theta import DEFAULT_POLICY, MAX_DERIVATIVE_ORDER, TruncationPolicy, csum, theta3_z_derivative


def _state(N, n, policy):
    f = eigenstate_direct(N, n, policy=policy)
    if is_degenerate(f):
        raise DegenerateStateError(f"f_{n} vanishes for N={N}")
    return f


def _scaled(value: complex, scale: float) -> complex:
    # componentwise, so every caller rounds identically
    return complex(value.real / scale, value.imag / scale)


def inner_product_direct(N: int, n: int, m: int,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """sum_j conj(f_n(j)) f_m(j) from the directly summed combs."""
    fn, fm = _state(N, n, policy), _state(N, m, policy)
    return csum(np.conj(fn.values) * fm.values)


def normalized_inner_product(N: int, n: int, m: int, normalization: str = "cosine",
                             policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(f_n, f_m) divided by ||f_n|| ||f_m|| ("cosine") or by (f_n, f_n) ("diagonal")."""
    fn, fm = _state(N, n, policy), _state(N, m, policy)
    value = csum(np.conj(fn.values) * fm.values)
    if normalization == "cosine":
        return _scaled(value, fn.norm * fm.norm)
    if normalization == "diagonal":
        return _scaled(value, fn.norm**2)
    raise ValueError(f"unknown normalization {normalization!r}")


def _check_orders(n, m):
    if n < 0 or m < 0:
        raise ValueError("indices must be non-negative")
    if n + m > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"n + m = {n + m} exceeds the derivative cap {MAX_DERIVATIVE_ORDER}")


def gram_closed_form(N: int, n: int, m: int, route: str = "dual",
                     policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(f_n, f_m) as a mixed t, s derivative of theta-function products.

    ``route="literal"`` expands the theta3/theta4 products at lattice
    parameters 2i/N and i/2N term by term; ``route="dual"`` uses the
    modular images at iN/2 and 2iN, which is the accurate choice once the
    overlap is many orders below the norms.
    """
    _check_orders(n, m)
    P, orders = n + m, (n, m)
    a = math.sqrt(2.0 / (math.pi * N))
    if route == "literal":
        tau = 2j / N
        bracket = (theta_taylor(0, 1j * a, tau, P, policy=policy).lift(1, 1, orders)
                   * theta_taylor(0, a, tau, P, policy=policy).lift(1, -1, orders))
        if N % 2:
            half = 1j / (2 * N)
            bracket = bracket - 0.5 * (
                theta_taylor(0, 0.5j * a, half, P, kind=4, policy=policy).lift(1, 1, orders)
                * theta_taylor(0, 0.5 * a, half, P, kind=4, policy=policy).lift(1, -1, orders))
        bracket = bracket * exp_bilinear(-2.0, orders)
    elif route == "dual":
        b = N * a / 2
        tau = 0.5j * N
        bracket = (N / 2) * (theta_taylor(0, b, tau, P, policy=policy).lift(1, 1, orders)
                             * theta_taylor(0, -1j * b, tau, P, policy=policy).lift(1, -1, orders))
        if N % 2:
            tau2 = 2j * N
            bracket = bracket - N * (
                theta_taylor(0, 2 * b, tau2, P, kind=2, policy=policy).lift(1, 1, orders)
                * theta_taylor(0, -2j * b, tau2, P, kind=2, policy=policy).lift(1, -1, orders))
        bracket = bracket * exp_bilinear(2.0, orders)
    else:
        raise ValueError(f"unknown route {route!r}")
    return math.sqrt(2.0 / N) * extract_mixed_derivative(bracket, n, m)


def f4_f0_closed(N: int, route: str = "lattice",
                 policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """(f_4, f_0) for even N.

    ``route="literal"`` evaluates
    sqrt(2/N) a^4 {2 th(0) th''''(0) - 6 th''(0)^2} with th = theta3(., 2i/N);
    the factor a^4 = (eps/pi)^4 is the chain rule for z = a t. The braces
    cancel to many digits for large N. ``route="lattice"`` writes the braces
    as (2 pi)^4 sum_{a,b} q^(a^2+b^2) Re((a + ib)^4) and applies two-dimensional
    Poisson summation (Re((a+ib)^4) is harmonic), which leaves a rapidly
    converging sum with no cancellation of leading terms.
    """
    if N % 2:
        raise ValueError(f"f4_f0_closed needs even N, got {N}")
    a = math.sqrt(2.0 / (math.pi * N))
    prefactor = math.sqrt(2.0 / N) * a**4
    if route == "literal":
        tau = 2j / N
        th0 = theta3_z_derivative(0, tau, 0, policy)
        th2 = theta3_z_derivative(0, tau, 2, policy)
        th4 = theta3_z_derivative(0, tau, 4, policy)
        return (prefactor * (2 * th0 * th4 - 6 * th2 * th2)).real
    if route == "lattice":
        reach = int(math.ceil(math.sqrt(2 * math.log(1 / policy.tol) / (math.pi * N)))) + 3
        k = np.arange(-reach, reach + 1, dtype=float)
        x, y = np.meshgrid(k, k)
        harmonic = x**4 - 6 * x * x * y * y + y**4
        terms = np.exp(-math.pi * N * (x * x + y * y) / 2) * harmonic
        braces = (2 * math.pi) ** 4 * (N / 2) ** 5 * math.fsum(terms.ravel())
        return prefactor * braces
    raise ValueError(f"unknown route {route!r}")


@dataclass
class GramReport:
    """Normalised Gram matrix of f_0..f_{n_max} in dimension N.

    Entries involving a degenerate (identically vanishing) state are nan
    and excluded from every maximum.
    """

    N: int
    indices: tuple[int, ...]
    normalized_gram: np.ndarray
    degenerate: tuple[int, ...]
    max_off_mod4: float
    conjecture_violation: float
    hermitian_error: float
    diagonal_error: float
    closed_form_error: float | None = None
    closed_form_route: str | None = None
    raw_gram: np.ndarray = field(default=None, repr=False)

    @property
    def k(self) -> int:
        """Parity of N (N = 2h + k)."""
        return self.N % 2

    def rows(self):
        """(N, n, m, entry, degenerate) for n >= m, sorted."""
        for i, n in enumerate(self.indices):
            for j, m in enumerate(self.indices[: i + 1]):
                yield self.N, n, m, complex(self.normalized_gram[i, j]), (
                    n in self.degenerate or m in self.degenerate)


def gram_report(N: int, n_max: int, cross_check: bool = True, route: str = "dual",
                policy: TruncationPolicy = DEFAULT_POLICY) -> GramReport:
    """Normalised Gram matrix for n, m <= min(n_max, N - 1)."""
    if n_max > 12:
        raise ValueError(f"n_max must be <= 12, got {n_max}")
    indices = tuple(range(min(n_max, N - 1) + 1))
    states = [eigenstate_direct(N, n, policy=policy) for n in indices]
    degenerate = tuple(n for n, f in zip(indices, states) if is_degenerate(f))
    size = len(indices)
    raw = np.full((size, size), np.nan, dtype=complex)
    gram = np.full((size, size), np.nan, dtype=complex)
    for i, fi in enumerate(states):
        for j, fj in enumerate(states):
            if indices[i] in degenerate or indices[j] in degenerate:
                continue
            raw[i, j] = csum(np.conj(fi.values) * fj.values)
            gram[i, j] = _scaled(complex(raw[i, j]), fi.norm * fj.norm)

    off, viol = 0.0, 0.0
    for i, n in enumerate(indices):
        for j, m in enumerate(indices):
            if i == j or np.isnan(gram[i, j]):
                continue
            if (n - m) % 4:
                off = max(off, abs(gram[i, j]))
            else:
                viol = max(viol, abs(gram[i, j]))
    live = ~np.isnan(gram.real)
    herm = float(np.max(np.abs(gram - gram.conj().T)[live], initial=0.0))
    diag = float(np.max(np.abs(np.diag(gram) - 1)[np.diag(live)], initial=0.0))

    report = GramReport(N, indices, gram, degenerate, off, viol, herm, diag, raw_gram=raw)
    if cross_check:
        worst = 0.0
        for i, n in enumerate(indices):
            for j, m in enumerate(indices[: i + 1]):
                if np.isnan(raw[i, j]) or n + m > MAX_DERIVATIVE_ORDER:
                    continue
                closed = gram_closed_form(N, n, m, route=route, policy=policy)
                scale = states[i].norm * states[j].norm
                worst = max(worst, abs(closed - raw[i, j]) / scale)
        report.closed_form_error = worst
        report.closed_form_route = route
    return report


def conjecture_sweep(N_values, n_max: int, cross_check: bool = True,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> list[GramReport]:
    """One GramReport per dimension, ordered by N."""
    return [gram_report(N, n_max, cross_check=cross_check, policy=policy)
            for N in sorted(set(N_values))]
