"""Jacobi theta functions in the convention

    theta3(z, tau) = sum_a exp(i pi tau a^2) exp(2 pi i a z),   Im tau > 0,

with theta4 and theta2 obtained from theta3 by half-period shifts.

Sums are symmetric in the lattice index and accumulated with
``math.fsum`` on the real and imaginary parts separately. For a small
``Im tau`` the evaluation is routed through the modular transform
(tau -> -1/tau), and a large ``Im z`` is first brought back to the
fundamental cell with the quasi-periodicity relation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .report import ResidualReport, relative_residual

MAX_DERIVATIVE_ORDER = 16
MODULAR_SWITCH = 0.05


class ThetaDomainError(ValueError):
    """Raised when Im(tau) <= 0 or another argument is out of range."""


class TruncationError(RuntimeError):
    """Raised when the tail bound needs more than ``max_terms`` terms."""


class UnsupportedOrderError(ValueError):
    """Raised when a derivative order exceeds ``MAX_DERIVATIVE_ORDER``."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Where to cut the lattice sums.

    ``tol`` bounds the neglected tail relative to the largest term and
    ``max_terms`` caps the half-width of the summation window.
    """

    tol: float = 1e-18
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class QuasiPeriodReduction:
    """theta3(z, tau) == prefactor * theta3(z0, tau), with z = z0 + m + n*tau."""

    z0: complex
    m: int
    n: int
    log_prefactor: complex

    @property
    def prefactor(self) -> complex:
        return cmath.exp(self.log_prefactor)


def csum(terms) -> complex:
    """Correctly rounded sum of a complex array (real and imaginary parts)."""
    terms = np.asarray(terms, dtype=complex)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ThetaDomainError(f"Im(tau) must be positive, got tau={tau}")
    return tau


def summation_window(z: complex, tau: complex, order: int = 0,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Symmetric integer window [-A, A] holding every term above the tail bound.

    The terms are Gaussian in the lattice index, centred at -Im z / Im tau;
    ``order`` adds room for the polynomial factor of a p-th derivative.
    """
    b = tau.imag
    centre = abs(z.imag) / b
    log_tol = math.log(1.0 / policy.tol)
    radius = math.sqrt(log_tol / (math.pi * b)) + 2.0
    for _ in range(2):
        if order == 0:
            break
        growth = order * math.log(2.0 * math.pi * (centre + radius) + 1.0)
        radius = math.sqrt((log_tol + growth) / (math.pi * b)) + 2.0
    half_width = int(math.ceil(centre + radius))
    if half_width > policy.max_terms:
        raise TruncationError(
            f"tail bound needs |a| <= {half_width} > max_terms={policy.max_terms}"
            f" (z={z}, tau={tau})"
        )
    return np.arange(-half_width, half_width + 1, dtype=float)


def _series(z: complex, tau: complex, policy: TruncationPolicy) -> complex:
    a = summation_window(z, tau, 0, policy)
    return csum(np.exp(1j * math.pi * tau * a * a + 2j * math.pi * a * z))


def reduce_quasi_period(z: complex, tau: complex) -> QuasiPeriodReduction:
    """Move z to the cell |Re z0| <= 1/2, |Im z0| <= Im(tau)/2.

    Uses theta3(z + m + n tau, tau) = exp(-i pi tau n^2 - 2 pi i n z) theta3(z, tau).
    """
    z = complex(z)
    tau = _check_tau(tau)
    n = int(round(z.imag / tau.imag))
    z1 = z - n * tau
    m = int(round(z1.real))
    z0 = z1 - m
    log_pref = -1j * math.pi * tau * n * n - 2j * math.pi * n * z0
    return QuasiPeriodReduction(z0=z0, m=m, n=n, log_prefactor=log_pref)


def _theta3_log(z: complex, tau: complex, policy: TruncationPolicy,
                route: str) -> tuple[complex, complex]:
    """theta3(z, tau) as exp(log_scale) * value, to dodge overflow."""
    red = reduce_quasi_period(z, tau)
    log_scale, z = red.log_prefactor, red.z0
    inv = -1.0 / tau
    if route == "auto" and tau.imag < MODULAR_SWITCH and inv.imag > tau.imag:
        # theta3(z, tau) = (-i tau)^(-1/2) exp(-i pi z^2 / tau) theta3(z / tau, -1 / tau)
        log_scale += -0.5 * cmath.log(-1j * tau) - 1j * math.pi * z * z / tau
        inner_scale, value = _theta3_log(z / tau, inv, policy, "series")
        return log_scale + inner_scale, value
    return log_scale, _series(z, tau, policy)


def theta3(z: complex, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY,
           route: str = "auto") -> complex:
    """Jacobi theta3(z, tau).

    ``route="series"`` forces the direct lattice sum even where the
    modular transform would converge faster; the identity checks use it
    to keep the two sides of a transform independent.
    """
    if route not in ("auto", "series"):
        raise ValueError(f"unknown route {route!r}")
    z = complex(z)
    tau = _check_tau(tau)
    log_scale, value = _theta3_log(z, tau, policy, route)
    return cmath.exp(log_scale) * value


def theta4(z: complex, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY,
           route: str = "auto") -> complex:
    """theta4(z, tau) = theta3(z + 1/2, tau)."""
    return theta3(complex(z) + 0.5, tau, policy, route)


def theta2(z: complex, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY,
           route: str = "auto") -> complex:
    """theta2(z, tau) = exp(i pi tau / 4 + i pi z) theta3(z + tau / 2, tau)."""
    z = complex(z)
    tau = _check_tau(tau)
    log_scale, value = _theta3_log(z + tau / 2, tau, policy, route)
    return cmath.exp(log_scale + 1j * math.pi * (tau / 4 + z)) * value


def theta3_z_derivative(z: complex, tau: complex, order: int,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """p-th derivative in z: sum_a exp(i pi tau a^2) (2 pi i a)^p exp(2 pi i a z)."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if order > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(
            f"derivative order {order} exceeds cap {MAX_DERIVATIVE_ORDER}"
        )
    z = complex(z)
    tau = _check_tau(tau)
    a = summation_window(z, tau, order, policy)
    terms = np.exp(1j * math.pi * tau * a * a + 2j * math.pi * a * z)
    return csum(terms * (2j * math.pi * a) ** order)


def gaussian_sum(z: float, L: float, sigma: float, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """sigma * sum_a exp(-pi (sigma / L)^2 (a L + z)^2), summed directly."""
    width = L / sigma
    centre = -z / L
    radius = width / L * math.sqrt(math.log(1.0 / policy.tol) / math.pi) + 2.0
    a = np.arange(math.floor(centre - radius), math.ceil(centre + radius) + 1, dtype=float)
    return sigma * csum(np.exp(-math.pi * ((a * L + z) / width) ** 2))


def gaussian_sum_check(z: float, L: float, sigma: float, tol: float = 1e-11,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(z / L, i / sigma^2) against its sum-of-Gaussians form."""
    lhs = theta3(z / L, 1j / sigma**2, policy, route="series")
    rhs = gaussian_sum(z, L, sigma, policy)
    return ResidualReport(
        "gaussian_sum", {"z": z, "L": L, "sigma": sigma}, lhs, rhs,
        relative_residual(lhs, rhs), tol, {"width": L / sigma},
    )


def modular_transform_check(z: complex, tau_pos: float, tol: float = 1e-11,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """Residual of theta3(z, i t) = t^(-1/2) exp(-pi z^2 / t) theta3(z / (i t), i / t).

    Both sides use the direct series. For real z the report also carries
    the residual of the Gaussian-sum form of the left side.
    """
    if not tau_pos > 0:
        raise ThetaDomainError(f"tau_pos must be positive, got {tau_pos}")
    z = complex(z)
    t = float(tau_pos)
    lhs = theta3(z, 1j * t, policy, route="series")
    l_rhs, v_rhs = _theta3_log(z / (1j * t), 1j / t, policy, "series")
    rhs = cmath.exp(l_rhs - 0.5 * math.log(t) - math.pi * z * z / t) * v_rhs
    extra = {}
    if z.imag == 0:
        g = gaussian_sum(z.real, 1.0, t ** -0.5, policy)
        extra["gaussian_sum_residual"] = relative_residual(lhs, g)
    return ResidualReport(
        "modular_transform", {"z": z, "tau_pos": t}, lhs, rhs,
        relative_residual(lhs, rhs), tol, extra,
    )
