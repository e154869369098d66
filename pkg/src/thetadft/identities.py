"""Residual checks for theta3 identities obtained by splitting lattice sums
into residue classes.

Every finite sum over j runs over one complete residue system
j = 0..N-1 (or 0..xi-1). Where a commonly quoted constant prefactor
disagrees with the one that makes the identity hold, the check scores the
derived constant. ``extra`` records the residual under the literal
constant and the residual with the upper limit j = N.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .report import ResidualReport, relative_residual
from .theta import DEFAULT_POLICY, TruncationPolicy, theta3, theta4

DEFAULT_GRID = {
    "z": (0.0, 0.1, -0.1, 0.37, -0.37),
    "N": (1, 2, 3, 5, 8, 12),
    "xi": (0.5, 1.0, 1.3, 2.0),
    "L": (0.8, 1.0, 2.5),
    "xi_int": (1, 2, 3, 5),
}

SUITES = (
    "fractional-shift",
    "inverse-relation",
    "width-inversion-dft",
    "k0-collapse",
    "class-split",
    "complementary-split",
    "combined-inversion",
    "duplication",
)


def _omega(N, j, k):
    return cmath.exp(2j * math.pi * ((j * k) % N) / N)


def _fractional_shift_parts(z, k, N, xi, upper, policy):
    scale = cmath.exp(-math.pi * N * z * z / xi**2) / math.sqrt(N * xi * xi)
    total = sum(
        theta3(1j * z / xi**2 - j / N, 1j / (N * xi * xi), policy) * _omega(N, j, k)
        for j in range(upper)
    )
    return scale * total


def verify_fractional_shift(z: complex, k: int, N: int, xi: float, tol: float = 1e-9,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(z + k/N, i xi^2/N)
    = (N xi^2)^(-1/2) sum_j theta3(iz/xi^2 - j/N, i/(N xi^2)) exp(-pi N z^2/xi^2 + 2 pi i jk/N)."""
    lhs = theta3(complex(z) + k / N, 1j * xi * xi / N, policy)
    rhs = _fractional_shift_parts(z, k, N, xi, N, policy)
    literal = _fractional_shift_parts(z, k, N, xi, N + 1, policy)
    return ResidualReport(
        "fractional_shift", {"z": z, "k": k, "N": N, "xi": xi}, lhs, rhs,
        relative_residual(lhs, rhs), tol,
        {"upper_limit_N_residual": relative_residual(lhs, literal)},
    )


def _inverse_parts(z, k, N, xi, upper, policy):
    lhs = theta3(1j * z / xi**2 - k / N, 1j / (N * xi * xi), policy)
    total = sum(
        theta3(complex(z) + j / N, 1j * xi * xi / N, policy) * _omega(N, -j, k)
        for j in range(upper)
    )
    return lhs, cmath.exp(math.pi * N * z * z / xi**2) * total


def verify_inverse_relation(z: complex, k: int, N: int, xi: float, tol: float = 1e-9,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(iz/xi^2 - k/N, i/(N xi^2))
    = c sum_j theta3(z + j/N, i xi^2/N) exp(pi N z^2/xi^2 - 2 pi i jk/N),

    with c = xi / sqrt(N); the literal constant is sqrt(N) / xi.
    """
    lhs, S = _inverse_parts(z, k, N, xi, N, policy)
    derived, literal = xi / math.sqrt(N), math.sqrt(N) / xi
    rhs = derived * S
    _, S_upper = _inverse_parts(z, k, N, xi, N + 1, policy)
    return ResidualReport(
        "inverse_relation", {"z": z, "k": k, "N": N, "xi": xi}, lhs, rhs,
        relative_residual(lhs, rhs), tol,
        {"derived_constant": derived, "literal_constant": literal,
         "literal_constant_residual": relative_residual(lhs, literal * S),
         "upper_limit_N_residual": relative_residual(lhs, derived * S_upper)},
    )


def _width_parts(k, N, xi, upper, policy):
    lhs = theta3(k / N, 1j * xi * xi / N, policy)
    S = sum(theta3(j / N, 1j / (N * xi * xi), policy) * _omega(N, j, k) for j in range(upper))
    return lhs, S


def verify_width_inversion_dft(k: int, N: int, xi: float, tol: float = 1e-9,
                               policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(k/N, i xi^2/N) = c sum_j theta3(j/N, i/(N xi^2)) exp(2 pi i jk/N).

    c = 1 / (xi sqrt(N)); the literal constant 1/sqrt(N) is right only at
    xi = 1. In the sum-of-Gaussians form the left side has width
    sqrt(N) xi and the transformed side sqrt(N) / xi.
    """
    lhs, S = _width_parts(k, N, xi, N, policy)
    derived, literal = 1.0 / (xi * math.sqrt(N)), 1.0 / math.sqrt(N)
    rhs = derived * S
    _, S_upper = _width_parts(k, N, xi, N + 1, policy)
    return ResidualReport(
        "width_inversion_dft", {"k": k, "N": N, "xi": xi}, lhs, rhs,
        relative_residual(lhs, rhs), tol,
        {"derived_constant": derived, "literal_constant": literal,
         "literal_constant_residual": relative_residual(lhs, literal * S),
         "upper_limit_N_residual": relative_residual(lhs, derived * S_upper),
         "width_lhs": math.sqrt(N) * xi, "width_rhs": math.sqrt(N) / xi},
    )


def _collapse_parts(z, N, xi, upper, policy):
    lhs = theta3(N * complex(z), 1j * N * xi * xi, policy)
    S = sum(theta3(complex(z) + j / N, 1j * xi * xi / N, policy) for j in range(upper))
    return lhs, S


def verify_k0_collapse(z: complex, N: int, xi: float, tol: float = 1e-9,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(N z, i N xi^2) = c sum_j theta3(z + j/N, i xi^2/N), c = 1/N.

    The literal constant is sqrt(N) / xi.
    """
    lhs, S = _collapse_parts(z, N, xi, N, policy)
    derived, literal = 1.0 / N, math.sqrt(N) / xi
    rhs = derived * S
    _, S_upper = _collapse_parts(z, N, xi, N + 1, policy)
    return ResidualReport(
        "k0_collapse", {"z": z, "N": N, "xi": xi}, lhs, rhs,
        relative_residual(lhs, rhs), tol,
        {"derived_constant": derived, "literal_constant": literal,
         "literal_constant_residual": relative_residual(lhs, literal * S),
         "upper_limit_N_residual": relative_residual(lhs, derived * S_upper)},
    )


def _check_int_width(xi_int):
    if int(xi_int) != xi_int or xi_int < 1:
        raise ValueError(f"xi_int must be a positive integer, got {xi_int}")
    return int(xi_int)


def verify_equivalence_class_split(z: complex, L: float, xi_int: int, tol: float = 1e-9,
                                   policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(z/L, i xi^2/L) = (1/xi) sum_{j<xi} theta3((z + jL)/(xi L), i/L)."""
    xi = _check_int_width(xi_int)
    lhs = theta3(complex(z) / L, 1j * xi * xi / L, policy)
    rhs = sum(theta3((complex(z) + j * L) / (xi * L), 1j / L, policy) for j in range(xi)) / xi
    return ResidualReport("class_split", {"z": z, "L": L, "xi_int": xi}, lhs, rhs,
                          relative_residual(lhs, rhs), tol)


def verify_complementary_split(z: complex, L: float, xi_int: int, tol: float = 1e-9,
                               policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(z/L, i/L) = (1/xi) sum_{j<xi} theta3(z/(xi L) + j/xi, i/(L xi^2))."""
    xi = _check_int_width(xi_int)
    lhs = theta3(complex(z) / L, 1j / L, policy)
    rhs = sum(theta3(complex(z) / (xi * L) + j / xi, 1j / (L * xi * xi), policy)
              for j in range(xi)) / xi
    return ResidualReport("complementary_split", {"z": z, "L": L, "xi_int": xi}, lhs, rhs,
                          relative_residual(lhs, rhs), tol)


def verify_combined_inversion(z: complex, L: float, xi_int: int, tol: float = 1e-9,
                              policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """theta3(z xi/L, i xi^2/L) = xi^-2 sum_{j,j'<xi} theta3(z/(xi L) + j'/xi + j/xi^2, i/(L xi^2))."""
    xi = _check_int_width(xi_int)
    lhs = theta3(complex(z) * xi / L, 1j * xi * xi / L, policy)
    tau = 1j / (L * xi * xi)
    rhs = sum(theta3(complex(z) / (xi * L) + jp / xi + j / xi**2, tau, policy)
              for j, jp in product(range(xi), repeat=2)) / xi**2
    return ResidualReport("combined_inversion", {"z": z, "L": L, "xi_int": xi}, lhs, rhs,
                          relative_residual(lhs, rhs), tol)


def verify_duplication(z: complex, L: float, which: str = "split", tol: float = 1e-9,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """The xi = 2 cases written with theta4.

    "split":          theta3(2z/L, 4i/L) = (theta3(z/L, i/L) + theta4(z/L, i/L)) / 2
    "complementary":  theta3(z/L, i/L) = (theta3(z/2L, i/4L) + theta4(z/2L, i/4L)) / 2
    """
    z = complex(z)
    if which == "split":
        lhs = theta3(2 * z / L, 4j / L, policy)
        rhs = 0.5 * (theta3(z / L, 1j / L, policy) + theta4(z / L, 1j / L, policy))
    elif which == "complementary":
        lhs = theta3(z / L, 1j / L, policy)
        w, tau = z / (2 * L), 1j / (4 * L)
        rhs = 0.5 * (theta3(w, tau, policy) + theta4(w, tau, policy))
    else:
        raise ValueError(f"unknown duplication form {which!r}")
    return ResidualReport(f"duplication_{which}", {"z": z, "L": L}, lhs, rhs,
                          relative_residual(lhs, rhs), tol)


@dataclass
class ConstantFit:
    """Least-squares constant c in lhs = c * S over a grid at fixed (N, xi)."""

    identity: str
    N: int
    xi: float
    literal: float
    derived: float
    fitted: complex
    literal_residual: float
    fitted_residual: float
    tol: float

    @property
    def ratio_to_literal(self) -> complex:
        return self.fitted / self.literal

    @property
    def passed(self) -> bool:
        return self.fitted_residual <= self.tol and abs(self.fitted - self.derived) <= self.tol * abs(self.derived) * 10

    def as_row(self):
        return {
            "identity": self.identity, "N": self.N, "xi": self.xi,
            "literal_constant": self.literal, "derived_constant": self.derived,
            "fitted_re": self.fitted.real, "fitted_im": self.fitted.imag,
            "ratio_to_literal_re": self.ratio_to_literal.real,
            "literal_residual": self.literal_residual, "fitted_residual": self.fitted_residual,
            "passed": self.passed,
        }


def fit_constant(identity: str, N: int, xi: float, z_values=DEFAULT_GRID["z"],
                 tol: float = 1e-9, policy: TruncationPolicy = DEFAULT_POLICY) -> ConstantFit:
    """Fit the prefactor of a flagged identity from its grid of (lhs, S) pairs."""
    pairs = []
    if identity == "inverse_relation":
        derived, literal = xi / math.sqrt(N), math.sqrt(N) / xi
        for z, k in product(z_values, range(N)):
            pairs.append(_inverse_parts(z, k, N, xi, N, policy))
    elif identity == "width_inversion_dft":
        derived, literal = 1.0 / (xi * math.sqrt(N)), 1.0 / math.sqrt(N)
        for k in range(N):
            pairs.append(_width_parts(k, N, xi, N, policy))
    elif identity == "k0_collapse":
        derived, literal = 1.0 / N, math.sqrt(N) / xi
        for z in z_values:
            pairs.append(_collapse_parts(z, N, xi, N, policy))
    else:
        raise ValueError(f"no constant fit for {identity!r}")
    lhs = np.array([p[0] for p in pairs])
    S = np.array([p[1] for p in pairs])
    # rows are weighted by 1 / (1 + |lhs|) to match the residual measure
    w = 1.0 / (1.0 + np.abs(lhs))
    fitted = complex(np.vdot(w * S, w * lhs) / np.vdot(w * S, w * S))
    res = lambda c: float(np.max(np.abs(lhs - c * S) * w))
    return ConstantFit(identity, N, xi, literal, derived, fitted, res(literal), res(fitted), tol)


@dataclass
class SuiteResult:
    reports: list[ResidualReport] = field(default_factory=list)
    fits: list[ConstantFit] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and all(f.passed for f in self.fits)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.reports), default=0.0)


def run_identity_suite(suite: str = "all", tol: float = 1e-9, grid=None,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> SuiteResult:
    """Run one named suite (or "all") over the parameter grid."""
    grid = {**DEFAULT_GRID, **(grid or {})}
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    out = SuiteResult()
    zs, Ns, xis, Ls, ints = grid["z"], grid["N"], grid["xi"], grid["L"], grid["xi_int"]
    for name in names:
        if name == "fractional-shift":
            out.reports += [verify_fractional_shift(z, k, N, xi, tol, policy)
                            for N in Ns for xi in xis for z in zs for k in range(N)]
        elif name == "inverse-relation":
            out.reports += [verify_inverse_relation(z, k, N, xi, tol, policy)
                            for N in Ns for xi in xis for z in zs for k in range(N)]
            out.fits += [fit_constant("inverse_relation", N, xi, zs, tol, policy)
                         for N in Ns for xi in xis]
        elif name == "width-inversion-dft":
            out.reports += [verify_width_inversion_dft(k, N, xi, tol, policy)
                            for N in Ns for xi in xis for k in range(N)]
            out.fits += [fit_constant("width_inversion_dft", N, xi, zs, tol, policy)
                         for N in Ns for xi in xis]
        elif name == "k0-collapse":
            out.reports += [verify_k0_collapse(z, N, xi, tol, policy)
                            for N in Ns for xi in xis for z in zs]
            out.fits += [fit_constant("k0_collapse", N, xi, zs, tol, policy)
                         for N in Ns for xi in xis]
        elif name == "class-split":
            out.reports += [verify_equivalence_class_split(z, L, q, tol, policy)
                            for L in Ls for q in ints for z in zs]
        elif name == "complementary-split":
            out.reports += [verify_complementary_split(z, L, q, tol, policy)
                            for L in Ls for q in ints for z in zs]
        elif name == "combined-inversion":
            out.reports += [verify_combined_inversion(z, L, q, tol, policy)
                            for L in Ls for q in ints for z in zs]
        elif name == "duplication":
            out.reports += [verify_duplication(z, L, which, tol, policy)
                            for which in ("split", "complementary") for L in Ls for z in zs]
    return out
