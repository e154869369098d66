"""Eigenvectors of the unitary DFT built from periodised Hermite-Gaussians.

For dimension N and index n,

    f_n(j) = sum_a exp(-pi/N (aN + j)^2) H_n(eps (aN + j)),   eps = sqrt(2 pi / N),

satisfies dft(f_n) = i^n f_n, where dft uses the kernel exp(+2 pi i jk / N)
and the factor 1/sqrt(N). The same vector is produced three ways: the
comb above, its Poisson-dual sum (``eigenstate_dual``), and a t-derivative
of theta3 (``eigenstate_theta_taylor``). The width family f_n(j, xi) is
built from theta3(j/N - (eps/pi) xi t, i xi^2 / N) exp(t^2) scaled by
sqrt(N / xi); it satisfies dft(f_n(., xi)) = i^n xi^-2 f_n(., 1/xi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermite import MAX_DEGREE, hermite
from .report import ResidualReport
from .series import TaylorSeries1, series_exp, theta_taylor
from .theta import DEFAULT_POLICY, MAX_DERIVATIVE_ORDER, TruncationPolicy, csum

DEGENERATE_RTOL = 1e-12


class DegenerateStateError(ValueError):
    """Raised when a state vanishes identically (to rounding) for its (N, n)."""


@dataclass(frozen=True)
class EigenstateSpec:
    N: int
    n: int
    xi: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if not 0 <= self.n <= MAX_DEGREE:
            raise ValueError(f"n must be in [0, {MAX_DEGREE}], got {self.n}")
        if not self.xi > 0:
            raise ValueError(f"xi must be positive, got {self.xi}")

    @property
    def eps(self) -> float:
        return math.sqrt(2 * math.pi / self.N)


@dataclass(frozen=True, eq=False)
class StateVector:
    values: np.ndarray
    spec: EigenstateSpec

    def __post_init__(self):
        self.values.setflags(write=False)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return len(self.values)

    @property
    def norm(self) -> float:
        return math.sqrt(math.fsum(np.abs(self.values) ** 2))

    @property
    def normalized(self) -> np.ndarray:
        return self.values / self.norm


def _as_spec(spec_or_N, n=None, xi=1.0) -> EigenstateSpec:
    if isinstance(spec_or_N, EigenstateSpec):
        return spec_or_N
    return EigenstateSpec(int(spec_or_N), int(n), float(xi))


def _comb_extent(N: int, n: int, width: float, tol: float) -> int:
    """Largest |aN + j| whose Gaussian-times-Hermite term can exceed tol."""
    # exp(-pi u^2 / (N w^2)) |H_n(eps u / w)| < tol once u is past this point
    log_tol = math.log(1.0 / tol)
    u = width * math.sqrt(N * log_tol / math.pi) + 1.0
    for _ in range(3):
        growth = n * math.log(2.0 * math.sqrt(2 * math.pi / N) * u / width + 2.0 * math.sqrt(n) + 1.0)
        u = width * math.sqrt(N * (log_tol + growth) / math.pi) + 1.0
    return int(math.ceil(u))


def _lattice(N: int, n: int, width: float, policy: TruncationPolicy):
    reach = _comb_extent(N, n, width, policy.tol) // N + 2
    if reach > policy.max_terms:
        from .theta import TruncationError

        raise TruncationError(f"comb for N={N}, n={n} needs {reach} periods")
    alpha = np.arange(-reach, reach + 1)
    # u[a, j] = aN + j
    return (alpha[:, None] * N + np.arange(N)[None, :]).astype(float)


def hermite_comb(N: int, n: int, width: float = 1.0,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """sum_a exp(-pi (aN+j)^2 / (N w^2)) H_n(eps (aN+j) / w) for j = 0..N-1."""
    u = _lattice(N, n, width, policy)
    eps = math.sqrt(2 * math.pi / N)
    terms = np.exp(-math.pi * u * u / (N * width * width)) * hermite(n, eps * u / width)
    return np.array([math.fsum(col) for col in terms.T])


def reference_norm(N: int, n: int, width: float = 1.0,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """l2 norm of the unfolded Hermite-Gaussian samples on the whole lattice.

    This is the size f_n would have without interference between periods,
    and sets the scale for deciding that a state vanishes.
    """
    u = _lattice(N, n, width, policy).ravel()
    eps = math.sqrt(2 * math.pi / N)
    g = np.exp(-math.pi * u * u / (N * width * width)) * hermite(n, eps * u / width)
    return math.sqrt(math.fsum(g * g))


def is_degenerate(state: StateVector, rtol: float = DEGENERATE_RTOL) -> bool:
    """True when the state is zero to within rtol of its reference norm."""
    s = state.spec
    scale = reference_norm(s.N, s.n, s.xi)
    if s.xi != 1.0:
        # f_n(., xi) = N xi^(-3/2) * (comb of width xi)
        scale *= s.N * s.xi**-1.5
    return state.norm <= rtol * scale


def eigenstate_direct(spec_or_N, n=None, xi=1.0,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> StateVector:
    """f_n(j, xi) for j = 0..N-1.

    xi = 1 sums the periodised Hermite-Gaussian comb directly. Other widths
    go through the theta3 Taylor expansion, with the sqrt(N / xi) prefactor
    of the width family (so at xi = 1 that family is N times the comb).
    """
    spec = _as_spec(spec_or_N, n, xi)
    if spec.xi == 1.0:
        return StateVector(hermite_comb(spec.N, spec.n, 1.0, policy), spec)
    N, n, xi = spec.N, spec.n, spec.xi
    if n > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"width family needs n <= {MAX_DERIVATIVE_ORDER}, got {n}")
    gauss = series_exp([0.0, 0.0, 1.0], n)
    scale = -spec.eps / math.pi * xi
    values = np.array([
        (theta_taylor(j / N, scale, 1j * xi * xi / N, n, policy=policy) * gauss).derivative(n)
        for j in range(N)
    ])
    return StateVector(math.sqrt(N / xi) * values, spec)


def eigenstate_dual(spec_or_N, n=None, policy: TruncationPolicy = DEFAULT_POLICY) -> StateVector:
    """f_n(j) = N^(-1/2) (-i)^n sum_a exp(-pi a^2 / N + 2 pi i j a / N) H_n(eps a)."""
    spec = _as_spec(spec_or_N, n)
    if spec.xi != 1.0:
        raise ValueError("the dual representation is defined for xi = 1 only")
    N, n = spec.N, spec.n
    reach = _comb_extent(N, n, 1.0, policy.tol) + 1
    a = np.arange(-reach, reach + 1, dtype=float)
    weights = np.exp(-math.pi * a * a / N) * hermite(n, spec.eps * a)
    j = np.arange(N)[:, None]
    terms = weights[None, :] * np.exp(2j * math.pi * ((j * a[None, :]) % N) / N)
    values = np.array([csum(row) for row in terms]) * (-1j) ** n / math.sqrt(N)
    return StateVector(values, spec)


def eigenstate_theta_taylor(spec_or_N, n=None,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> StateVector:
    """f_n(j) = N^(-1/2) d^n/dt^n [theta3(j/N - (eps/pi) t, i/N) exp(t^2)] at t = 0."""
    spec = _as_spec(spec_or_N, n)
    if spec.xi != 1.0:
        raise ValueError("the theta-derivative representation is defined for xi = 1 only")
    N, n = spec.N, spec.n
    if n > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"n must be <= {MAX_DERIVATIVE_ORDER}, got {n}")
    gauss = series_exp([0.0, 0.0, 1.0], n)
    scale = -spec.eps / math.pi
    values = np.array([
        (theta_taylor(j / N, scale, 1j / N, n, policy=policy) * gauss).derivative(n)
        for j in range(N)
    ])
    return StateVector(values / math.sqrt(N), spec)


def dft(v) -> np.ndarray:
    """(1/sqrt N) sum_k v(k) exp(+2 pi i k j / N): unitary, DFT^4 = identity."""
    return np.fft.ifft(np.asarray(v, dtype=complex), norm="ortho")


def eigen_residual(spec_or_N, n=None, xi=1.0, tol: float = 1e-9,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """Relative residual of the DFT eigen-relation for f_n(., xi).

    Checks ||dft f_n(., xi) - i^n xi^-2 f_n(., 1/xi)|| / ||f_n(., xi)||. At
    xi = 1 this is the plain eigenvalue equation with eigenvalue i^n.

    ``extra`` records how the literal width relation fares: its residual
    (un-normalised sum, no xi^-2), and the fitted constant c in
    dft f(xi) = c i^n f(1/xi). A vanishing state is flagged as degenerate
    and not scored (residual inf, never passes).
    """
    spec = _as_spec(spec_or_N, n, xi)
    N, n, xi = spec.N, spec.n, spec.xi
    f = eigenstate_direct(spec, policy=policy)
    params = {"N": N, "n": n, "xi": xi}
    if is_degenerate(f):
        return ResidualReport("eigen_relation", params, 0j, 0j, math.inf, tol,
                              {"degenerate": True, "norm": f.norm})
    lam = 1j**n
    lhs = dft(f.values)
    target = f.values if xi == 1.0 else eigenstate_direct(N, n, 1.0 / xi, policy).values
    rhs = lam * xi**-2 * target
    norm = f.norm
    residual = float(np.linalg.norm(lhs - rhs) / norm)
    denom = np.vdot(target, target).real
    fitted = complex(np.vdot(target, lhs) / denom / lam) if denom > 0 else complex("nan")
    literal = float(np.linalg.norm(lam * math.sqrt(N) * lhs - target) / np.linalg.norm(target))
    j_max = int(np.argmax(np.abs(lhs)))
    return ResidualReport(
        "eigen_relation", params, complex(lhs[j_max]), complex(rhs[j_max]), residual, tol,
        {"degenerate": False, "norm": norm, "fitted_constant_re": fitted.real,
         "fitted_constant_im": fitted.imag, "expected_constant": xi**-2,
         "literal_residual": literal},
    )
