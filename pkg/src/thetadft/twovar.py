"""Two-variable states F_{m,n}(j, l) = sum_k f_m(k) f_n(k - l) exp(2 pi i j k / N).

The index k - l is taken mod N (each f_n is N-periodic). The relations
quoted for these states admit several typographical readings, so each
check scores a fixed, ordered list of readings and names the first that
holds instead of committing to one in advance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigenstates import DegenerateStateError, eigenstate_direct, is_degenerate
from .report import ResidualReport, VariantReport
from .theta import DEFAULT_POLICY, TruncationPolicy, csum

VARIANT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TwoVarState:
    values: np.ndarray
    m: int
    n: int
    N: int

    @property
    def intensity(self) -> np.ndarray:
        """|F(j, l)|^2 as a real grid."""
        return np.abs(self.values) ** 2


def two_var_state(N: int, m: int, n: int,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> TwoVarState:
    fm = eigenstate_direct(N, m, policy=policy)
    fn = eigenstate_direct(N, n, policy=policy)
    for idx, f in ((m, fm), (n, fn)):
        if is_degenerate(f):
            raise DegenerateStateError(f"f_{idx} vanishes for N={N}")
    k = np.arange(N)
    # products[k, l] = f_m(k) f_n(k - l)
    products = fm.values[:, None] * fn.values[(k[:, None] - k[None, :]) % N]
    # sum over k with exp(+2 pi i j k / N): N * ifft along axis 0
    values = np.fft.ifft(products, axis=0) * N
    values.setflags(write=False)
    return TwoVarState(values, m, n, N)


def dft2(grid: np.ndarray, sign: int = 1) -> np.ndarray:
    """(1/N) sum_{a,b} G(a, b) exp(sign 2 pi i (j a + l b) / N); unitary."""
    N = grid.shape[0]
    if sign == 1:
        return np.fft.ifft2(grid) * N
    return np.fft.fft2(grid) / N


def _phase(N: int, sign: int) -> np.ndarray:
    j = np.arange(N)
    return np.exp(sign * 2j * math.pi * np.outer(j, j) / N)


def _score(name, params, lhs, rhs, tol):
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    scale = max(float(np.max(np.abs(lhs))), 1e-300)
    residual = float(np.max(np.abs(lhs - rhs)) / scale)
    idx = np.unravel_index(int(np.argmax(np.abs(lhs))), lhs.shape)
    return ResidualReport(name, params, complex(lhs[idx]), complex(rhs[idx]), residual, tol)


def conjugation_residual(state: TwoVarState, tol: float = VARIANT_TOL,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> VariantReport:
    """Score readings of conj(F_{m,n}(j,l)) = F(j,l) exp(2 pi i j l / N).

    Readings, in order: "literal" as usually written; "conjugate_phase" with
    exp(-2 pi i j l / N); "parity_sign" adding (-1)^(m+n) to the literal
    form; "index_swap", conj(F_{m,n}) = (-1)^(m+n) exp(-2 pi i j l / N) F_{n,m}.
    Residuals are max-norm, relative to max |F|.
    """
    N, m, n = state.N, state.m, state.n
    F = state.values
    params = {"N": N, "m": m, "n": n}
    sign = (-1) ** (m + n)
    swapped = F if m == n else two_var_state(N, n, m, policy).values
    rows = (
        _score("literal", params, F.conj(), F * _phase(N, 1), tol),
        _score("conjugate_phase", params, F.conj(), F * _phase(N, -1), tol),
        _score("parity_sign", params, F.conj(), sign * F * _phase(N, 1), tol),
        _score("index_swap", params, F.conj(), sign * swapped * _phase(N, -1), tol),
    )
    return VariantReport("conjugation", params, rows)


def eigen2d_residual(state: TwoVarState, tol: float = VARIANT_TOL,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> VariantReport:
    """Score readings of the two-dimensional DFT relation for |F_{m,n}|^2.

    Readings, in order:

    - "literal": |F(j,l)|^2 = ((-i)^(m+n) / N) sum_{a,b} |F(a,b)|^2 exp(2 pi i (m a + n b) / N),
      a right side with no (j, l) dependence;
    - "eigen_minus_i", "eigen_plus_i": dft2 |F|^2 = (-i)^(m+n) |F|^2 and i^(m+n) |F|^2;
    - "invariant": dft2 |F|^2 = |F|^2;
    - "moyal": dft2 |F_{m,n}|^2 = F_{m,m} conj(F_{n,n}).

    dft2 carries the +2 pi i kernel and the unitary 1/N factor.
    """
    N, m, n = state.N, state.m, state.n
    G = state.intensity
    params = {"N": N, "m": m, "n": n}
    idx = np.arange(N)
    literal_rhs = ((-1j) ** (m + n) / N) * csum(
        (G * np.exp(2j * math.pi * (m * idx[:, None] + n * idx[None, :]) / N)).ravel())
    H = dft2(G)
    Fmm = state.values if m == n else two_var_state(N, m, m, policy).values
    Fnn = state.values if m == n else two_var_state(N, n, n, policy).values
    rows = (
        _score("literal", params, G, np.full_like(H, literal_rhs), tol),
        _score("eigen_minus_i", params, H, (-1j) ** (m + n) * G, tol),
        _score("eigen_plus_i", params, H, 1j ** (m + n) * G, tol),
        _score("invariant", params, H, G, tol),
        _score("moyal", params, H, Fmm * Fnn.conj(), tol),
    )
    return VariantReport("eigen2d", params, rows)


def parseval_residual(state: TwoVarState, tol: float = 1e-9,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> ResidualReport:
    """sum_{j,l} |F|^2 against N ||f_m||^2 ||f_n||^2."""
    N, m, n = state.N, state.m, state.n
    lhs = math.fsum(state.intensity.ravel())
    rhs = N * eigenstate_direct(N, m, policy=policy).norm ** 2 * eigenstate_direct(N, n, policy=policy).norm ** 2
    return ResidualReport("parseval", {"N": N, "m": m, "n": n}, lhs, rhs,
                          abs(lhs - rhs) / abs(rhs), tol)


def overlap_sum(N: int, m: int, n: int, m2: int, n2: int, reading: str = "literal",
                normalized: bool = False,
                policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Overlap of two two-variable states.

    ``reading="literal"`` is sum_{j,l} |F_{m,n}|^2 |F_{m2,n2}|^2, a sum of
    non-negative terms; ``reading="inner"`` is sum_{j,l} F_{m,n} conj(F_{m2,n2}),
    which equals N (f_m, f_m2)(f_n, f_n2) for real states. With
    ``normalized`` the result is divided by the matching Cauchy-Schwarz
    bound, so it lies in [0, 1] in modulus.
    """
    A = two_var_state(N, m, n, policy).values
    B = A if (m, n) == (m2, n2) else two_var_state(N, m2, n2, policy).values
    if reading == "literal":
        a, b = np.abs(A) ** 2, np.abs(B) ** 2
        value = complex(math.fsum((a * b).ravel()))
    elif reading == "inner":
        a, b = A, B
        value = csum((A * B.conj()).ravel())
    else:
        raise ValueError(f"unknown reading {reading!r}")
    if normalized:
        value /= math.sqrt(math.fsum((np.abs(a) ** 2).ravel()) * math.fsum((np.abs(b) ** 2).ravel()))
    return value
