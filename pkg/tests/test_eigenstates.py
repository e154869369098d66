import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetadft.eigenstates import (
    DegenerateStateError,
    EigenstateSpec,
    dft,
    eigen_residual,
    eigenstate_direct,
    eigenstate_dual,
    eigenstate_theta_taylor,
    is_degenerate,
)
from thetadft.hermite import hermite

from conftest import partial_sum_theta3


def matrix_dft(v):
    N = len(v)
    j = np.arange(N)
    return np.exp(2j * np.pi * np.outer(j, j) / N) @ np.asarray(v) / math.sqrt(N)


def brute_comb(N, n, xi=1.0, reach=40):
    """f_n(j, xi) summed over a fixed generous window, no adaptive truncation."""
    eps = math.sqrt(2 * math.pi / N)
    out = []
    for j in range(N):
        u = np.arange(-reach, reach + 1) * N + j
        out.append(np.sum(np.exp(-math.pi * u * u / (N * xi * xi)) * hermite(n, eps * u / xi)))
    return np.array(out)


def rel_norm(a, b):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) / np.linalg.norm(b)


def test_spec_validation():
    with pytest.raises(ValueError):
        EigenstateSpec(0, 0)
    with pytest.raises(ValueError):
        EigenstateSpec(4, 0, xi=0)
    assert EigenstateSpec(8, 1).eps == pytest.approx(math.sqrt(2 * math.pi / 8))


def test_state_vector_is_read_only():
    f = eigenstate_direct(5, 2)
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_N1_n0_is_theta3_at_origin():
    assert eigenstate_direct(1, 0).values[0] == pytest.approx(partial_sum_theta3(0, 1j).real, rel=1e-15)


def test_odd_state_vanishes_at_origin():
    assert abs(eigenstate_direct(5, 1).values[0]) <= 1e-15


@pytest.mark.parametrize("N,n", [(3, 0), (8, 3), (12, 7), (20, 10)])
def test_direct_against_brute_force(N, n):
    assert rel_norm(eigenstate_direct(N, n).values, brute_comb(N, n)) <= 1e-13


@pytest.mark.parametrize("N,n", [(1, 0), (6, 2), (8, 3)])
def test_dual_matches_direct(N, n):
    d, u = eigenstate_direct(N, n).values, eigenstate_dual(N, n).values
    assert np.max(np.abs(u - d)) <= 1e-10 * np.max(np.abs(d))


def test_dual_odd_vanishes_at_origin():
    assert abs(eigenstate_dual(7, 3).values[0]) <= 1e-12


@pytest.mark.parametrize("N,n,other", [(4, 0, "direct"), (4, 2, "direct"), (7, 5, "dual")])
def test_theta_taylor_cross(N, n, other):
    t = eigenstate_theta_taylor(N, n).values
    ref = (eigenstate_direct if other == "direct" else eigenstate_dual)(N, n).values
    assert rel_norm(t, ref) <= 1e-9


def test_theta_taylor_n0_row_wise():
    N = 9
    t, d = eigenstate_theta_taylor(N, 0).values, eigenstate_direct(N, 0).values
    assert np.max(np.abs(t - d)) <= 1e-11 * np.max(np.abs(d))


@pytest.mark.parametrize("N", [1, 2, 5, 11, 16, 24, 32])
def test_three_representations_agree(N):
    for n in range(0, 11):
        d = eigenstate_direct(N, n)
        if is_degenerate(d):
            continue
        scale = d.norm
        for other in (eigenstate_dual(N, n), eigenstate_theta_taylor(N, n)):
            assert np.linalg.norm(other.values - d.values) <= 1e-9 * scale
            assert np.max(np.abs(np.imag(other.values))) <= 1e-11 * scale


class TestDft:
    def test_N1_identity(self):
        assert dft([2.5 + 1j])[0] == pytest.approx(2.5 + 1j)

    def test_impulse(self):
        v = np.zeros(6)
        v[0] = 1
        assert np.allclose(dft(v), np.full(6, 1 / math.sqrt(6)), rtol=0, atol=1e-15)

    @given(st.integers(1, 40), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_fourth_power_and_matrix(self, N, seed):
        v = np.random.default_rng(seed).normal(size=(N, 2)) @ [1, 1j]
        assert np.allclose(dft(v), matrix_dft(v), rtol=0, atol=1e-12 * max(1, np.abs(v).max()) * N)
        assert np.allclose(dft(dft(dft(dft(v)))), v, rtol=0, atol=1e-12 * max(1, np.abs(v).max()))


class TestEigenResidual:
    @pytest.mark.parametrize("n", range(5))
    def test_N5(self, n):
        assert eigen_residual(5, n).residual <= 1e-10

    def test_width_two_N8(self):
        assert eigen_residual(8, 0, 2.0).residual <= 1e-10

    def test_N1(self):
        assert eigen_residual(1, 0).residual <= 1e-15

    def test_matrix_dft_oracle(self):
        f = eigenstate_direct(9, 6).values
        assert rel_norm(matrix_dft(f), (1j) ** 6 * f) <= 1e-12

    def test_reports_fitted_constant(self):
        r = eigen_residual(8, 2, 0.5)
        assert r.extra["fitted_constant_re"] == pytest.approx(4.0, rel=1e-10)
        assert r.extra["expected_constant"] == 4.0
        assert r.extra["literal_residual"] > 0.5

    @pytest.mark.parametrize("N,n", [(4, 3), (2, 1), (1, 1)])
    def test_degenerate_states_are_flagged(self, N, n):
        r = eigen_residual(N, n)
        assert r.extra["degenerate"]
        assert not r.passed

    @pytest.mark.parametrize("xi", [0.5, 2.0, 1.3])
    @pytest.mark.parametrize("N", [3, 8, 13])
    def test_width_family_against_closed_sum(self, N, xi):
        # f_n(j, xi) = N xi^(-3/2) sum exp(-pi u^2 / (N xi^2)) H_n(eps u / xi), u = aN + j
        for n in (0, 1, 4):
            f = eigenstate_direct(N, n, xi).values
            ref = N * xi**-1.5 * brute_comb(N, n, xi)
            if np.linalg.norm(ref) < 1e-8:
                continue
            assert rel_norm(f, ref) <= 1e-12


def test_degenerate_error_type():
    assert issubclass(DegenerateStateError, ValueError)


def test_continuum_limit():
    N = 200
    eps = math.sqrt(2 * math.pi / N)
    for n in range(5):
        f = eigenstate_direct(N, n).values
        for j in range(-14, 15):
            single = math.exp(-math.pi * j * j / N) * hermite(n, eps * j)
            assert abs(f[j % N] - single) <= 1e-8 * max(abs(single), 1e-300) or abs(single) == 0
