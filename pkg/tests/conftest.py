import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 40


def mp_theta3(z, tau):
    """Independent oracle: mpmath's jtheta(3, pi z, exp(i pi tau))."""
    q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau))
    return complex(mpmath.jtheta(3, mpmath.pi * mpmath.mpc(z), q))


def partial_sum_theta3(z, tau, terms=100):
    a = np.arange(-terms, terms + 1, dtype=float)
    return complex(np.sum(np.exp(1j * np.pi * tau * a * a + 2j * np.pi * a * z)))


def rel(a, b):
    return abs(a - b) / max(abs(a), 1e-300)


@pytest.fixture
def oracle():
    return mp_theta3


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
