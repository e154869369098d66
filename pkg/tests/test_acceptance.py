"""Acceptance criteria, one test and one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import cmath
import contextlib
import csv
import io
import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402

from thetadft.cli import main  # noqa: E402
from thetadft.eigenstates import (  # noqa: E402
    eigen_residual,
    eigenstate_direct,
    eigenstate_dual,
    eigenstate_theta_taylor,
    is_degenerate,
)
from thetadft.gram import (  # noqa: E402
    conjecture_sweep,
    f4_f0_closed,
    gram_closed_form,
    gram_report,
    normalized_inner_product,
)
from thetadft.hermite import hermite  # noqa: E402
from thetadft.identities import run_identity_suite  # noqa: E402
from thetadft.theta import (  # noqa: E402
    TruncationPolicy,
    gaussian_sum_check,
    modular_transform_check,
    theta3,
)
from thetadft.twovar import (  # noqa: E402
    DegenerateStateError,
    conjugation_residual,
    eigen2d_residual,
    overlap_sum,
    parseval_residual,
    two_var_state,
)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


class Criterion:
    """Collects named sub-clauses; the criterion passes iff all of them do."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.clauses = []

    def check(self, label, ok, detail=""):
        self.clauses.append((label, bool(ok), detail))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.clauses)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        failed = [f"{label} ({detail})" for label, ok, detail in self.clauses if not ok]
        tail = "; failed: " + "; ".join(failed) if failed else ""
        return f"[{status}] criterion {self.number:2d}: {self.title}{tail}"


def report(crit):
    line = crit.line()
    ACCEPTANCE_LINES.append((crit.number, line))
    print(line)
    return crit


# ---------------------------------------------------------------- criteria ---

def criterion_1():
    c = Criterion(1, "eigen-relation, N in [1,32], n <= min(N-1,10)")
    worst = 0.0
    for N in range(1, 33):
        for n in range(min(N - 1, 10) + 1):
            r = eigen_residual(N, n)
            if r.extra["norm"] > 1e-8:
                worst = max(worst, r.residual)
    c.check("max residual <= 1e-9", worst <= 1e-9, f"{worst:.3g}")
    return c


def criterion_2():
    c = Criterion(2, "width-generalised eigen-relation, N in {4,8,15}, xi in {1/2,2}")
    worst = 0.0
    for N, n, xi in itertools.product((4, 8, 15), range(7), (0.5, 2.0)):
        r = eigen_residual(N, n, xi)
        if r.extra["degenerate"]:
            continue
        worst = max(worst, r.residual)
        c.check(f"fitted constant N={N} n={n} xi={xi}",
                abs(r.extra["fitted_constant_re"] - xi**-2) <= 1e-9 * xi**-2)
    c.check("max residual <= 1e-9", worst <= 1e-9, f"{worst:.3g}")
    return c


def criterion_3():
    c = Criterion(3, "three representations agree, N <= 16, n <= 8")
    worst = 0.0
    for N in range(1, 17):
        for n in range(9):
            d = eigenstate_direct(N, n)
            if is_degenerate(d):
                continue
            for other in (eigenstate_dual(N, n), eigenstate_theta_taylor(N, n)):
                worst = max(worst, np.linalg.norm(other.values - d.values) / d.norm)
    c.check("norm-relative difference <= 1e-9", worst <= 1e-9, f"{worst:.3g}")
    return c


def criterion_4():
    c = Criterion(4, "mod-4 orthogonality, N <= 20")
    worst = max(r.max_off_mod4 for r in conjecture_sweep(range(1, 21), 12, cross_check=False))
    c.check("max |normalised entry| <= 1e-10", worst <= 1e-10, f"{worst:.3g}")
    return c


def criterion_5():
    c = Criterion(5, "orthogonality conjecture fails for small N, holds for large N")
    v10 = abs(normalized_inner_product(10, 4, 0))
    c.check("|(f4,f0)| at N=10 in [1e-7, 1e-5]", 1e-7 <= v10 <= 1e-5, f"measured {v10:.4g}")
    small = max(abs(normalized_inner_product(N, 4, 0)) for N in range(5, 11))
    c.check("> 1e-8 for some N in [5,10]", small > 1e-8, f"{small:.3g}")
    v50 = abs(normalized_inner_product(50, 4, 0))
    c.check("<= 1e-10 at N=50", v50 <= 1e-10, f"{v50:.3g}")
    worst = 0.0
    for N in range(6, 17, 2):
        direct = normalized_inner_product(N, 4, 0) * eigenstate_direct(N, 4).norm * eigenstate_direct(N, 0).norm
        worst = max(worst, rel(f4_f0_closed(N), direct.real))
    c.check("closed form vs direct <= 1e-8 relative, even N in [6,16]", worst <= 1e-8, f"{worst:.3g}")
    return c


def criterion_6():
    c = Criterion(6, "closed-form Gram equals direct Gram, N <= 12, n+m <= 8")
    worst, zero_worst = 0.0, 0.0
    for N in range(1, 13):
        for n in range(min(N - 1, 8) + 1):
            fn = eigenstate_direct(N, n)
            if is_degenerate(fn):
                continue
            for m in range(min(8 - n, n) + 1):
                fm = eigenstate_direct(N, m)
                if is_degenerate(fm):
                    continue
                direct = complex(np.dot(fn.values, fm.values))
                closed = gram_closed_form(N, n, m)
                scale = fn.norm * fm.norm
                worst = max(worst, abs(closed - direct) / scale)
                if n % 2 and m == 0 or (N % 2 == 0 and (n, m) == (2, 0)):
                    zero_worst = max(zero_worst, abs(closed))
    c.check("relative agreement <= 1e-8", worst <= 1e-8, f"{worst:.3g}")
    c.check("odd-n rows and even-N (f2,f0) vanish <= 1e-10", zero_worst <= 1e-10, f"{zero_worst:.3g}")
    return c


def criterion_7():
    c = Criterion(7, "identity suite over the default grid")
    start = time.perf_counter()
    result = run_identity_suite("all", 1e-9)
    elapsed = time.perf_counter() - start
    c.check("every residual <= 1e-9", all(r.passed for r in result.reports), f"max {result.max_residual:.3g}")
    fitted = {f.identity for f in result.fits}
    c.check("constant fits emitted", {"inverse_relation", "k0_collapse"} <= fitted, str(sorted(fitted)))
    c.check("fitted constants reproduce the derived ones", all(f.passed for f in result.fits))
    c.check("runtime under a minute", elapsed < 60, f"{elapsed:.1f}s")
    return c


def criterion_8():
    c = Criterion(8, "theta3 core properties")
    rng = np.random.default_rng(20240601)
    period = even = quasi = modular = gauss = trunc = tight = 0.0
    taus = [1j, 2j, 0.3 + 1.2j, 0.1j, 0.04j, 0.5 + 0.6j]
    for tau in taus:
        for _ in range(20):
            z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            base = theta3(z, tau)
            scale = abs(base)
            period = max(period, abs(theta3(z + 1, tau) - base) / scale)
            even = max(even, abs(theta3(-z, tau) - base) / scale)
            for n in range(-3, 4):
                lhs = theta3(z + n * tau, tau)
                rhs = cmath.exp(-1j * math.pi * tau * n * n - 2j * math.pi * n * z) * base
                quasi = max(quasi, rel(lhs, rhs))
            doubled = theta3(z, tau, TruncationPolicy(max_terms=200_000))
            trunc = max(trunc, abs(doubled - base) / max(1.0, scale))
            tightened = theta3(z, tau, TruncationPolicy(tol=1e-30))
            tight = max(tight, abs(tightened - base) / scale)
    for t in np.geomspace(0.1, 10, 15):
        for _ in range(8):
            z = complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))
            modular = max(modular, modular_transform_check(z, t).residual)
    for z, L, sigma in itertools.product((0.0, 0.3, -0.7), (0.8, 1.0, 2.5), (0.5, 1.0, 2.0)):
        gauss = max(gauss, gaussian_sum_check(z, L, sigma).residual)
    c.check("period-1 <= 1e-12", period <= 1e-12, f"{period:.3g}")
    c.check("evenness <= 1e-12", even <= 1e-12, f"{even:.3g}")
    c.check("quasi-periodicity |n| <= 3, <= 1e-11", quasi <= 1e-11, f"{quasi:.3g}")
    c.check("modular transform tau in [0.1,10], |z| <= 2, <= 1e-11", modular <= 1e-11, f"{modular:.3g}")
    c.check("Gaussian-sum form <= 1e-11", gauss <= 1e-11, f"{gauss:.3g}")
    c.check("doubling max_terms changes nothing beyond tol", trunc <= 1e-18, f"{trunc:.3g}")
    c.check("tightening tol to 1e-30 moves values <= 1e-15", tight <= 1e-15, f"{tight:.3g}")
    return c


def criterion_9():
    c = Criterion(9, "two-variable states")
    parseval = 0.0
    overlap = inner = 0.0
    tables_ok, deterministic = True, True
    for N in range(1, 9):
        pairs = [(m, n) for m in range(min(N, 4)) for n in range(min(N, 4))]
        live = []
        for m, n in pairs:
            try:
                s = two_var_state(N, m, n)
            except DegenerateStateError:
                continue
            live.append((m, n))
            parseval = max(parseval, parseval_residual(s).residual)
            for check in (conjugation_residual, eigen2d_residual):
                a, b = check(s), check(two_var_state(N, m, n))
                tables_ok &= min(r.residual for r in a.rows) <= 1e-8 and a.selected is not None
                deterministic &= [r.residual for r in a.rows] == [r.residual for r in b.rows]
                deterministic &= a.selected == b.selected
        for (m, n), (m2, n2) in itertools.combinations(live, 2):
            if (m + n - m2 - n2) % 4:
                overlap = max(overlap, abs(overlap_sum(N, m, n, m2, n2, normalized=True)))
                inner = max(inner, abs(overlap_sum(N, m, n, m2, n2, "inner", normalized=True)))
    c.check("Parseval <= 1e-9", parseval <= 1e-9, f"{parseval:.3g}")
    c.check("overlap_sum vanishes for m+n != m'+n' (mod 4), <= 1e-9 normalised",
            overlap <= 1e-9, f"max {overlap:.3g}")
    c.check("inner-product reading of the overlap vanishes <= 1e-9", inner <= 1e-9, f"max {inner:.3g}")
    c.check("a reading within 1e-8 for every conjugation and eigen-2d table", tables_ok)
    c.check("variant tables deterministic", deterministic)
    return c


def criterion_10():
    c = Criterion(10, "continuum limit at N=200")
    N = 200
    eps = math.sqrt(2 * math.pi / N)
    worst = 0.0
    for n in range(5):
        f = eigenstate_direct(N, n).values
        for j in range(-14, 15):
            single = math.exp(-math.pi * j * j / N) * hermite(n, eps * j)
            worst = max(worst, abs(f[j % N] - single) / max(abs(single), 1.0e-300) if single else abs(f[j % N]))
    c.check("agreement <= 1e-8 relative", worst <= 1e-8, f"{worst:.3g}")
    return c


def _cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, out.getvalue()


def criterion_11():
    from test_cli import CASES, GOLDEN

    c = Criterion(11, "CLI determinism and exit codes")
    for name, argv, code in CASES:
        got_code, out = _cli(argv)
        c.check(f"golden {name}", got_code == code and out == (GOLDEN / name).read_text(),
                f"exit {got_code}")
    code, _ = _cli(["theta", "--tau-im", "-1"])
    c.check("domain error exits 2", code == 2)
    argv = ["sweep", "--n-min", "4", "--n-max", "10", "--index-max", "6", "--format", "csv"]
    first, second = _cli(argv)[1], _cli(argv)[1]
    c.check("sweep CSV byte-identical across runs", first == second)
    rows = {(r["N"], r["n"], r["m"]): r for r in csv.DictReader(io.StringIO(first))}
    same = all(float(rows[(str(N), "4", "0")]["abs"]) == abs(normalized_inner_product(N, 4, 0))
               for N in range(5, 11))
    c.check("sweep reproduces the (f4,f0) values bit for bit", same)
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i:02d}" for i in range(1, 12)])
def test_acceptance(criterion):
    crit = report(criterion())
    assert crit.passed, crit.line()


if __name__ == "__main__":
    results = [report(criterion()) for criterion in CRITERIA]
    sys.exit(0 if all(r.passed for r in results) else 1)
