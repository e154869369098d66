"""
Two-variable states
===================

F_{m,n}(j, l) = sum_k f_m(k) f_n(k - l) exp(2 pi i j k / N) combines two
eigenvectors into an N x N grid. Some of its symmetries can be written in
more than one way, so each candidate reading is scored and the first one
that holds is named.
"""

from thetadft import conjugation_residual, eigen2d_residual, overlap_sum, two_var_state
from thetadft.twovar import parseval_residual

for N, m, n in [(4, 0, 0), (6, 1, 1), (7, 1, 2)]:
    state = two_var_state(N, m, n)
    conj = conjugation_residual(state)
    eig = eigen2d_residual(state)
    print(f"N={N} (m,n)=({m},{n})")
    for report in (conj, eig):
        cells = ", ".join(f"{r.name}={r.residual:.1e}" for r in report.rows)
        print(f"  {report.check:<11} -> {report.selected}: {cells}")
    print(f"  Parseval residual {parseval_residual(state).residual:.1e}")

# Overlaps of two grids: the sum of products of intensities is positive by
# construction, while the plain inner product vanishes between distinct
# eigen-pairs.
print("intensity overlap (0,0)x(1,0), N=5:", abs(overlap_sum(5, 0, 0, 1, 0, normalized=True)))
print("inner product     (0,0)x(1,0), N=5:", abs(overlap_sum(5, 0, 0, 1, 0, "inner", normalized=True)))
