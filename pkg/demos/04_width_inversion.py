"""
Widths, the DFT, and residue-class splits
=========================================

A theta3 sampled at j/N is a sum of Gaussians whose width is set by the
lattice parameter. The DFT maps width xi to width 1/xi, and splitting a
lattice sum into residue classes gives a family of exact identities.
"""

from thetadft import (
    eigen_residual,
    run_identity_suite,
    verify_duplication,
    verify_equivalence_class_split,
    verify_width_inversion_dft,
)

r = verify_width_inversion_dft(k=3, N=8, xi=2.0)
print("DFT width inversion residual:", r.residual)
print("  widths", r.extra["width_lhs"], "->", r.extra["width_rhs"])
print("  prefactor 1/(xi sqrt N) =", r.extra["derived_constant"],
      " (1/sqrt N alone leaves", f"{r.extra['literal_constant_residual']:.2f})")

# The width family of eigenvectors: dft f(xi) = i^n xi^-2 f(1/xi).
for xi in (0.5, 2.0):
    rep = eigen_residual(8, 2, xi)
    print(f"xi={xi}: residual {rep.residual:.1e}, fitted constant {rep.extra['fitted_constant_re']:.6f}")

# Splitting into xi classes; xi = 2 is the classical duplication formula.
print("class split xi=5:", verify_equivalence_class_split(-0.7, 2.5, 5).residual)
print("duplication     :", verify_duplication(0.3, 1.0).residual)

suite = run_identity_suite()
print(f"{len(suite.reports)} identity checks, worst residual {suite.max_residual:.1e}")
for fit in suite.fits[:3]:
    print(f"  {fit.identity} N={fit.N} xi={fit.xi}: fitted {fit.fitted.real:.6f}, derived {fit.derived:.6f}")
