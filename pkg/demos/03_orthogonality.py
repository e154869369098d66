"""
How orthogonal are the eigenvectors?
====================================

Eigenvectors with different DFT eigenvalues are automatically orthogonal.
The eigenvalue i^n only depends on n mod 4, so f_0, f_4, f_8, ... share
one eigenspace and nothing forces them apart. This script measures the
overlap as the dimension grows.
"""

from thetadft import conjecture_sweep, f4_f0_closed, gram_report, normalized_inner_product

print(" N   |(f4,f0)| / (|f4||f0|)   (f4,f0) / (f4,f4)")
for N in range(5, 21):
    cosine = abs(normalized_inner_product(N, 4, 0))
    diagonal = abs(normalized_inner_product(N, 4, 0, normalization="diagonal"))
    print(f"{N:3d}   {cosine:.3e}               {diagonal:.3e}")

# For even N the overlap has a closed form in theta3 and its z-derivatives.
for N in (10, 16):
    print(f"closed form N={N}: {f4_f0_closed(N):.6e}")

# The full Gram matrix: entries with n - m not divisible by 4 vanish to
# rounding, the others measure how far the set is from orthogonal.
report = gram_report(10, 9)
print("N=10 largest mod-4 off-diagonal:", report.max_off_mod4)
print("N=10 largest same-eigenvalue overlap:", report.conjecture_violation)
print("closed-form cross-check error:", report.closed_form_error)

for r in conjecture_sweep([6, 12, 24, 50], n_max=8, cross_check=False):
    print(f"N={r.N:3d} violation {r.conjecture_violation:.2e}")
