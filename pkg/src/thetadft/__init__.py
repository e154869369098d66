"""Jacobi theta functions and the Hermite-Gaussian eigenvectors of the discrete Fourier transform."""

from .eigenstates import (
    DegenerateStateError,
    EigenstateSpec,
    StateVector,
    dft,
    eigen_residual,
    eigenstate_direct,
    eigenstate_dual,
    eigenstate_theta_taylor,
    is_degenerate,
)
from .gram import (
    GramReport,
    conjecture_sweep,
    f4_f0_closed,
    gram_closed_form,
    gram_report,
    inner_product_direct,
    normalized_inner_product,
)
from .hermite import hermite, hermite_generating_check
from .identities import (
    run_identity_suite,
    verify_combined_inversion,
    verify_complementary_split,
    verify_duplication,
    verify_equivalence_class_split,
    verify_fractional_shift,
    verify_inverse_relation,
    verify_k0_collapse,
    verify_width_inversion_dft,
)
from .report import ResidualReport, VariantReport
from .series import TaylorSeries1, TaylorSeries2, exp_bilinear, extract_mixed_derivative, series_mul, theta_taylor
from .theta import (
    DEFAULT_POLICY,
    ThetaDomainError,
    TruncationError,
    TruncationPolicy,
    UnsupportedOrderError,
    modular_transform_check,
    reduce_quasi_period,
    theta2,
    theta3,
    theta3_z_derivative,
    theta4,
)
from .twovar import TwoVarState, conjugation_residual, dft2, eigen2d_residual, overlap_sum, two_var_state

__version__ = "0.1.0"
