"""Hardy-space composition/Cesaro invariance toolkit."""

from ._core import (
    InnerFunctionSpec,
    ResolutionError,
    SpecParseError,
    TheoremViolation,
    __version__,
    affine_matrix,
    beurling_basis,
    cesaro_correspondence,
    cesaro_matrix,
    classify_beurling,
    compression_residual,
    divide,
    enlarge_invariant,
    eval_series,
    exp_series,
    inner_eval,
    inner_product,
    kernel,
    model_basis,
    model_kernel,
    multiplicity_criterion,
    multiply,
    operator_norm,
    orbit_span_rank,
    poly_subspace,
    schur_quotient,
    schur_quotient_series,
    sigma_boundary_modulus,
    sigma_matrix,
    spectra_estimate,
    taylor_of_inner,
    zero_orbit,
)

__all__ = [
    "InnerFunctionSpec",
    "ResolutionError",
    "SpecParseError",
    "TheoremViolation",
    "__version__",
    "affine_matrix",
    "beurling_basis",
    "cesaro_correspondence",
    "cesaro_matrix",
    "classify_beurling",
    "compression_residual",
    "divide",
    "enlarge_invariant",
    "eval_series",
    "exp_series",
    "inner_eval",
    "inner_product",
    "kernel",
    "model_basis",
    "model_kernel",
    "multiplicity_criterion",
    "multiply",
    "operator_norm",
    "orbit_span_rank",
    "poly_subspace",
    "schur_quotient",
    "schur_quotient_series",
    "sigma_boundary_modulus",
    "sigma_matrix",
    "spectra_estimate",
    "taylor_of_inner",
    "zero_orbit",
]
