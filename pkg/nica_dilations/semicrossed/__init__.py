"""Semigroup dynamical systems, covariant pairs and semicrossed-product polynomials."""

from nica_dilations.semicrossed.covariant import (
    CovarianceReport,
    CovariantDilation,
    CovariantPair,
    TruncationReport,
    amplified_sigma,
    build_pair,
    dilate_covariant_pair,
    identity_sigma,
    quotient_pi,
    validate_covariance,
)
from nica_dilations.semicrossed.induced import induced_representation, truncated_translation
from nica_dilations.semicrossed.norms import (
    NormEstimate,
    SampleRecord,
    SamplerConfig,
    estimate_norms,
    isometric_value,
    sample_pair,
)
from nica_dilations.semicrossed.polynomial import (
    Polynomial,
    character,
    eval_polynomial,
    gauge_defect,
    gauge_pair,
    gauge_rep,
    gauge_transform,
    homomorphism_defect,
    polynomial_product,
)
from nica_dilations.semicrossed.system import (
    DynSystem,
    SystemReport,
    build_system,
    matrix_units,
    trivial_system,
    validate_system,
)

__all__ = [
    # Systems
    "DynSystem",
    "SystemReport",
    "build_system",
    "trivial_system",
    "matrix_units",
    "validate_system",
    # Covariant pairs
    "CovariantPair",
    "CovarianceReport",
    "CovariantDilation",
    "TruncationReport",
    "identity_sigma",
    "amplified_sigma",
    "build_pair",
    "validate_covariance",
    "dilate_covariant_pair",
    "quotient_pi",
    "induced_representation",
    "truncated_translation",
    # Polynomials
    "Polynomial",
    "eval_polynomial",
    "polynomial_product",
    "homomorphism_defect",
    "character",
    "gauge_transform",
    "gauge_rep",
    "gauge_pair",
    "gauge_defect",
    # Norms
    "SamplerConfig",
    "SampleRecord",
    "NormEstimate",
    "sample_pair",
    "isometric_value",
    "estimate_norms",
]
