"""Contractive Nica-covariant representations and their regular-dilation kernels."""

from nica_dilations.representation.kernel import (
    FactorizationReport,
    KernelMatrix,
    KernelPositivity,
    factorize_kernel,
    kernel_positivity,
    regular_kernel,
)
from nica_dilations.representation.nica import (
    NicaRep,
    RepMode,
    build_direct_rep,
    build_tensor_rep,
    evaluate_at,
    ordering_defect,
)
from nica_dilations.representation.sampling import (
    commuting_family,
    haar_unitary,
    random_contraction,
    random_isometric_tensor_rep,
    random_tensor_rep,
)
from nica_dilations.representation.validation import ValidationReport, validate_nica

__all__ = [
    # Representations
    "NicaRep",
    "RepMode",
    "build_tensor_rep",
    "build_direct_rep",
    "evaluate_at",
    "ordering_defect",
    # Validation
    "ValidationReport",
    "validate_nica",
    # Kernels
    "KernelMatrix",
    "KernelPositivity",
    "FactorizationReport",
    "regular_kernel",
    "kernel_positivity",
    "factorize_kernel",
    # Sampling
    "haar_unitary",
    "random_contraction",
    "commuting_family",
    "random_tensor_rep",
    "random_isometric_tensor_rep",
]
