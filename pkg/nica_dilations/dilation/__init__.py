"""Truncated minimal isometric Nica-covariant dilations."""

from nica_dilations.dilation.shifts import ShiftOperator, compressed_shift, shift_target
from nica_dilations.dilation.space import (
    DilationSpace,
    as_support,
    build_dilation,
    gram_form,
    raw_embedding,
    raw_translation,
)
from nica_dilations.dilation.verify import (
    NicaDilationCheck,
    compare_minimal_dilations,
    embedding_check,
    verify_coinvariance,
    verify_isometry,
    verify_nica_dilation,
    verify_regularity,
    verify_restricted_nica,
)

__all__ = [
    # Space
    "DilationSpace",
    "as_support",
    "gram_form",
    "build_dilation",
    "raw_embedding",
    "raw_translation",
    # Shifts
    "ShiftOperator",
    "compressed_shift",
    "shift_target",
    # Verification
    "NicaDilationCheck",
    "embedding_check",
    "verify_isometry",
    "verify_regularity",
    "verify_coinvariance",
    "verify_restricted_nica",
    "verify_nica_dilation",
    "compare_minimal_dilations",
]
