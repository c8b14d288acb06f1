"""Core abstractions: errors and numeric configuration."""

from nica_dilations.core.config import DEFAULT_CONFIG, NumericConfig
from nica_dilations.core.exceptions import (
    CapExceededError,
    DilationError,
    GramNotPSDError,
    IndeterminateSignError,
    NonCommutingEntriesError,
    NonCommutingError,
    NormExceededError,
    NotHermitianError,
    NotInMonoidError,
    SamplerExhaustedError,
    ScenarioError,
    ShapeMismatchError,
    SupportError,
)
from nica_dilations.core.models import CheckResult, EigenResult, max_defect, worst

__all__ = [
    # Config
    "NumericConfig",
    "DEFAULT_CONFIG",
    # Models
    "CheckResult",
    "EigenResult",
    "worst",
    "max_defect",
    # Exceptions
    "DilationError",
    "ShapeMismatchError",
    "IndeterminateSignError",
    "NotInMonoidError",
    "NormExceededError",
    "NonCommutingError",
    "NonCommutingEntriesError",
    "NotHermitianError",
    "GramNotPSDError",
    "CapExceededError",
    "SupportError",
    "SamplerExhaustedError",
    "ScenarioError",
]
