"""Nica Dilations - truncated minimal isometric Nica-covariant dilations and their checks."""

from nica_dilations.core import (
    CapExceededError,
    CheckResult,
    DilationError,
    GramNotPSDError,
    IndeterminateSignError,
    NonCommutingEntriesError,
    NonCommutingError,
    NormExceededError,
    NotHermitianError,
    NotInMonoidError,
    NumericConfig,
    SamplerExhaustedError,
    ScenarioError,
    ShapeMismatchError,
    SupportError,
)
from nica_dilations.dilation import DilationSpace, build_dilation, compressed_shift
from nica_dilations.representation import NicaRep, build_direct_rep, build_tensor_rep, evaluate_at
from nica_dilations.schur import BlockMatrix, lift_compress_check, schur_product
from nica_dilations.semicrossed import CovariantPair, DynSystem, Polynomial, eval_polynomial
from nica_dilations.semigroup import FactorSpec, GridSet, GroupElement, Semigroup, parse_element

__version__ = "0.3.0"

__all__ = [
    # Version
    "__version__",
    # Core
    "NumericConfig",
    "CheckResult",
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
    # Semigroup
    "FactorSpec",
    "Semigroup",
    "GroupElement",
    "GridSet",
    "parse_element",
    # Representations
    "NicaRep",
    "build_tensor_rep",
    "build_direct_rep",
    "evaluate_at",
    # Schur
    "BlockMatrix",
    "schur_product",
    "lift_compress_check",
    # Dilation
    "DilationSpace",
    "build_dilation",
    "compressed_shift",
    # Semicrossed
    "DynSystem",
    "CovariantPair",
    "Polynomial",
    "eval_polynomial",
]
