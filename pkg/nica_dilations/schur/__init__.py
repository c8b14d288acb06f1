"""Operator-valued Schur products."""

from nica_dilations.schur.block import BlockMatrix, schur_product
from nica_dilations.schur.lift import (
    LiftResult,
    check_positive,
    entry_commutators,
    lift_compress_check,
    lift_operators,
)
from nica_dilations.schur.sampling import (
    random_hermitian_blocks,
    random_psd_blocks,
    tensor_commuting_pair,
)

__all__ = [
    "BlockMatrix",
    "schur_product",
    "LiftResult",
    "lift_compress_check",
    "lift_operators",
    "entry_commutators",
    "check_positive",
    "random_psd_blocks",
    "random_hermitian_blocks",
    "tensor_commuting_pair",
]
