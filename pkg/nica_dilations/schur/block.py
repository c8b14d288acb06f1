"""Square block operator matrices with matrix entries."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from nica_dilations.core.exceptions import ShapeMismatchError
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, spectral_norm


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """An m x m array of block_dim x block_dim complex blocks, stored as ``(m, m, d, d)``."""

    blocks: ComplexMatrix

    def __post_init__(self) -> None:
        shape = self.blocks.shape
        if len(shape) != 4 or shape[0] != shape[1] or shape[2] != shape[3]:
            raise ShapeMismatchError(f"block array must have shape (m, m, d, d), got {shape}")

    @classmethod
    def from_blocks(cls, rows: Sequence[Sequence[object]]) -> BlockMatrix:
        return cls(np.array([[as_complex_matrix(b) for b in row] for row in rows], dtype=np.complex128))

    @classmethod
    def from_scalars(cls, matrix: object) -> BlockMatrix:
        scalars = as_complex_matrix(matrix)
        return cls(scalars[:, :, np.newaxis, np.newaxis].copy())

    @classmethod
    def from_assembled(cls, matrix: ComplexMatrix, block_dim: int) -> BlockMatrix:
        n = matrix.shape[0]
        if n % block_dim:
            raise ShapeMismatchError(f"side {n} is not a multiple of block size {block_dim}")
        m = n // block_dim
        return cls(matrix.reshape(m, block_dim, m, block_dim).transpose(0, 2, 1, 3).copy())

    @property
    def m(self) -> int:
        return int(self.blocks.shape[0])

    @property
    def block_dim(self) -> int:
        return int(self.blocks.shape[2])

    def block(self, i: int, j: int) -> ComplexMatrix:
        return self.blocks[i, j]

    def assembled(self) -> ComplexMatrix:
        m, d = self.m, self.block_dim
        return self.blocks.transpose(0, 2, 1, 3).reshape(m * d, m * d)

    def hermitian_defect(self) -> float:
        full = self.assembled()
        return spectral_norm(full - full.conj().T)

    def is_hermitian(self, tol: float) -> bool:
        return self.hermitian_defect() <= tol


def schur_product(a: BlockMatrix, b: BlockMatrix) -> BlockMatrix:
    """Blockwise product [A_ij B_ij].

    Raises:
        ShapeMismatchError: block counts or block sizes differ
    """
    if a.blocks.shape != b.blocks.shape:
        raise ShapeMismatchError(
            f"Schur product needs equal shapes, got {a.blocks.shape} and {b.blocks.shape}"
        )
    return BlockMatrix(np.einsum("ijab,ijbc->ijac", a.blocks, b.blocks))
