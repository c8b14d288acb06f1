"""Random block matrices whose entries commute across the pair."""

from __future__ import annotations

import numpy as np

from nica_dilations.linalg import ComplexMatrix, standard_complex_normal
from nica_dilations.schur.block import BlockMatrix


def random_psd_blocks(rng: np.random.Generator, m: int, d: int, rank: int | None = None) -> ComplexMatrix:
    """(m, m, d, d) blocks of W W* for a Gaussian W of ``rank`` columns."""
    columns = rank if rank is not None else m * d
    w = standard_complex_normal(rng, (m * d, columns)) / np.sqrt(columns)
    gram = w @ w.conj().T
    return gram.reshape(m, d, m, d).transpose(0, 2, 1, 3)


def random_hermitian_blocks(rng: np.random.Generator, m: int, d: int) -> ComplexMatrix:
    x = standard_complex_normal(rng, (m * d, m * d))
    hermitian = (x + x.conj().T) / 2.0
    return hermitian.reshape(m, d, m, d).transpose(0, 2, 1, 3)


def tensor_commuting_pair(
    rng: np.random.Generator, m: int, left_dim: int, right_dim: int, positive: bool = True
) -> tuple[BlockMatrix, BlockMatrix]:
    """A_ij = P_ij (x) I and B_ij = I (x) Q_ij, so every A_ij commutes with every B_kl.

    With ``positive`` both P and Q are PSD block matrices, hence so are A and B.
    """
    sample = random_psd_blocks if positive else random_hermitian_blocks
    p = sample(rng, m, left_dim)
    q = sample(rng, m, right_dim)
    eye_right = np.eye(right_dim, dtype=np.complex128)
    eye_left = np.eye(left_dim, dtype=np.complex128)
    a = np.einsum("ijab,cd->ijacbd", p, eye_right).reshape(m, m, left_dim * right_dim, -1)
    b = np.einsum("ab,ijcd->ijacbd", eye_left, q).reshape(m, m, left_dim * right_dim, -1)
    return BlockMatrix(a), BlockMatrix(b)
