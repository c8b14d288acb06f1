"""Lift-and-compress realisation of the operator-valued Schur product.

For A, B with mutually commuting entries, A□B is the compression of the
product of two commuting positive operators:

    Ã = [A_ij δ_pq],  B̃ = [B_pq δ_ij]  on indices (i, p, a),
    R e_(l, a) = e_(l, l, a),
    R* Ã B̃ R = A□B.

Everything is materialised explicitly so the identity can be measured.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from nica_dilations.core.config import DEFAULT_CONFIG, NumericConfig
from nica_dilations.core.exceptions import (
    CapExceededError,
    NonCommutingEntriesError,
    NotHermitianError,
    ShapeMismatchError,
)
from nica_dilations.core.models import CheckResult, EigenResult
from nica_dilations.linalg import (
    ComplexMatrix,
    hermitian_part,
    min_eigenvalue,
    spectral_norm,
    stacked_spectral_norms,
)
from nica_dilations.schur.block import BlockMatrix, schur_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LiftResult:
    """Both sides of the compression identity and the measured defects."""

    lhs: ComplexMatrix
    rhs: ComplexMatrix
    defect: float
    commutator_defect: float
    commutator_witness: str
    isometry_defect: float
    tol: float

    def to_check(self) -> CheckResult:
        return CheckResult(
            check="schur_lift",
            defect=self.defect,
            tol=self.tol,
            witness=self.commutator_witness,
            parameters={
                "commutator_defect": self.commutator_defect,
                "isometry_defect": self.isometry_defect,
            },
        )


def entry_commutators(a: BlockMatrix, b: BlockMatrix) -> tuple[float, str]:
    """Largest ``||[A_ij, B_kl]||`` over all index pairs, with its witness."""
    ab = np.einsum("ijab,klbc->ijklac", a.blocks, b.blocks)
    ba = np.einsum("klab,ijbc->ijklac", b.blocks, a.blocks)
    norms = stacked_spectral_norms(ab - ba)
    i, j, k, l_ = np.unravel_index(int(np.argmax(norms)), norms.shape)
    return float(norms[i, j, k, l_]), f"A[{i},{j}] / B[{k},{l_}]"


def lift_operators(
    a: BlockMatrix, b: BlockMatrix
) -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """The lifted pair (Ã, B̃) and the 0/1 isometry R."""
    m, d = a.m, a.block_dim
    eye = np.eye(m, dtype=np.complex128)
    side = m * m * d
    a_lift = np.einsum("ijab,pq->ipajqb", a.blocks, eye).reshape(side, side)
    b_lift = np.einsum("pqab,ij->ipajqb", b.blocks, eye).reshape(side, side)
    r = np.zeros((side, m * d), dtype=np.complex128)
    for l_ in range(m):
        for k in range(d):
            r[(l_ * m + l_) * d + k, l_ * d + k] = 1.0
    return a_lift, b_lift, r


def lift_compress_check(
    a: BlockMatrix, b: BlockMatrix, config: NumericConfig = DEFAULT_CONFIG
) -> LiftResult:
    """Compute R*(ÃB̃)R and A□B and measure their distance.

    Raises:
        ShapeMismatchError: A and B have different shapes
        CapExceededError: block count above ``commutation_cap``
        NonCommutingEntriesError: some entry of A fails to commute with some entry of B
    """
    if a.blocks.shape != b.blocks.shape:
        raise ShapeMismatchError(f"lift needs equal shapes, got {a.blocks.shape} and {b.blocks.shape}")
    if a.m > config.commutation_cap:
        raise CapExceededError("Schur commutation check", a.m, config.commutation_cap)
    tol = config.scaled_tol(a.m * a.block_dim)

    commutator, witness = entry_commutators(a, b)
    if commutator > tol:
        raise NonCommutingEntriesError(commutator, witness)

    a_lift, b_lift, r = lift_operators(a, b)
    lhs = r.conj().T @ (a_lift @ b_lift) @ r
    rhs = schur_product(a, b).assembled()
    defect = spectral_norm(lhs - rhs)
    isometry_defect = spectral_norm(r.conj().T @ r - np.eye(r.shape[1]))
    logger.debug(f"lift m={a.m} d={a.block_dim}: defect={defect:.3e} commutator={commutator:.3e}")
    return LiftResult(
        lhs=lhs,
        rhs=rhs,
        defect=defect,
        commutator_defect=commutator,
        commutator_witness=witness,
        isometry_defect=isometry_defect,
        tol=tol,
    )


def check_positive(
    matrix: BlockMatrix | ComplexMatrix, config: NumericConfig = DEFAULT_CONFIG
) -> EigenResult:
    """Eigenvalue floor test at ``-tol_psd``.

    Raises:
        NotHermitianError: the input is not Hermitian within tolerance
    """
    full = matrix.assembled() if isinstance(matrix, BlockMatrix) else np.asarray(matrix, dtype=np.complex128)
    n = full.shape[0]
    hermitian, defect = hermitian_part(full)
    limit = config.scaled_tol(n)
    if defect > limit:
        raise NotHermitianError(defect, limit)
    return EigenResult(
        min_eigenvalue=min_eigenvalue(hermitian),
        floor=config.scaled_tol_psd(n),
        asymmetry_defect=defect,
    )
