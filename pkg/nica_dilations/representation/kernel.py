"""The regular-dilation kernel [T_{s_j - s_i}] and its positivity test."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, computed_field

from nica_dilations.core.exceptions import (
    CapExceededError,
    NonCommutingEntriesError,
    NonCommutingError,
    SupportError,
)
from nica_dilations.linalg import ComplexMatrix, hermitian_part, min_eigenvalue, spectral_norm
from nica_dilations.representation.nica import NicaRep, evaluate_at, ordering_defect
from nica_dilations.schur import BlockMatrix, lift_compress_check, schur_product
from nica_dilations.semigroup import GroupElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Block kernel over ``points``; ``assembled`` is the symmetrized full matrix.

    ``ordering_defect`` is the worst gap between the two orderings of a pairwise difference.
    """

    points: tuple[GroupElement, ...]
    blocks: ComplexMatrix
    assembled: ComplexMatrix
    asymmetry_defect: float
    ordering_defect: float = 0.0
    ordering_witness: str | None = None

    def block(self, i: int, j: int) -> ComplexMatrix:
        return self.blocks[i, j]

    def as_block_matrix(self) -> BlockMatrix:
        return BlockMatrix(self.blocks)


def _kernel_blocks(
    rep: NicaRep, points: Sequence[GroupElement], factor: int | None = None
) -> ComplexMatrix:
    n, d = len(points), rep.dim
    blocks = np.empty((n, n, d, d), dtype=np.complex128)
    memo: dict[tuple[tuple[int, ...], ...], ComplexMatrix] = {}
    for i, s in enumerate(points):
        for j, t in enumerate(points):
            diff = t - s
            if factor is not None:
                diff = diff.restrict(factor)
            if diff.coeffs not in memo:
                memo[diff.coeffs] = evaluate_at(rep, diff)
            blocks[i, j] = memo[diff.coeffs]
    return blocks


def _worst_ordering(rep: NicaRep, points: Sequence[GroupElement]) -> tuple[float, str | None]:
    worst, witness = 0.0, None
    seen: set[tuple[tuple[int, ...], ...]] = set()
    for s in points:
        for t in points:
            diff = t - s
            if diff.coeffs in seen:
                continue
            seen.add(diff.coeffs)
            defect = ordering_defect(rep, diff)
            if defect > worst:
                worst, witness = defect, f"g={diff}"
    return worst, witness


def regular_kernel(
    rep: NicaRep, points: Sequence[GroupElement], strict: bool = True
) -> KernelMatrix:
    """Blocks T_{s_j - s_i}, assembled and symmetrized.

    Both orderings of every mixed-sign difference are compared. With ``strict``
    a representation whose orderings differ cannot produce a kernel; otherwise
    the worst difference is recorded on the result.

    Raises:
        ValueError: repeated points
        SupportError: a point is not in S
        CapExceededError: kernel side length above ``gram_cap``
        NotInMonoidError: a difference has parts outside the generated monoid
        NonCommutingError: strict, and T_{g-}^* T_{g+} != T_{g+} T_{g-}^* for some difference g
    """
    if len({p.coeffs for p in points}) != len(points):
        raise ValueError("kernel points must be distinct")
    outside = [p for p in points if not p.in_cone()]
    if outside:
        raise SupportError(f"kernel points must lie in S, got {outside[0]}")
    side = len(points) * rep.dim
    if side > rep.config.gram_cap:
        raise CapExceededError("kernel", side, rep.config.gram_cap)
    ordering, witness = _worst_ordering(rep, points)
    if strict and ordering > rep.tol:
        raise NonCommutingError(ordering, f"T_g+ / T_g-* at {witness}", check="regular_extension")
    blocks = _kernel_blocks(rep, points)
    raw = BlockMatrix(blocks).assembled()
    assembled, defect = hermitian_part(raw)
    if defect > rep.tol:
        logger.warning(f"kernel asymmetry {defect:.3e} exceeds {rep.tol:.3e}")
    return KernelMatrix(tuple(points), blocks, assembled, defect, ordering, witness)


class FactorizationReport(BaseModel):
    """Per-factor kernels and the Schur-product chain that rebuilds the full kernel."""

    factor_min_eigenvalues: list[float]
    product_defect: float
    lift_defects: list[float]
    lift_error: str | None = None
    tol: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return (
            self.lift_error is None
            and self.product_defect <= self.tol
            and all(defect <= self.tol for defect in self.lift_defects)
        )


class KernelPositivity(BaseModel):
    """Minimum eigenvalue of the assembled kernel against the PSD floor."""

    points: int
    dim: int
    min_eigenvalue: float
    floor: float
    asymmetry_defect: float
    ordering_defect: float = 0.0
    ordering_witness: str | None = None
    factorization: FactorizationReport | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.floor


def factorize_kernel(rep: NicaRep, kernel: KernelMatrix) -> FactorizationReport:
    """Split the kernel into per-factor kernels and multiply them back together."""
    config = rep.config
    points = kernel.points
    factor_blocks = [_kernel_blocks(rep, points, factor=i) for i in range(rep.semigroup.k)]
    minima = []
    for blocks in factor_blocks:
        hermitian, _ = hermitian_part(BlockMatrix(blocks).assembled())
        minima.append(min_eigenvalue(hermitian))

    product = BlockMatrix(factor_blocks[0])
    lift_defects: list[float] = []
    lift_error = None
    for blocks in factor_blocks[1:]:
        following = BlockMatrix(blocks)
        if lift_error is None:
            try:
                lift_defects.append(lift_compress_check(product, following, config).defect)
            except (NonCommutingEntriesError, CapExceededError) as exc:
                lift_error = str(exc)
                logger.warning(f"Schur lift skipped: {exc}")
        product = schur_product(product, following)

    product_defect = spectral_norm(product.assembled() - BlockMatrix(kernel.blocks).assembled())
    return FactorizationReport(
        factor_min_eigenvalues=minima,
        product_defect=product_defect,
        lift_defects=lift_defects,
        lift_error=lift_error,
        tol=config.scaled_tol(len(points) * rep.dim),
    )


def kernel_positivity(
    rep: NicaRep, points: Sequence[GroupElement], factorize: bool = False
) -> KernelPositivity:
    """Certify [T_{s_j - s_i}] >= 0 within ``-tol_psd``.

    Representations whose two orderings differ still get a kernel and a
    verdict; the gap is reported as ``ordering_defect``.
    """
    kernel = regular_kernel(rep, points, strict=False)
    n = kernel.assembled.shape[0]
    result = KernelPositivity(
        points=len(points),
        dim=rep.dim,
        min_eigenvalue=min_eigenvalue(kernel.assembled),
        floor=rep.config.scaled_tol_psd(n),
        asymmetry_defect=kernel.asymmetry_defect,
        ordering_defect=kernel.ordering_defect,
        ordering_witness=kernel.ordering_witness,
        factorization=factorize_kernel(rep, kernel) if factorize else None,
    )
    logger.info(
        f"kernel on {len(points)} points: min eigenvalue {result.min_eigenvalue:.3e} "
        f"({'positive' if result.positive else 'NOT positive'})"
    )
    return result
