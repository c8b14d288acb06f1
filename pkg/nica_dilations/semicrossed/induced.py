"""Induced covariant pairs on H_0 (x) l^2(support) with truncated translations."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import scipy.linalg

from nica_dilations.core.exceptions import SupportError
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, spectral_norm
from nica_dilations.representation import build_direct_rep
from nica_dilations.semicrossed.covariant import CovariantPair, TruncationReport
from nica_dilations.semicrossed.system import DynSystem
from nica_dilations.semigroup import GridSet, GroupElement

logger = logging.getLogger(__name__)


def truncated_translation(support: GridSet, s: GroupElement, n0: int) -> ComplexMatrix:
    """W_s: delta_t (x) h -> delta_{t+s} (x) h when t + s stays in the support, else 0."""
    n = len(support)
    matrix = np.zeros((n * n0, n * n0), dtype=np.complex128)
    eye = np.eye(n0)
    for j, t in enumerate(support):
        moved = t + s
        if moved in support:
            i = support.index(moved)
            matrix[i * n0 : (i + 1) * n0, j * n0 : (j + 1) * n0] = eye
    return matrix


def _interior_columns(support: GridSet, s: GroupElement, n0: int) -> list[int]:
    return [
        j * n0 + p for j, t in enumerate(support) if t + s in support for p in range(n0)
    ]


def _interior_rows(support: GridSet, s: GroupElement, n0: int) -> list[int]:
    return [
        i * n0 + p for i, t in enumerate(support) if t - s in support for p in range(n0)
    ]


def induced_representation(
    system: DynSystem,
    sigma0: Sequence[object],
    support: GridSet,
    bilateral: bool = False,
) -> CovariantPair:
    """Pair (sigma~, W) with sigma~(A) = diag_t sigma0(alpha_t(A)) and W_s truncated translation.

    Index order is ``t * n0 + p``. With ``bilateral`` the support is a window of G
    (see ``enumerate_window``) and alpha is evaluated on the whole group.

    Raises:
        SupportError: empty support, or monoid support containing negative elements
    """
    if len(support) == 0:
        raise SupportError("induced representation needs a non-empty support")
    images = tuple(as_complex_matrix(m) for m in sigma0)
    n0 = images[0].shape[0]
    alpha = system.alpha_group if bilateral else system.alpha
    if not bilateral and not all(t.in_monoid() for t in support):
        raise SupportError("unilateral induced pair needs a support inside the monoid")

    def sigma0_of(matrix: ComplexMatrix) -> ComplexMatrix:
        coords, _ = system.coordinates(matrix)
        return np.einsum("k,kab->ab", coords, np.stack(images))

    sigma_basis = tuple(
        np.asarray(
            scipy.linalg.block_diag(*[sigma0_of(alpha(t, b)) for t in support]),
            dtype=np.complex128,
        )
        for b in system.basis
    )
    semigroup = system.semigroup
    shifts = [
        [truncated_translation(support, semigroup.generator(i, j), n0) for j in range(m)]
        for i, m in enumerate(semigroup.shape)
    ]
    rep = build_direct_rep(semigroup, shifts)

    isometry_defect = 0.0
    unitary_defect = 0.0
    boundary: dict[str, int] = {}
    for i, j, s in semigroup.generators():
        w = rep.full_generator(i, j)
        columns = _interior_columns(support, s, n0)
        boundary[semigroup.label(i, j)] = (len(support) * n0 - len(columns)) // n0
        if columns:
            block = w[:, columns]
            isometry_defect = max(
                isometry_defect, spectral_norm(block.conj().T @ block - np.eye(len(columns)))
            )
        if bilateral:
            rows = _interior_rows(support, s, n0)
            if rows:
                block = w[rows, :]
                unitary_defect = max(
                    unitary_defect, spectral_norm(block @ block.conj().T - np.eye(len(rows)))
                )
    truncation = TruncationReport(
        interior_isometry_defect=isometry_defect,
        interior_unitary_defect=unitary_defect if bilateral else None,
        boundary_columns=boundary,
        support_size=len(support),
    )
    logger.info(
        f"induced pair on {len(support)} points x dim {n0}: boundary columns {boundary}"
    )
    return CovariantPair(system, sigma_basis, rep, truncation)
