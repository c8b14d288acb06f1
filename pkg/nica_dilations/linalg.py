"""Shared numerical helpers: norms, Hermitian parts, eigenvalue floors."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from nica_dilations.core.models import EigenResult

ComplexMatrix = NDArray[np.complex128]


def as_complex_matrix(data: object) -> ComplexMatrix:
    matrix = np.asarray(data, dtype=np.complex128)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    return matrix


def spectral_norm(matrix: NDArray[np.generic]) -> float:
    """Operator norm, computed as the largest singular value."""
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(matrix)[0])


def stacked_spectral_norms(stack: NDArray[np.generic]) -> NDArray[np.float64]:
    """Spectral norms of every trailing 2-d slice of ``stack``."""
    if stack.size == 0:
        return np.zeros(stack.shape[:-2])
    return np.asarray(np.linalg.norm(stack, ord=2, axis=(-2, -1)), dtype=np.float64)


def hermitian_part(matrix: ComplexMatrix) -> tuple[ComplexMatrix, float]:
    """Return ``(M + M*)/2`` and the asymmetry defect ``||M - M*||``."""
    adjoint = matrix.conj().T
    return (matrix + adjoint) / 2, spectral_norm(matrix - adjoint)


def min_eigenvalue(hermitian: ComplexMatrix) -> float:
    if hermitian.size == 0:
        return 0.0
    return float(scipy.linalg.eigvalsh(hermitian, subset_by_index=[0, 0])[0])


def certify_psd(matrix: ComplexMatrix, floor: float) -> EigenResult:
    """Symmetrize, then compare the smallest eigenvalue against ``-floor``."""
    hermitian, defect = hermitian_part(matrix)
    return EigenResult(
        min_eigenvalue=min_eigenvalue(hermitian), floor=floor, asymmetry_defect=defect
    )


def kron_all(factors: list[ComplexMatrix]) -> ComplexMatrix:
    result = np.eye(1, dtype=np.complex128)
    for factor in factors:
        result = np.kron(result, factor)
    return result


def standard_complex_normal(rng: np.random.Generator, shape: tuple[int, ...]) -> ComplexMatrix:
    # unit expected outer product
    return np.sqrt(0.5) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
