"""Contractive representations of S given on the declared generators."""

from __future__ import annotations

import itertools
import logging
import threading
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from cachetools import LRUCache

from nica_dilations.core.config import NumericConfig
from nica_dilations.core.exceptions import (
    NonCommutingError,
    NormExceededError,
    NotInMonoidError,
    ShapeMismatchError,
)
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, kron_all, spectral_norm
from nica_dilations.semigroup import GroupElement, Semigroup, decompose_parts

logger = logging.getLogger(__name__)

Coeffs = tuple[tuple[int, ...], ...]


class RepMode(str, Enum):
    """How generator matrices are supplied."""

    TENSOR = "tensor"  # one leg per factor, T_s = kron of leg operators
    DIRECT = "direct"  # full-space matrices per generator


@dataclass
class NicaRep:
    """A representation T of S on C^dim, determined by its generator matrices.

    In tensor mode ``generators[i][j]`` acts on leg ``i`` (dimension
    ``leg_dims[i]``); in direct mode it acts on the full space.
    """

    semigroup: Semigroup
    mode: RepMode
    generators: tuple[tuple[ComplexMatrix, ...], ...]
    dim: int
    leg_dims: tuple[int, ...] = ()
    _cache: LRUCache[Coeffs, ComplexMatrix] = field(
        default_factory=lambda: LRUCache(maxsize=4096), repr=False, compare=False
    )
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @property
    def config(self) -> NumericConfig:
        return self.semigroup.config

    @property
    def tol(self) -> float:
        return self.config.scaled_tol(self.dim)

    def full_generator(self, factor: int, index: int) -> ComplexMatrix:
        """Generator ``(factor, index)`` as a matrix on the full space."""
        matrix = self.generators[factor][index]
        if self.mode == RepMode.DIRECT:
            return matrix
        legs = [np.eye(n, dtype=np.complex128) for n in self.leg_dims]
        legs[factor] = matrix
        return kron_all(legs)

    def labelled_generators(self) -> list[tuple[str, int, ComplexMatrix]]:
        """``(label, factor, full matrix)`` for every declared generator."""
        return [
            (self.semigroup.label(i, j), i, self.full_generator(i, j))
            for i, row in enumerate(self.generators)
            for j in range(len(row))
        ]

    def monoid_operator(self, coeffs: Coeffs) -> ComplexMatrix:
        """T_s for s = sum of generators with nonnegative multiplicities ``coeffs``.

        Raises:
            NotInMonoidError: some coefficient is negative
        """
        with self._lock:
            cached = self._cache.get(coeffs)
        if cached is not None:
            return cached
        if any(c < 0 for row in coeffs for c in row):
            raise NotInMonoidError(coeffs)
        value = self._compose(coeffs)
        value.setflags(write=False)
        with self._lock:
            self._cache[coeffs] = value
        return value

    def _compose(self, coeffs: Coeffs) -> ComplexMatrix:
        if self.mode == RepMode.TENSOR:
            legs = [
                _power_product(self.generators[i], row, self.leg_dims[i])
                for i, row in enumerate(coeffs)
            ]
            return kron_all(legs)
        result = np.eye(self.dim, dtype=np.complex128)
        for i, row in enumerate(coeffs):
            result = result @ _power_product(self.generators[i], row, self.dim)
        return result

    def with_generators(self, generators: Sequence[Sequence[ComplexMatrix]]) -> NicaRep:
        """Same shape and mode, new generator matrices (no re-validation)."""
        return NicaRep(
            semigroup=self.semigroup,
            mode=self.mode,
            generators=tuple(tuple(as_complex_matrix(g) for g in row) for row in generators),
            dim=self.dim,
            leg_dims=self.leg_dims,
        )


def _power_product(matrices: Sequence[ComplexMatrix], powers: Sequence[int], n: int) -> ComplexMatrix:
    result = np.eye(n, dtype=np.complex128)
    for matrix, power in zip(matrices, powers, strict=True):
        if power:
            result = result @ np.linalg.matrix_power(matrix, power)
    return result


def _check_generators(
    semigroup: Semigroup,
    generators: tuple[tuple[ComplexMatrix, ...], ...],
    sizes: Sequence[int],
    tol: float,
) -> None:
    if len(generators) != semigroup.k:
        raise ShapeMismatchError(f"expected matrices for {semigroup.k} factors, got {len(generators)}")
    for i, (row, rank, n) in enumerate(zip(generators, semigroup.shape, sizes, strict=True)):
        if len(row) != rank:
            raise ShapeMismatchError(f"factor {i} declares {rank} generators, got {len(row)} matrices")
        for j, matrix in enumerate(row):
            if matrix.shape != (n, n):
                raise ShapeMismatchError(
                    f"generator {semigroup.label(i, j)} has shape {matrix.shape}, expected {(n, n)}"
                )
            norm = spectral_norm(matrix)
            if norm > 1.0 + tol:
                raise NormExceededError(norm, 1.0 + tol, semigroup.label(i, j))
        for (j, x), (other, y) in itertools.combinations(enumerate(row), 2):
            defect = spectral_norm(x @ y - y @ x)
            if defect > tol:
                raise NonCommutingError(
                    defect, f"{semigroup.label(i, j)}, {semigroup.label(i, other)}"
                )


def build_tensor_rep(
    semigroup: Semigroup, legs: Sequence[Sequence[object]]
) -> NicaRep:
    """Representation with T_s = kron_i T^(i)_{s_i}; leg families doubly commute by construction.

    Args:
        semigroup: The semigroup S
        legs: Per factor, one square contraction per declared generator, all of
            the same leg dimension

    Raises:
        ShapeMismatchError: leg matrices inconsistent with the factor ranks
        NormExceededError: some leg matrix is not a contraction
        NonCommutingError: generators of one factor do not commute
    """
    matrices = tuple(tuple(as_complex_matrix(m) for m in row) for row in legs)
    if len(matrices) != semigroup.k:
        raise ShapeMismatchError(f"expected legs for {semigroup.k} factors, got {len(matrices)}")
    leg_dims = tuple(row[0].shape[0] if row else 0 for row in matrices)
    dim = int(np.prod(leg_dims)) if leg_dims else 1
    tol = semigroup.config.scaled_tol(dim)
    _check_generators(semigroup, matrices, leg_dims, tol)
    logger.info(f"tensor representation built: legs={leg_dims} dim={dim}")
    return NicaRep(semigroup, RepMode.TENSOR, matrices, dim, leg_dims)


def build_direct_rep(semigroup: Semigroup, generators: Sequence[Sequence[object]]) -> NicaRep:
    """Representation from full-space generator matrices.

    Norms and within-factor commutation are enforced here; the cross-factor
    Nica condition is left to ``validate_nica``.
    """
    matrices = tuple(tuple(as_complex_matrix(m) for m in row) for row in generators)
    if not matrices or not matrices[0]:
        raise ShapeMismatchError("direct representation needs at least one generator matrix")
    dim = matrices[0][0].shape[0]
    tol = semigroup.config.scaled_tol(dim)
    _check_generators(semigroup, matrices, [dim] * semigroup.k, tol)
    logger.info(f"direct representation built: dim={dim}")
    return NicaRep(semigroup, RepMode.DIRECT, matrices, dim)


def ordering_defect(rep: NicaRep, g: GroupElement) -> float:
    """||T_{g-}^* T_{g+} - T_{g+} T_{g-}^*||; zero when g has a single sign."""
    g_plus, g_minus = decompose_parts(g)
    if g_plus.is_zero or g_minus.is_zero:
        return 0.0
    positive = rep.monoid_operator(g_plus.coeffs)
    negative = rep.monoid_operator(g_minus.coeffs).conj().T
    return spectral_norm(negative @ positive - positive @ negative)


def evaluate_at(rep: NicaRep, g: GroupElement, strict: bool = False) -> ComplexMatrix:
    """T_g = T_{g-}^* T_{g+}.

    With ``strict`` a ``NonCommutingError`` is raised when the two orderings
    differ (see ``ordering_defect``).

    Raises:
        NotInMonoidError: g+ or g- lies outside the generated monoid
    """
    if strict:
        defect = ordering_defect(rep, g)
        if defect > rep.tol:
            raise NonCommutingError(defect, f"T_g+ / T_g-* at g={g}", check="regular_extension")
    g_plus, g_minus = decompose_parts(g)
    positive = rep.monoid_operator(g_plus.coeffs)
    if g_minus.is_zero:
        return positive
    return rep.monoid_operator(g_minus.coeffs).conj().T @ positive
