"""Finite truncation of the dilation space K.

K_0 is the space of finitely supported H-valued functions on S with the form
<f, g> = sum_{s,t} <T_{t-s} f(t), g(s)>. Restricted to a support F it is the
Gram matrix G with block (s, t) = T_{t-s}; quotienting by the null space
leaves quotient coordinates Q with Q*Q = G (up to the discarded spectrum).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from nica_dilations.core.exceptions import CapExceededError, GramNotPSDError, SupportError
from nica_dilations.linalg import ComplexMatrix
from nica_dilations.representation import NicaRep, regular_kernel
from nica_dilations.semigroup import GridSet, GroupElement

logger = logging.getLogger(__name__)


def as_support(support: GridSet | Sequence[GroupElement]) -> GridSet:
    if isinstance(support, GridSet):
        return support
    return GridSet.of(support)


def gram_form(rep: NicaRep, support: GridSet | Sequence[GroupElement]) -> ComplexMatrix:
    """Symmetrized Gram matrix of {delta_t (x) e_p} over the support."""
    return regular_kernel(rep, list(as_support(support))).assembled


def raw_embedding(support: GridSet, element: GroupElement, dim: int) -> ComplexMatrix:
    """Raw coordinates of delta_element (x) e_p, one column per p."""
    if element not in support:
        raise SupportError(f"element {element} is not in the support")
    block = np.zeros((len(support) * dim, dim), dtype=np.complex128)
    start = support.index(element) * dim
    block[start : start + dim] = np.eye(dim)
    return block


def raw_translation(
    source: GridSet, target: GridSet, shift: GroupElement, dim: int
) -> ComplexMatrix:
    """Raw matrix of delta_t (x) h -> delta_{t+shift} (x) h from source into target."""
    matrix = np.zeros((len(target) * dim, len(source) * dim), dtype=np.complex128)
    eye = np.eye(dim)
    for j, element in enumerate(source):
        moved = element + shift
        if moved not in target:
            raise SupportError(f"translate {moved} of {element} is outside the target support")
        i = target.index(moved)
        matrix[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = eye
    return matrix


@dataclass(frozen=True, eq=False)
class DilationSpace:
    """Quotient of K_0 restricted to a finite support."""

    rep: NicaRep
    support: GridSet
    gram: ComplexMatrix
    asymmetry_defect: float
    eigenvalues: NDArray[np.float64]
    basis: ComplexMatrix
    min_eigenvalue: float
    discarded: int

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def rank(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def raw_dim(self) -> int:
        return len(self.support) * self.dim

    @cached_property
    def factor(self) -> ComplexMatrix:
        """Q with Q*Q = G on the retained spectrum (rank x raw_dim)."""
        return np.sqrt(self.eigenvalues)[:, np.newaxis] * self.basis.conj().T

    @cached_property
    def factor_pinv(self) -> ComplexMatrix:
        """Q^+ (raw_dim x rank); Q Q^+ = I."""
        return self.basis / np.sqrt(self.eigenvalues)[np.newaxis, :]

    def vectors(self, element: GroupElement) -> ComplexMatrix:
        """Quotient coordinates of delta_element (x) e_p, one column per p."""
        return self.factor @ raw_embedding(self.support, element, self.dim)

    def span(self, elements: Iterable[GroupElement]) -> ComplexMatrix:
        return np.hstack([self.vectors(element) for element in elements])

    @property
    def embed_h(self) -> ComplexMatrix:
        return self.vectors(self.support.semigroup.zero())

    def pairing(self, first: GroupElement, second: GroupElement) -> ComplexMatrix:
        """Matrix of <delta_first h, delta_second k> with entry [q, p] for h = e_p, k = e_q."""
        return self.vectors(second).conj().T @ self.vectors(first)

    def embedding_defect(self) -> float:
        embedded = self.embed_h
        return float(np.linalg.norm(embedded.conj().T @ embedded - np.eye(self.dim), 2))

    def extend(self, extra: Iterable[GroupElement]) -> DilationSpace:
        """The same construction on ``support ∪ extra``."""
        additions = [element for element in extra if element not in self.support]
        if not additions:
            return self
        return build_dilation(self.rep, self.support.union(additions))


def build_dilation(rep: NicaRep, support: GridSet | Sequence[GroupElement]) -> DilationSpace:
    """Quotient the Gram form on ``support`` by its numerical null space.

    Raises:
        SupportError: empty support, or 0 missing so H cannot embed
        CapExceededError: Gram side length above ``gram_cap``
        GramNotPSDError: smallest Gram eigenvalue below ``-tol_psd``
    """
    grid = as_support(support)
    if len(grid) == 0:
        raise SupportError("support is empty")
    if grid.semigroup.zero() not in grid:
        raise SupportError("support must contain 0 to embed H")
    config = rep.config
    side = len(grid) * rep.dim
    if side > config.gram_cap:
        raise CapExceededError("Gram", side, config.gram_cap)

    kernel = regular_kernel(rep, list(grid))
    eigenvalues, vectors = scipy.linalg.eigh(kernel.assembled)
    floor = config.scaled_tol_psd(side)
    min_eig = float(eigenvalues[0])
    if min_eig < -floor:
        raise GramNotPSDError(min_eig, floor)
    threshold = config.rank_rel_tol * max(float(eigenvalues[-1]), 0.0)
    keep = eigenvalues > threshold
    space = DilationSpace(
        rep=rep,
        support=grid,
        gram=kernel.assembled,
        asymmetry_defect=kernel.asymmetry_defect,
        eigenvalues=np.asarray(eigenvalues[keep], dtype=np.float64),
        basis=np.asarray(vectors[:, keep], dtype=np.complex128),
        min_eigenvalue=min_eig,
        discarded=int(np.count_nonzero(~keep)),
    )
    logger.debug(f"dilation on {len(grid)} points: raw={side} rank={space.rank} min_eig={min_eig:.3e}")
    return space
