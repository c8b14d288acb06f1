"""Covariant pairs (sigma, T) and their isometric Nica-covariant dilations (pi, V)."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from pydantic import BaseModel, computed_field

from nica_dilations.core.exceptions import ShapeMismatchError
from nica_dilations.core.models import CheckResult, max_defect
from nica_dilations.dilation import (
    DilationSpace,
    build_dilation,
    compressed_shift,
    shift_target,
)
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, spectral_norm
from nica_dilations.representation import NicaRep
from nica_dilations.semicrossed.system import DynSystem
from nica_dilations.semigroup import GridSet, GroupElement

logger = logging.getLogger(__name__)


class TruncationReport(BaseModel):
    """Boundary bookkeeping for shifts truncated to a finite support."""

    interior_isometry_defect: float
    interior_unitary_defect: float | None = None
    boundary_columns: dict[str, int]
    support_size: int


@dataclass(frozen=True, eq=False)
class CovariantPair:
    """sigma given on the algebra basis, together with a representation T on the same H."""

    system: DynSystem
    sigma_basis: tuple[ComplexMatrix, ...]
    rep: NicaRep
    truncation: TruncationReport | None = None

    def __post_init__(self) -> None:
        if len(self.sigma_basis) != len(self.system.basis):
            raise ShapeMismatchError(
                f"sigma needs {len(self.system.basis)} basis images, got {len(self.sigma_basis)}"
            )
        for image in self.sigma_basis:
            if image.shape != (self.rep.dim, self.rep.dim):
                raise ShapeMismatchError(f"sigma image shape {image.shape}, expected H of dim {self.rep.dim}")

    @property
    def dim(self) -> int:
        return self.rep.dim

    def sigma_of(self, matrix: ComplexMatrix) -> ComplexMatrix:
        coords, _ = self.system.coordinates(matrix)
        return np.einsum("k,kab->ab", coords, np.stack(self.sigma_basis))

    def with_rep(self, rep: NicaRep) -> CovariantPair:
        return CovariantPair(self.system, self.sigma_basis, rep, self.truncation)


def identity_sigma(system: DynSystem) -> tuple[ComplexMatrix, ...]:
    return tuple(np.array(b, dtype=np.complex128) for b in system.basis)


def amplified_sigma(system: DynSystem, multiplicity: int) -> tuple[ComplexMatrix, ...]:
    """A -> A (x) I_multiplicity."""
    eye = np.eye(multiplicity, dtype=np.complex128)
    return tuple(np.kron(b, eye) for b in system.basis)


def build_pair(system: DynSystem, sigma: Sequence[object] | None, rep: NicaRep) -> CovariantPair:
    images = identity_sigma(system) if sigma is None else tuple(as_complex_matrix(m) for m in sigma)
    return CovariantPair(system, images, rep)


class CovarianceReport(BaseModel):
    """Covariance defect and *-representation defects of sigma."""

    checks: list[CheckResult]
    truncation: TruncationReport | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.check == name)


def sigma_defects(pair: CovariantPair, tol: float) -> list[CheckResult]:
    basis = pair.system.basis
    eye_h = np.eye(pair.dim, dtype=np.complex128)
    multiplicative = [
        (
            spectral_norm(pair.sigma_of(x @ y) - pair.sigma_basis[k] @ pair.sigma_basis[m]),
            f"basis[{k}]*basis[{m}]",
        )
        for (k, x), (m, y) in itertools.product(enumerate(basis), repeat=2)
    ]
    adjoint = [
        (spectral_norm(pair.sigma_of(x.conj().T) - pair.sigma_basis[k].conj().T), f"basis[{k}]")
        for k, x in enumerate(basis)
    ]
    unital = [(spectral_norm(pair.sigma_of(np.eye(pair.system.dim)) - eye_h), "identity")]
    return [
        max_defect("sigma_multiplicative", multiplicative, tol),
        max_defect("sigma_adjoint", adjoint, tol),
        max_defect("sigma_unital", unital, tol),
    ]


def validate_covariance(pair: CovariantPair) -> CovarianceReport:
    """max ||sigma(A) T_s - T_s sigma(alpha_s(A))|| over basis x generators."""
    tol = pair.rep.tol
    values = []
    for i, j, element in pair.rep.semigroup.generators():
        label = pair.rep.semigroup.label(i, j)
        t = pair.rep.full_generator(i, j)
        for k, a in enumerate(pair.system.basis):
            lhs = pair.sigma_basis[k] @ t
            rhs = t @ pair.sigma_of(pair.system.alpha(element, a))
            values.append((spectral_norm(lhs - rhs), f"basis[{k}], {label}"))
    checks = [max_defect("covariance", values, tol), *sigma_defects(pair, tol)]
    report = CovarianceReport(checks=checks, truncation=pair.truncation)
    logger.info(f"covariance defect {checks[0].defect:.3e} (witness {checks[0].witness})")
    return report


def raw_pi(pair: CovariantPair, support: GridSet, matrix: ComplexMatrix) -> ComplexMatrix:
    """pi_0(A) on raw coordinates: block-diagonal sigma(alpha_t(A)) over t in the support."""
    blocks = [pair.sigma_of(pair.system.alpha(t, matrix)) for t in support]
    return np.asarray(scipy.linalg.block_diag(*blocks), dtype=np.complex128)


def quotient_pi(pair: CovariantPair, dil: DilationSpace, matrix: ComplexMatrix) -> ComplexMatrix:
    return dil.factor @ raw_pi(pair, dil.support, matrix) @ dil.factor_pinv


@dataclass(frozen=True, eq=False)
class CovariantDilation:
    """The dilated pair on the quotient of a support: pi on the basis and the space."""

    pair: CovariantPair
    dil: DilationSpace
    pi_basis: tuple[ComplexMatrix, ...]
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def pi(self, matrix: ComplexMatrix) -> ComplexMatrix:
        return quotient_pi(self.pair, self.dil, matrix)


def dilate_covariant_pair(pair: CovariantPair, support: GridSet | Sequence[GroupElement]) -> CovariantDilation:
    """Build (pi, V) and check (1) pi(A)|_H = sigma(A), (2) pi(A)V_s = V_s pi(alpha_s(A)),
    (3) pi multiplicative and *-preserving on the basis.

    Raises:
        GramNotPSDError: the representation's Gram form is not positive
    """
    dil = build_dilation(pair.rep, support)
    config = pair.rep.config
    basis = pair.system.basis
    pi_basis = tuple(quotient_pi(pair, dil, b) for b in basis)
    embedded = dil.embed_h

    restriction = [
        (spectral_norm(pi_basis[k] @ embedded - embedded @ pair.sigma_basis[k]), f"basis[{k}]")
        for k in range(len(basis))
    ]

    generators = [element for _, _, element in pair.rep.semigroup.generators()]
    target = shift_target(dil, generators)
    covariance = []
    for s in generators:
        shift = compressed_shift(dil, s, target=target)
        for k, a in enumerate(basis):
            lhs = quotient_pi(pair, target, a) @ shift.matrix
            rhs = shift.matrix @ quotient_pi(pair, dil, pair.system.alpha(s, a))
            covariance.append((spectral_norm(lhs - rhs), f"basis[{k}], s={s}"))

    multiplicative = [
        (spectral_norm(quotient_pi(pair, dil, x @ y) - pi_basis[k] @ pi_basis[m]), f"basis[{k}]*basis[{m}]")
        for (k, x), (m, y) in itertools.product(enumerate(basis), repeat=2)
    ]
    adjoint = [
        (spectral_norm(quotient_pi(pair, dil, x.conj().T) - pi_basis[k].conj().T), f"basis[{k}]")
        for k, x in enumerate(basis)
    ]
    tol = config.scaled_tol(target.raw_dim)
    checks = (
        max_defect("pi_restriction", restriction, tol),
        max_defect("pi_covariance", covariance, tol),
        max_defect("pi_multiplicative", multiplicative, tol),
        max_defect("pi_adjoint", adjoint, tol),
    )
    logger.info(
        f"covariant dilation rank={dil.rank} on {len(dil.support)} points; "
        f"worst defect {max(c.defect for c in checks):.3e}"
    )
    return CovariantDilation(pair=pair, dil=dil, pi_basis=pi_basis, checks=checks)
