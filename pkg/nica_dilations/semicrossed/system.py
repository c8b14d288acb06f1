"""Semigroup dynamical systems (A, S, alpha) with inner actions on matrix algebras."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, computed_field

from nica_dilations.core.exceptions import NotInMonoidError, ShapeMismatchError
from nica_dilations.core.models import CheckResult, max_defect
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, spectral_norm
from nica_dilations.semigroup import GroupElement, Semigroup

logger = logging.getLogger(__name__)


def matrix_units(d: int) -> tuple[ComplexMatrix, ...]:
    units = []
    for i, j in itertools.product(range(d), repeat=2):
        unit = np.zeros((d, d), dtype=np.complex128)
        unit[i, j] = 1.0
        units.append(unit)
    return tuple(units)


@dataclass(frozen=True, eq=False)
class DynSystem:
    """A unital *-subalgebra of M_d (given by a basis) and alpha_gen = Ad(u_gen).

    ``action[i][j]`` is the unitary implementing the j-th generator of factor i.
    """

    semigroup: Semigroup
    dim: int
    action: tuple[tuple[ComplexMatrix, ...], ...]
    basis: tuple[ComplexMatrix, ...]

    @property
    def tol(self) -> float:
        return self.semigroup.config.scaled_tol(self.dim)

    def _basis_matrix(self) -> ComplexMatrix:
        return np.stack([b.reshape(-1) for b in self.basis], axis=1)

    def coordinates(self, matrix: ComplexMatrix) -> tuple[ComplexMatrix, float]:
        """Least-squares coordinates of ``matrix`` in the basis and the residual norm."""
        columns = self._basis_matrix()
        target = np.asarray(matrix, dtype=np.complex128).reshape(-1)
        coords, *_ = np.linalg.lstsq(columns, target, rcond=None)
        residual = float(np.linalg.norm(columns @ coords - target))
        return np.asarray(coords, dtype=np.complex128), residual

    def algebra_residual(self, matrix: ComplexMatrix) -> float:
        return self.coordinates(matrix)[1]

    def unitary(self, g: GroupElement) -> ComplexMatrix:
        """U_g = prod u_gen^c, with u* for negative multiplicities."""
        result = np.eye(self.dim, dtype=np.complex128)
        for row, unitaries in zip(g.coeffs, self.action, strict=True):
            for power, u in zip(row, unitaries, strict=True):
                if power > 0:
                    result = result @ np.linalg.matrix_power(u, power)
                elif power < 0:
                    result = result @ np.linalg.matrix_power(u.conj().T, -power)
        return result

    def alpha(self, s: GroupElement, matrix: ComplexMatrix) -> ComplexMatrix:
        """alpha_s for s in the generated monoid.

        Raises:
            NotInMonoidError: s has a negative coefficient
        """
        if not s.in_monoid():
            raise NotInMonoidError(s.coeffs)
        return self.alpha_group(s, matrix)

    def alpha_group(self, g: GroupElement, matrix: ComplexMatrix) -> ComplexMatrix:
        """alpha_g for any g in G; inner actions are automorphisms."""
        u = self.unitary(g)
        return u @ matrix @ u.conj().T

    def generator_labels(self) -> list[tuple[str, GroupElement, ComplexMatrix]]:
        return [
            (self.semigroup.label(i, j), element, self.action[i][j])
            for i, j, element in self.semigroup.generators()
        ]


def build_system(
    semigroup: Semigroup,
    action: Sequence[Sequence[object]],
    basis: Sequence[object] | None = None,
) -> DynSystem:
    """Assemble a system; the algebra defaults to the full matrix algebra.

    Raises:
        ShapeMismatchError: unitaries or basis matrices of inconsistent shape
    """
    unitaries = tuple(tuple(as_complex_matrix(u) for u in row) for row in action)
    if len(unitaries) != semigroup.k or any(
        len(row) != rank for row, rank in zip(unitaries, semigroup.shape, strict=False)
    ):
        raise ShapeMismatchError(f"action must give one unitary per generator, shape {semigroup.shape}")
    d = unitaries[0][0].shape[0]
    for row in unitaries:
        for u in row:
            if u.shape != (d, d):
                raise ShapeMismatchError(f"action unitary shape {u.shape}, expected {(d, d)}")
    algebra = tuple(as_complex_matrix(b) for b in basis) if basis else matrix_units(d)
    for b in algebra:
        if b.shape != (d, d):
            raise ShapeMismatchError(f"basis matrix shape {b.shape}, expected {(d, d)}")
    return DynSystem(semigroup, d, unitaries, algebra)


def trivial_system(semigroup: Semigroup, d: int = 1) -> DynSystem:
    """Identity action on M_d."""
    eye = np.eye(d, dtype=np.complex128)
    return build_system(semigroup, [[eye] * rank for rank in semigroup.shape])


class SystemReport(BaseModel):
    """Outcome of ``validate_system``."""

    checks: list[CheckResult]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.check == name)


def validate_system(system: DynSystem) -> SystemReport:
    """Unitarity, commuting conjugations, unitality, multiplicativity and algebra invariance."""
    tol = system.tol
    eye = np.eye(system.dim, dtype=np.complex128)
    generators = system.generator_labels()
    basis = system.basis

    unitarity = [
        (max(spectral_norm(u.conj().T @ u - eye), spectral_norm(u @ u.conj().T - eye)), label)
        for label, _, u in generators
    ]
    commuting = []
    for (label_a, a, _), (label_b, b, _) in itertools.combinations(generators, 2):
        for k, element in enumerate(basis):
            first = system.alpha(a, system.alpha(b, element))
            second = system.alpha(b, system.alpha(a, element))
            commuting.append((spectral_norm(first - second), f"{label_a}, {label_b} on basis[{k}]"))
    unital = [(spectral_norm(system.alpha(g, eye) - eye), label) for label, g, _ in generators]
    multiplicative = []
    invariance = []
    for label, g, _ in generators:
        for (k, x), (m, y) in itertools.product(enumerate(basis), repeat=2):
            defect = spectral_norm(system.alpha(g, x @ y) - system.alpha(g, x) @ system.alpha(g, y))
            multiplicative.append((defect, f"{label} on basis[{k}]*basis[{m}]"))
        for k, x in enumerate(basis):
            invariance.append((system.algebra_residual(system.alpha(g, x)), f"{label} on basis[{k}]"))
    closure = [(system.algebra_residual(eye), "identity")]
    for (k, x), (m, y) in itertools.product(enumerate(basis), repeat=2):
        closure.append((system.algebra_residual(x @ y), f"basis[{k}]*basis[{m}]"))
    for k, x in enumerate(basis):
        closure.append((system.algebra_residual(x.conj().T), f"basis[{k}]*"))

    report = SystemReport(
        checks=[
            max_defect("unitarity", unitarity, tol),
            max_defect("conjugation_commutation", commuting, tol),
            max_defect("unitality", unital, tol),
            max_defect("multiplicativity", multiplicative, tol),
            max_defect("invariance", invariance, tol),
            max_defect("algebra_closure", closure, tol),
        ]
    )
    if not report.passed:
        failed = [check.check for check in report.checks if not check.passed]
        logger.warning(f"dynamical system fails: {failed}")
    return report
