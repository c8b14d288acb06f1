"""Norm, commutation and Nica-covariance checks for a representation."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence

from pydantic import BaseModel, computed_field

from nica_dilations.core.models import CheckResult, max_defect
from nica_dilations.linalg import ComplexMatrix, spectral_norm
from nica_dilations.representation.nica import NicaRep
from nica_dilations.semigroup import GroupElement

logger = logging.getLogger(__name__)


class ValidationReport(BaseModel):
    """Outcome of ``validate_nica``: one result per condition."""

    dim: int
    tol: float
    checks: list[CheckResult]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.check == name:
                return check
        raise KeyError(name)


def _sample_operators(
    rep: NicaRep, points: Sequence[GroupElement] | None
) -> list[tuple[str, int, ComplexMatrix]]:
    operators = rep.labelled_generators()
    for point in points or ():
        factor = point.single_factor()
        if factor is None:
            continue
        operators.append((str(point), factor, rep.monoid_operator(point.coeffs)))
    return operators


def validate_nica(rep: NicaRep, points: Sequence[GroupElement] | None = None) -> ValidationReport:
    """Measure contraction excess, within-factor commutators and the Nica defect.

    The cross-factor conditions are evaluated on the generators and on any
    single-factor ``points`` given, over all pairs from different factors.
    """
    tol = rep.tol
    operators = _sample_operators(rep, points)

    norm_excess = [(max(spectral_norm(op) - 1.0, 0.0), label) for label, _, op in operators]
    within: list[tuple[float, str]] = []
    nica: list[tuple[float, str]] = []
    commuting: list[tuple[float, str]] = []
    for (label_x, i, x), (label_y, j, y) in itertools.combinations(operators, 2):
        witness = f"{label_x}, {label_y}"
        if i == j:
            within.append((spectral_norm(x @ y - y @ x), witness))
            continue
        nica.append((spectral_norm(x.conj().T @ y - y @ x.conj().T), witness))
        commuting.append((spectral_norm(x @ y - y @ x), witness))

    checks: list[CheckResult] = []
    for name, values in (
        ("contraction", norm_excess),
        ("within_factor_commutation", within),
        ("nica_covariance", nica),
        ("cross_factor_commutation", commuting),
    ):
        result = max_defect(name, values, tol)
        checks.append(result)
        if not result.passed:
            logger.warning(f"{name} defect {result.defect:.3e} exceeds {tol:.3e} at {result.witness}")
        else:
            logger.debug(f"{name} defect {result.defect:.3e}")
    return ValidationReport(dim=rep.dim, tol=tol, checks=checks)
