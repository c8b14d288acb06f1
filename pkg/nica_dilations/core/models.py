"""Core data models shared by every verification step."""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckResult(BaseModel):
    """A single measured defect compared with its tolerance."""

    model_config = ConfigDict(frozen=True)

    check: str
    defect: float
    tol: float
    witness: str | None = None
    parameters: dict[str, Any] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return math.isfinite(self.defect) and self.defect <= self.tol


class EigenResult(BaseModel):
    """Smallest eigenvalue of a Hermitian matrix against a floor."""

    model_config = ConfigDict(frozen=True)

    min_eigenvalue: float
    floor: float
    asymmetry_defect: float = 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.floor


def worst(results: list[CheckResult]) -> CheckResult | None:
    """The result with the largest defect relative to its tolerance."""
    if not results:
        return None
    return max(results, key=lambda r: r.defect / r.tol if r.tol > 0 else math.inf)


def max_defect(check: str, values: list[tuple[float, str]], tol: float) -> CheckResult:
    """Collapse ``(defect, witness)`` samples into the worst one."""
    defect, witness = max(values, key=lambda item: item[0]) if values else (0.0, None)
    return CheckResult(check=check, defect=defect, tol=tol, witness=witness)
