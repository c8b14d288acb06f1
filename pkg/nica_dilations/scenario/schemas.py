"""Scenario and report models."""

from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from nica_dilations.core.config import NumericConfig
from nica_dilations.core.models import CheckResult
from nica_dilations.semigroup import FactorSpec

ComplexEntry = float | Annotated[list[float], Field(min_length=2, max_length=2)]
MatrixSpec = ComplexEntry | list[list[ComplexEntry]]
ElementSpec = list[list[int]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# Inputs


class TensorRepSpec(_Strict):
    """T_s = kron of one commuting contraction family per factor."""

    kind: Literal["tensor"] = "tensor"
    legs: list[list[MatrixSpec]]


class DirectRepSpec(_Strict):
    """Full-space generator matrices, one list per factor."""

    kind: Literal["direct"] = "direct"
    generators: list[list[MatrixSpec]]


class RandomRepSpec(_Strict):
    """Seeded random tensor representation; ``isometric`` draws unitary legs."""

    kind: Literal["random"] = "random"
    leg_dims: int | list[int] = 2
    radius: float = Field(default=0.9, gt=0.0, le=1.0)
    isometric: bool = False


RepresentationSpec = Annotated[
    TensorRepSpec | DirectRepSpec | RandomRepSpec, Field(discriminator="kind")
]


class SystemSpec(_Strict):
    """Inner action alpha_gen = Ad(u_gen) on an algebra, and sigma on its basis."""

    action: list[list[MatrixSpec]]
    basis: list[MatrixSpec] | None = None
    sigma: list[MatrixSpec] | None = None


class TermSpec(_Strict):
    s: ElementSpec
    coefficient: MatrixSpec


class PolynomialSpec(_Strict):
    terms: list[TermSpec] = Field(min_length=1)


class _Task(_Strict):
    name: str | None = None


class KernelCheckTask(_Task):
    kind: Literal["kernel_check"] = "kernel_check"
    points: list[ElementSpec] | None = None
    depth: int | None = Field(default=None, ge=0)
    factorize: bool = False


class DilateTask(_Task):
    kind: Literal["dilate"] = "dilate"
    support: list[ElementSpec] | None = None
    depth: int | None = Field(default=None, ge=0)


VerifyIdentity = Literal["isometry", "regularity", "nica", "uniqueness", "coinvariance", "restricted"]

_REQUIRED_PARAMETERS: dict[str, tuple[str, ...]] = {
    "isometry": ("s",),
    "regularity": ("g",),
    "coinvariance": ("s",),
    "nica": ("s", "t"),
    "restricted": ("s", "mu"),
    "uniqueness": (),
}


class VerifyCase(_Strict):
    s: ElementSpec | None = None
    t: ElementSpec | None = None
    mu: ElementSpec | None = None
    nu: ElementSpec | None = None
    g: ElementSpec | None = None


class VerifyTask(_Task):
    """One dilation identity; without ``cases`` a default family over the generators is used."""

    kind: Literal["verify"] = "verify"
    identity: VerifyIdentity
    cases: list[VerifyCase] = Field(default_factory=list)
    depth: int | None = Field(default=None, ge=0)
    second_depth: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_cases(self) -> VerifyTask:
        required = _REQUIRED_PARAMETERS[self.identity]
        for index, case in enumerate(self.cases):
            missing = [key for key in required if getattr(case, key) is None]
            if missing:
                raise ValueError(f"{self.identity} case {index} is missing {missing}")
        return self


class SchurCheckTask(_Task):
    """Explicit block matrices ``a``/``b``, or seeded tensor-structured random pairs."""

    kind: Literal["schur_check"] = "schur_check"
    a: list[list[MatrixSpec]] | None = None
    b: list[list[MatrixSpec]] | None = None
    m: int = Field(default=3, ge=1)
    left_dim: int = Field(default=2, ge=1)
    right_dim: int = Field(default=2, ge=1)
    samples: int = Field(default=5, ge=1)

    @model_validator(mode="after")
    def _check_pair(self) -> SchurCheckTask:
        if (self.a is None) != (self.b is None):
            raise ValueError("schur_check needs both a and b, or neither")
        return self


class ValidateTask(_Task):
    """Contraction, commutation and Nica checks; system and covariance checks when present."""

    kind: Literal["validate"] = "validate"


class InducedTask(_Task):
    kind: Literal["induced"] = "induced"
    depth: int | None = Field(default=None, ge=0)
    bilateral: bool = False
    sigma0: list[MatrixSpec] | None = None


class CovariantDilateTask(_Task):
    kind: Literal["covariant_dilate"] = "covariant_dilate"
    support: list[ElementSpec] | None = None
    depth: int | None = Field(default=None, ge=0)


class NormEstimateTask(_Task):
    kind: Literal["norm_estimate"] = "norm_estimate"
    polynomial: PolynomialSpec
    samples: int = Field(default=20, ge=1)
    leg_dim_cap: int = Field(default=2, ge=1)
    support_depth: int | None = Field(default=None, ge=0)
    radius: float = Field(default=1.0, gt=0.0, le=1.0)
    include_unitary_corner: bool = True
    seed: int | None = None


class GaugeTask(_Task):
    """Gauge identity for explicit phase vectors and ``random_characters`` seeded ones."""

    kind: Literal["gauge"] = "gauge"
    polynomial: PolynomialSpec
    theta: list[list[list[float]]] = Field(default_factory=list)
    random_characters: int = Field(default=0, ge=0)


class HomomorphismTask(_Task):
    kind: Literal["homomorphism"] = "homomorphism"
    p: PolynomialSpec
    q: PolynomialSpec


Task = Annotated[
    KernelCheckTask
    | DilateTask
    | VerifyTask
    | SchurCheckTask
    | ValidateTask
    | InducedTask
    | CovariantDilateTask
    | NormEstimateTask
    | GaugeTask
    | HomomorphismTask,
    Field(discriminator="kind"),
]

_NEEDS_REP = {"kernel_check", "dilate", "verify", "validate", "covariant_dilate", "gauge", "homomorphism"}
_NEEDS_SYSTEM = {"induced", "covariant_dilate", "norm_estimate", "gauge", "homomorphism"}


def _element_specs(task: BaseModel) -> list[ElementSpec]:
    specs: list[ElementSpec] = []
    for key in ("points", "support"):
        specs.extend(getattr(task, key, None) or [])
    for case in getattr(task, "cases", []):
        specs.extend(spec for spec in (case.s, case.t, case.mu, case.nu, case.g) if spec is not None)
    for key in ("polynomial", "p", "q"):
        polynomial = getattr(task, key, None)
        if polynomial is not None:
            specs.extend(term.s for term in polynomial.terms)
    return specs


class Scenario(_Strict):
    """A scenario file: the semigroup, the data to test and the tasks to run."""

    version: Literal["1"] = "1"
    factors: list[FactorSpec] = Field(min_length=1)
    representation: RepresentationSpec | None = None
    system: SystemSpec | None = None
    tasks: list[Task] = Field(default_factory=list)
    tolerances: NumericConfig = Field(default_factory=NumericConfig)
    depth: int = Field(default=2, ge=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_resolvable(self) -> Scenario:
        shape = [factor.rank for factor in self.factors]
        for index, task in enumerate(self.tasks):
            label = task.name or f"{task.kind}[{index}]"
            if task.kind in _NEEDS_REP and self.representation is None:
                raise ValueError(f"task {label} needs a representation")
            if task.kind in _NEEDS_SYSTEM and self.system is None:
                raise ValueError(f"task {label} needs a system")
            for spec in _element_specs(task):
                if [len(row) for row in spec] != shape:
                    raise ValueError(f"task {label}: element {spec} does not match factor ranks {shape}")
            theta = getattr(task, "theta", [])
            for phases in theta:
                if [len(row) for row in phases] != shape:
                    raise ValueError(f"task {label}: phases {phases} do not match factor ranks {shape}")
        return self


# ---------------------------------------------------------------------------
# Outputs


class ErrorRecord(BaseModel):
    type: str
    check: str
    message: str


class TaskRecord(BaseModel):
    """Outcome of one task; the verdict follows from ``checks`` alone."""

    index: int
    name: str
    kind: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckResult] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)
    verdict: Literal["pass", "fail", "error"]
    error: ErrorRecord | None = None
    wall_time: float = 0.0


class EnvironmentRecord(BaseModel):
    version: str
    seed: int
    depth: int
    tolerances: NumericConfig


class ReportSummary(BaseModel):
    tasks: int
    passed: int
    failed: int
    errors: int


class Report(BaseModel):
    environment: EnvironmentRecord
    tasks: list[TaskRecord]
    summary: ReportSummary
    exit_code: int
    digest: str = ""
