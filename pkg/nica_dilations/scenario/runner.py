"""Execute scenario tasks in declaration order and collect per-task records."""

from __future__ import annotations

import asyncio
import itertools
import logging
import threading
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from nica_dilations.core.config import NumericConfig
from nica_dilations.core.exceptions import DilationError
from nica_dilations.core.models import CheckResult, EigenResult
from nica_dilations.dilation import (
    build_dilation,
    compare_minimal_dilations,
    embedding_check,
    verify_coinvariance,
    verify_isometry,
    verify_nica_dilation,
    verify_regularity,
    verify_restricted_nica,
)
from nica_dilations.representation import (
    NicaRep,
    build_direct_rep,
    build_tensor_rep,
    kernel_positivity,
    random_isometric_tensor_rep,
    random_tensor_rep,
    validate_nica,
)
from nica_dilations.scenario import schemas
from nica_dilations.scenario.codec import decode_element, decode_elements, decode_matrix
from nica_dilations.schur import (
    BlockMatrix,
    check_positive,
    lift_compress_check,
    schur_product,
    tensor_commuting_pair,
)
from nica_dilations.semicrossed import (
    CovariantPair,
    DynSystem,
    Polynomial,
    SamplerConfig,
    build_pair,
    build_system,
    dilate_covariant_pair,
    estimate_norms,
    gauge_defect,
    homomorphism_defect,
    identity_sigma,
    induced_representation,
    validate_covariance,
    validate_system,
)
from nica_dilations.semigroup import (
    GridSet,
    GroupElement,
    Semigroup,
    enumerate_grid,
    enumerate_window,
)

logger = logging.getLogger(__name__)


@dataclass
class TaskOutcome:
    checks: list[CheckResult] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)


def eigen_check(name: str, result: EigenResult) -> CheckResult:
    """An eigenvalue floor as a defect: max(-lambda_min, 0) against the floor."""
    return CheckResult(
        check=name,
        defect=max(-result.min_eigenvalue, 0.0),
        tol=result.floor,
        parameters={"min_eigenvalue": result.min_eigenvalue},
    )


@dataclass
class RunContext:
    """Scenario data resolved lazily and shared by every task."""

    scenario: schemas.Scenario
    config: NumericConfig
    depth: int
    seed: int
    semigroup: Semigroup = field(init=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, init=False, repr=False)
    _cache: dict[str, Any] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self.semigroup = Semigroup.of(self.scenario.factors, self.config)

    def _memo(self, key: str, build: Callable[[], Any]) -> Any:
        with self._lock:
            if key not in self._cache:
                try:
                    self._cache[key] = build()
                except DilationError as exc:
                    self._cache[key] = exc
            value = self._cache[key]
        if isinstance(value, DilationError):
            raise value
        return value

    def rep(self) -> NicaRep:
        return self._memo("rep", self._build_rep)

    def system(self) -> DynSystem:
        return self._memo("system", self._build_system)

    def pair(self) -> CovariantPair:
        def build() -> CovariantPair:
            spec = self.scenario.system
            sigma = None if spec is None or spec.sigma is None else [decode_matrix(m) for m in spec.sigma]
            return build_pair(self.system(), sigma, self.rep())

        return self._memo("pair", build)

    def _build_rep(self) -> NicaRep:
        spec = self.scenario.representation
        if spec is None:
            raise DilationError("scenario declares no representation", check="scenario")
        if isinstance(spec, schemas.TensorRepSpec):
            return build_tensor_rep(self.semigroup, [[decode_matrix(m) for m in row] for row in spec.legs])
        if isinstance(spec, schemas.DirectRepSpec):
            return build_direct_rep(
                self.semigroup, [[decode_matrix(m) for m in row] for row in spec.generators]
            )
        rng = np.random.default_rng(self.seed)
        leg_dims = spec.leg_dims if isinstance(spec.leg_dims, int) else tuple(spec.leg_dims)
        if spec.isometric:
            return random_isometric_tensor_rep(self.semigroup, rng, leg_dims)
        return random_tensor_rep(self.semigroup, rng, leg_dims, spec.radius)

    def _build_system(self) -> DynSystem:
        spec = self.scenario.system
        if spec is None:
            raise DilationError("scenario declares no system", check="scenario")
        action = [[decode_matrix(u) for u in row] for row in spec.action]
        basis = [decode_matrix(b) for b in spec.basis] if spec.basis else None
        return build_system(self.semigroup, action, basis)

    def element(self, spec: schemas.ElementSpec) -> GroupElement:
        return decode_element(self.semigroup, spec)

    def grid(self, depth: int | None) -> GridSet:
        return enumerate_grid(self.semigroup, self.depth if depth is None else depth)

    def support(self, specs: list[schemas.ElementSpec] | None, depth: int | None) -> GridSet:
        if specs:
            return GridSet.of(decode_elements(self.semigroup, specs))
        return self.grid(depth)

    def polynomial(self, spec: schemas.PolynomialSpec) -> Polynomial:
        return Polynomial.collect((self.element(term.s), decode_matrix(term.coefficient)) for term in spec.terms)


def _generators(ctx: RunContext) -> list[GroupElement]:
    return [element for _, _, element in ctx.semigroup.generators()]


def _cross_pairs(ctx: RunContext) -> list[tuple[GroupElement, GroupElement]]:
    pairs = []
    for (i, _, s), (j, _, t) in itertools.permutations(ctx.semigroup.generators(), 2):
        if i != j:
            pairs.append((s, t))
    return pairs


# ---------------------------------------------------------------------------
# Task handlers


def run_kernel_check(ctx: RunContext, task: schemas.KernelCheckTask) -> TaskOutcome:
    rep = ctx.rep()
    points = decode_elements(ctx.semigroup, task.points) if task.points else list(ctx.grid(task.depth))
    result = kernel_positivity(rep, points, factorize=task.factorize)
    outcome = TaskOutcome(
        checks=[
            eigen_check(
                "kernel_psd",
                EigenResult(min_eigenvalue=result.min_eigenvalue, floor=result.floor),
            ),
            CheckResult(
                check="regular_extension",
                defect=result.ordering_defect,
                tol=rep.tol,
                witness=result.ordering_witness,
            ),
        ],
        data={"points": result.points, "min_eigenvalue": result.min_eigenvalue},
    )
    factorization = result.factorization
    if factorization is not None:
        defect = max([factorization.product_defect, *factorization.lift_defects])
        outcome.checks.append(
            CheckResult(check="kernel_factorization", defect=defect, tol=factorization.tol)
        )
        outcome.data["factor_min_eigenvalues"] = factorization.factor_min_eigenvalues
        outcome.data["lift_error"] = factorization.lift_error
    return outcome


def run_dilate(ctx: RunContext, task: schemas.DilateTask) -> TaskOutcome:
    dil = build_dilation(ctx.rep(), ctx.support(task.support, task.depth))
    checks = [
        eigen_check(
            "gram_psd",
            EigenResult(min_eigenvalue=dil.min_eigenvalue, floor=ctx.config.scaled_tol_psd(dil.raw_dim)),
        ),
        embedding_check(dil),
        *(verify_isometry(dil, s) for s in _generators(ctx)),
    ]
    return TaskOutcome(
        checks=checks,
        data={
            "support_size": len(dil.support),
            "raw_dim": dil.raw_dim,
            "rank": dil.rank,
            "discarded": dil.discarded,
            "min_eigenvalue": dil.min_eigenvalue,
        },
    )


def _default_cases(ctx: RunContext, identity: str) -> list[schemas.VerifyCase]:
    zero = ctx.semigroup.zero().to_json()
    if identity in ("isometry", "coinvariance"):
        return [schemas.VerifyCase(s=s.to_json()) for s in _generators(ctx)]
    if identity == "regularity":
        grid = list(enumerate_grid(ctx.semigroup, 1))
        return [schemas.VerifyCase(g=(a - b).to_json()) for a in grid for b in grid]
    if identity == "nica":
        return [
            schemas.VerifyCase(s=s.to_json(), t=t.to_json(), mu=mu, nu=nu)
            for s, t in _cross_pairs(ctx)
            for mu in (zero, s.to_json())
            for nu in (zero, t.to_json())
        ]
    if identity == "restricted":
        return [schemas.VerifyCase(s=s.to_json(), mu=t.to_json(), nu=zero) for s, t in _cross_pairs(ctx)]
    return []


def run_verify(ctx: RunContext, task: schemas.VerifyTask) -> TaskOutcome:
    rep = ctx.rep()
    dil = build_dilation(rep, ctx.grid(task.depth))
    if task.identity == "uniqueness":
        second_depth = task.second_depth if task.second_depth is not None else dil.support.depth + 1
        second = build_dilation(rep, ctx.grid(second_depth))
        check = compare_minimal_dilations(dil, second)
        return TaskOutcome(checks=[check], data={"ranks": [dil.rank, second.rank]})

    zero = ctx.semigroup.zero()

    def get(spec: schemas.ElementSpec | None) -> GroupElement:
        return zero if spec is None else ctx.element(spec)

    checks: list[CheckResult] = []
    for case in task.cases or _default_cases(ctx, task.identity):
        if task.identity == "isometry":
            checks.append(verify_isometry(dil, get(case.s)))
        elif task.identity == "regularity":
            checks.append(verify_regularity(dil, get(case.g)))
        elif task.identity == "coinvariance":
            checks.append(verify_coinvariance(dil, get(case.s)))
        elif task.identity == "restricted":
            checks.append(verify_restricted_nica(dil, get(case.s), get(case.mu), get(case.nu)))
        else:
            result = verify_nica_dilation(dil, get(case.s), get(case.t), get(case.mu), get(case.nu))
            checks.extend([result.identity, result.restricted])
    return TaskOutcome(checks=checks, data={"rank": dil.rank, "cases": len(checks)})


def _schur_checks(a: BlockMatrix, b: BlockMatrix, config: NumericConfig, label: str) -> list[CheckResult]:
    lift = lift_compress_check(a, b, config).to_check()
    checks = [lift.model_copy(update={"witness": f"{label}: {lift.witness}"})]
    if a.is_hermitian(config.scaled_tol(a.m * a.block_dim)) and b.is_hermitian(
        config.scaled_tol(b.m * b.block_dim)
    ):
        if check_positive(a, config).positive and check_positive(b, config).positive:
            product = check_positive(schur_product(a, b), config)
            checks.append(eigen_check("schur_psd", product))
    return checks


def run_schur_check(ctx: RunContext, task: schemas.SchurCheckTask) -> TaskOutcome:
    config = ctx.config
    checks: list[CheckResult] = []
    if task.a is not None and task.b is not None:
        a = BlockMatrix.from_blocks([[decode_matrix(m) for m in row] for row in task.a])
        b = BlockMatrix.from_blocks([[decode_matrix(m) for m in row] for row in task.b])
        checks.extend(_schur_checks(a, b, config, "explicit"))
        return TaskOutcome(checks=checks, data={"m": a.m, "block_dim": a.block_dim})

    for index, child in enumerate(np.random.SeedSequence(ctx.seed).spawn(task.samples)):
        rng = np.random.default_rng(child)
        a, b = tensor_commuting_pair(rng, task.m, task.left_dim, task.right_dim)
        checks.extend(_schur_checks(a, b, config, f"sample {index}"))
    return TaskOutcome(
        checks=checks,
        data={"m": task.m, "block_dim": task.left_dim * task.right_dim, "samples": task.samples},
    )


def run_validate(ctx: RunContext, task: schemas.ValidateTask) -> TaskOutcome:
    rep = ctx.rep()
    report = validate_nica(rep)
    outcome = TaskOutcome(checks=list(report.checks), data={"dim": report.dim})
    if ctx.scenario.system is not None:
        outcome.checks.extend(validate_system(ctx.system()).checks)
        outcome.checks.extend(validate_covariance(ctx.pair()).checks)
    return outcome


def run_induced(ctx: RunContext, task: schemas.InducedTask) -> TaskOutcome:
    system = ctx.system()
    depth = ctx.depth if task.depth is None else task.depth
    support = (
        enumerate_window(ctx.semigroup, depth) if task.bilateral else enumerate_grid(ctx.semigroup, depth)
    )
    sigma0 = [decode_matrix(m) for m in task.sigma0] if task.sigma0 else identity_sigma(system)
    pair = induced_representation(system, sigma0, support, bilateral=task.bilateral)
    covariance = validate_covariance(pair)
    truncation = pair.truncation
    assert truncation is not None
    tol = pair.rep.tol
    checks = [
        *covariance.checks,
        *validate_nica(pair.rep).checks,
        CheckResult(check="interior_isometry", defect=truncation.interior_isometry_defect, tol=tol),
    ]
    if truncation.interior_unitary_defect is not None:
        checks.append(
            CheckResult(check="interior_unitary", defect=truncation.interior_unitary_defect, tol=tol)
        )
    return TaskOutcome(checks=checks, data={"truncation": truncation.model_dump(mode="json"), "dim": pair.dim})


def run_covariant_dilate(ctx: RunContext, task: schemas.CovariantDilateTask) -> TaskOutcome:
    pair = ctx.pair()
    covariance = validate_covariance(pair)
    dilated = dilate_covariant_pair(pair, ctx.support(task.support, task.depth))
    return TaskOutcome(
        checks=[*covariance.checks, *dilated.checks],
        data={"rank": dilated.dil.rank, "support_size": len(dilated.dil.support)},
    )


def run_norm_estimate(ctx: RunContext, task: schemas.NormEstimateTask) -> TaskOutcome:
    system = ctx.system()
    config = SamplerConfig(
        seed=ctx.seed if task.seed is None else task.seed,
        samples=task.samples,
        leg_dim_cap=task.leg_dim_cap,
        support_depth=ctx.depth if task.support_depth is None else task.support_depth,
        radius=task.radius,
        include_unitary_corner=task.include_unitary_corner,
    )
    estimate = estimate_norms(ctx.polynomial(task.polynomial), system, config)
    check = CheckResult(
        check="compression_inequality",
        defect=max(-estimate.min_dilation_gap, 0.0),
        tol=estimate.tol,
        parameters={"samples": estimate.samples, "seed": estimate.seed},
    )
    return TaskOutcome(checks=[check], data={"estimate": estimate.model_dump(mode="json")})


def run_gauge(ctx: RunContext, task: schemas.GaugeTask) -> TaskOutcome:
    pair = ctx.pair()
    p = ctx.polynomial(task.polynomial)
    characters = list(task.theta)
    rng = np.random.default_rng(ctx.seed)
    for _ in range(task.random_characters):
        characters.append([rng.uniform(0.0, 2.0 * np.pi, size=m).tolist() for m in ctx.semigroup.shape])
    tol = pair.rep.tol
    values = [
        (gauge_defect(pair, p, theta), f"theta={[[round(x, 6) for x in row] for row in theta]}")
        for theta in characters
    ]
    worst_defect, witness = max(values, key=lambda item: item[0]) if values else (0.0, None)
    check = CheckResult(
        check="gauge", defect=worst_defect, tol=tol, witness=witness, parameters={"characters": len(values)}
    )
    return TaskOutcome(checks=[check])


def run_homomorphism(ctx: RunContext, task: schemas.HomomorphismTask) -> TaskOutcome:
    pair = ctx.pair()
    defect = homomorphism_defect(pair, ctx.polynomial(task.p), ctx.polynomial(task.q))
    return TaskOutcome(checks=[CheckResult(check="homomorphism", defect=defect, tol=pair.rep.tol)])


HANDLERS: dict[str, Callable[[RunContext, Any], TaskOutcome]] = {
    "kernel_check": run_kernel_check,
    "dilate": run_dilate,
    "verify": run_verify,
    "schur_check": run_schur_check,
    "validate": run_validate,
    "induced": run_induced,
    "covariant_dilate": run_covariant_dilate,
    "norm_estimate": run_norm_estimate,
    "gauge": run_gauge,
    "homomorphism": run_homomorphism,
}


# ---------------------------------------------------------------------------
# Driver


def run_task(ctx: RunContext, index: int, task: Any) -> schemas.TaskRecord:
    name = task.name or f"{task.kind}[{index}]"
    parameters = task.model_dump(mode="json", exclude={"name", "kind"}, exclude_none=True)
    started = time.perf_counter()
    logger.info(f"task {name} started")
    try:
        outcome = HANDLERS[task.kind](ctx, task)
    except Exception as exc:
        if isinstance(exc, DilationError):
            check = exc.check
            logger.error(f"task {name} failed: {exc}")
        elif isinstance(exc, (ValueError, np.linalg.LinAlgError)):
            check = "computation"
            logger.error(f"task {name} failed: {exc}")
        else:
            check = "internal"
            logger.exception(f"task {name} raised unexpectedly: {exc}")
        return schemas.TaskRecord(
            index=index,
            name=name,
            kind=task.kind,
            parameters=parameters,
            verdict="error",
            error=schemas.ErrorRecord(type=type(exc).__name__, check=check, message=str(exc)),
            wall_time=time.perf_counter() - started,
        )
    verdict = "pass" if all(check.passed for check in outcome.checks) else "fail"
    elapsed = time.perf_counter() - started
    logger.info(f"task {name}: {verdict} ({len(outcome.checks)} checks, {elapsed:.3f}s)")
    return schemas.TaskRecord(
        index=index,
        name=name,
        kind=task.kind,
        parameters=parameters,
        checks=outcome.checks,
        data=outcome.data,
        verdict=verdict,
        wall_time=elapsed,
    )


async def _run_parallel(ctx: RunContext, tasks: list[Any]) -> list[schemas.TaskRecord]:
    return list(
        await asyncio.gather(
            *[asyncio.to_thread(run_task, ctx, index, task) for index, task in enumerate(tasks)]
        )
    )


def run_tasks(ctx: RunContext, parallel: bool = False) -> list[schemas.TaskRecord]:
    """Records in declaration order; ``parallel`` runs the tasks on worker threads."""
    tasks = list(ctx.scenario.tasks)
    if parallel and len(tasks) > 1:
        return asyncio.run(_run_parallel(ctx, tasks))
    return [run_task(ctx, index, task) for index, task in enumerate(tasks)]


def exit_code(records: list[schemas.TaskRecord]) -> int:
    """3 if any task errored, else 1 if any verdict failed, else 0."""
    if any(record.verdict == "error" for record in records):
        return 3
    if any(record.verdict == "fail" for record in records):
        return 1
    return 0
