"""Seeded lower-bound estimates of the contractive and isometric semicrossed norms."""

from __future__ import annotations

import itertools
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from nica_dilations.core.exceptions import SamplerExhaustedError
from nica_dilations.dilation import compressed_shift, shift_target
from nica_dilations.linalg import ComplexMatrix, kron_all, spectral_norm
from nica_dilations.representation import build_direct_rep, haar_unitary
from nica_dilations.semicrossed.covariant import (
    CovariantPair,
    amplified_sigma,
    dilate_covariant_pair,
    identity_sigma,
    quotient_pi,
)
from nica_dilations.semicrossed.induced import induced_representation
from nica_dilations.semicrossed.polynomial import Polynomial, eval_polynomial
from nica_dilations.semicrossed.system import DynSystem
from nica_dilations.semigroup import enumerate_grid

logger = logging.getLogger(__name__)


class SamplerConfig(BaseModel):
    """Seed, sample count and size caps for ``estimate_norms``."""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    samples: int = Field(default=20, ge=1)
    leg_dim_cap: int = Field(default=2, ge=1)
    support_depth: int = Field(default=2, ge=0)
    radius: float = Field(default=1.0, gt=0.0, le=1.0)
    include_unitary_corner: bool = True


class SampleRecord(BaseModel):
    index: int
    leg_dims: list[int]
    contractive: float
    isometric: float
    gap: float
    dilation_rank: int


class NormEstimate(BaseModel):
    """Running sups over the sampled pairs; both are lower bounds on the universal norms."""

    seed: int
    samples: int
    contractive_sup: float
    isometric_sup: float
    min_dilation_gap: float
    induced_value: float
    inequality_holds: bool
    tol: float
    per_sample: list[SampleRecord]
    note: str = "sampled sups are lower bounds on the universal norms"


def _require_commuting_action(system: DynSystem) -> None:
    unitaries = [u for row in system.action for u in row]
    for x, y in itertools.combinations(unitaries, 2):
        defect = spectral_norm(x @ y - y @ x)
        if defect > system.tol:
            raise SamplerExhaustedError(
                f"action unitaries do not commute (defect {defect:.3e}); "
                "the tensor sampler cannot produce covariant pairs"
            )


def _embed_leg(matrix: ComplexMatrix, position: int, leg_dims: list[int]) -> ComplexMatrix:
    factors = [
        matrix if i == position else np.eye(n, dtype=np.complex128)
        for i, n in enumerate(leg_dims)
    ]
    return kron_all(factors)


def sample_pair(
    system: DynSystem, rng: np.random.Generator, config: SamplerConfig, unitary_corner: bool = False
) -> tuple[CovariantPair, list[int]]:
    """sigma = A (x) I_M and T_gen = u_gen* (x) C_gen, C_gen = r U^(j+1) on one leg per factor.

    The pair is covariant because (A (x) I)(u* (x) C) = (u* (x) C)(u A u* (x) I), and
    Nica-covariant because different factors act on different legs. The unitary
    corner is the canonical pair r = 1, U = I.
    """
    semigroup = system.semigroup
    leg_dims = [int(rng.integers(1, config.leg_dim_cap + 1)) for _ in range(semigroup.k)]
    generators = []
    for i, rank in enumerate(semigroup.shape):
        base = np.eye(leg_dims[i], dtype=np.complex128) if unitary_corner else haar_unitary(rng, leg_dims[i])
        row = []
        for j in range(rank):
            r = 1.0 if unitary_corner else float(rng.uniform(0.0, config.radius))
            leg = r * np.linalg.matrix_power(base, j + 1)
            row.append(np.kron(system.action[i][j].conj().T, _embed_leg(leg, i, leg_dims)))
        generators.append(row)
    multiplicity = int(np.prod(leg_dims))
    rep = build_direct_rep(semigroup, generators)
    return CovariantPair(system, amplified_sigma(system, multiplicity), rep), leg_dims


def isometric_value(pair: CovariantPair, p: Polynomial, depth: int) -> tuple[float, int]:
    """||sum_s V_s pi(A_s)|| on the dilation over the depth grid, and the quotient rank."""
    grid = enumerate_grid(pair.rep.semigroup, depth)
    dilated = dilate_covariant_pair(pair, grid)
    dil = dilated.dil
    target = shift_target(dil, p.indices)
    total = np.zeros((target.rank, dil.rank), dtype=np.complex128)
    for s, coefficient in p.terms:
        shift = compressed_shift(dil, s, target=target)
        total += shift.matrix @ quotient_pi(pair, dil, coefficient)
    return spectral_norm(total), dil.rank


def estimate_norms(p: Polynomial, system: DynSystem, config: SamplerConfig) -> NormEstimate:
    """Sample covariant pairs, evaluate p on each and on its dilation.

    Every sample uses its own child generator spawned from ``config.seed``, so
    the estimate does not depend on evaluation order.

    Raises:
        SamplerExhaustedError: the action unitaries do not commute
    """
    _require_commuting_action(system)
    p.check_coefficients(system)
    children = np.random.SeedSequence(config.seed).spawn(config.samples)
    semigroup_config = system.semigroup.config

    records: list[SampleRecord] = []
    holds = True
    tol = semigroup_config.tol_psd
    for index, child in enumerate(children):
        rng = np.random.default_rng(child)
        corner = config.include_unitary_corner and index == 0
        pair, leg_dims = sample_pair(system, rng, config, unitary_corner=corner)
        contractive = spectral_norm(eval_polynomial(pair, p))
        isometric, rank = isometric_value(pair, p, config.support_depth)
        sample_tol = semigroup_config.scaled_tol_psd(pair.dim * rank)
        tol = max(tol, sample_tol)
        gap = isometric - contractive
        if gap < -sample_tol:
            holds = False
            logger.warning(
                f"sample {index}: ||(sigma x T)(p)|| = {contractive:.6f} exceeds "
                f"||(pi x V)(p)|| = {isometric:.6f}"
            )
        records.append(
            SampleRecord(
                index=index,
                leg_dims=leg_dims,
                contractive=contractive,
                isometric=isometric,
                gap=gap,
                dilation_rank=rank,
            )
        )

    grid = enumerate_grid(system.semigroup, config.support_depth)
    induced = induced_representation(system, identity_sigma(system), grid)
    induced_value = spectral_norm(eval_polynomial(induced, p))

    estimate = NormEstimate(
        seed=config.seed,
        samples=config.samples,
        contractive_sup=max(r.contractive for r in records),
        isometric_sup=max(r.isometric for r in records),
        min_dilation_gap=min(r.gap for r in records),
        induced_value=induced_value,
        inequality_holds=holds,
        tol=tol,
        per_sample=records,
    )
    logger.info(
        f"norm estimate over {config.samples} samples: contractive {estimate.contractive_sup:.6f}, "
        f"isometric {estimate.isometric_sup:.6f}, induced {induced_value:.6f}"
    )
    return estimate
