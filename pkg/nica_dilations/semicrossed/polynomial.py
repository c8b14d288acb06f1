"""Polynomials sum_s V_s A_s over the semicrossed product, their evaluation and gauge action."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from nica_dilations.core.exceptions import DilationError, ShapeMismatchError, SupportError
from nica_dilations.linalg import ComplexMatrix, as_complex_matrix, spectral_norm
from nica_dilations.representation import NicaRep, evaluate_at
from nica_dilations.semicrossed.covariant import CovariantPair
from nica_dilations.semicrossed.system import DynSystem
from nica_dilations.semigroup import GroupElement

logger = logging.getLogger(__name__)

Phases = tuple[tuple[float, ...], ...]


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Terms ``(s, A_s)`` with distinct s in S."""

    terms: tuple[tuple[GroupElement, ComplexMatrix], ...]

    def __post_init__(self) -> None:
        seen = set()
        for s, _ in self.terms:
            if s.coeffs in seen:
                raise ValueError(f"repeated term {s}; combine like terms with Polynomial.collect")
            if not s.in_cone():
                raise SupportError(f"term index {s} is not in S")
            seen.add(s.coeffs)

    @classmethod
    def collect(cls, terms: Iterable[tuple[GroupElement, object]]) -> Polynomial:
        """Sum coefficients of equal indices, keeping first-seen order."""
        combined: dict[tuple[tuple[int, ...], ...], tuple[GroupElement, ComplexMatrix]] = {}
        for s, coefficient in terms:
            matrix = as_complex_matrix(coefficient)
            if s.coeffs in combined:
                combined[s.coeffs] = (s, combined[s.coeffs][1] + matrix)
            else:
                combined[s.coeffs] = (s, matrix)
        return cls(tuple(combined.values()))

    @property
    def indices(self) -> list[GroupElement]:
        return [s for s, _ in self.terms]

    def check_coefficients(self, system: DynSystem) -> None:
        for s, coefficient in self.terms:
            if coefficient.shape != (system.dim, system.dim):
                raise ShapeMismatchError(f"coefficient of {s} has shape {coefficient.shape}")
            residual = system.algebra_residual(coefficient)
            if residual > system.tol:
                raise DilationError(
                    f"coefficient of {s} lies outside the algebra (residual {residual:.3e})",
                    check="algebra",
                )


def eval_polynomial(pair: CovariantPair, p: Polynomial) -> ComplexMatrix:
    """(sigma x T)(p) = sum_s T_s sigma(A_s)."""
    p.check_coefficients(pair.system)
    total = np.zeros((pair.dim, pair.dim), dtype=np.complex128)
    for s, coefficient in p.terms:
        total += evaluate_at(pair.rep, s) @ pair.sigma_of(coefficient)
    return total


def polynomial_product(system: DynSystem, p: Polynomial, q: Polynomial) -> Polynomial:
    """(V_s A)(V_t B) = V_{s+t} alpha_t(A) B, with like terms combined."""
    return Polynomial.collect(
        (s + t, system.alpha(t, a) @ b) for s, a in p.terms for t, b in q.terms
    )


def homomorphism_defect(pair: CovariantPair, p: Polynomial, q: Polynomial) -> float:
    """||(sigma x T)(pq) - (sigma x T)(p) (sigma x T)(q)||."""
    product = eval_polynomial(pair, polynomial_product(pair.system, p, q))
    return spectral_norm(product - eval_polynomial(pair, p) @ eval_polynomial(pair, q))


def _check_phases(shape: tuple[int, ...], theta: Sequence[Sequence[float]]) -> Phases:
    phases = tuple(tuple(float(x) for x in row) for row in theta)
    if tuple(len(row) for row in phases) != shape:
        raise ShapeMismatchError(f"character phases must have shape {shape}")
    return phases


def character(theta: Sequence[Sequence[float]], s: GroupElement) -> complex:
    """gamma(s) = exp(i <theta, coeffs(s)>)."""
    phases = _check_phases(s.semigroup.shape, theta)
    angle = sum(
        phase * c for row_t, row_c in zip(phases, s.coeffs, strict=True) for phase, c in zip(row_t, row_c, strict=True)
    )
    value = complex(np.exp(1j * angle))
    if abs(abs(value) - 1.0) > 1e-12:
        raise DilationError(f"character value {value} is not unimodular", check="gauge")
    return value


def gauge_transform(p: Polynomial, theta: Sequence[Sequence[float]]) -> Polynomial:
    """tau_gamma(p) = sum_s gamma(s) V_s A_s."""
    return Polynomial(tuple((s, character(theta, s) * a) for s, a in p.terms))


def gauge_rep(rep: NicaRep, theta: Sequence[Sequence[float]]) -> NicaRep:
    """(gamma T)_s = gamma(s) T_s, obtained by rotating each generator."""
    phases = _check_phases(rep.semigroup.shape, theta)
    rotated = [
        [np.exp(1j * phase) * matrix for phase, matrix in zip(row_t, row_g, strict=True)]
        for row_t, row_g in zip(phases, rep.generators, strict=True)
    ]
    return rep.with_generators(rotated)


def gauge_pair(pair: CovariantPair, theta: Sequence[Sequence[float]]) -> CovariantPair:
    return pair.with_rep(gauge_rep(pair.rep, theta))


def gauge_defect(pair: CovariantPair, p: Polynomial, theta: Sequence[Sequence[float]]) -> float:
    """| ||(sigma x T)(tau_gamma p)|| - ||(sigma x gamma T)(p)|| |."""
    transformed = spectral_norm(eval_polynomial(pair, gauge_transform(p, theta)))
    rotated = spectral_norm(eval_polynomial(gauge_pair(pair, theta), p))
    return abs(transformed - rotated)
