"""Elements of G = G_1 + ... + G_k and the lattice operations on them.

Each element is stored as exact integer coefficients over the declared
generators of every factor. A factor component is ordered by its real value,
which for real factors is only known up to an interval; comparisons that the
interval cannot decide raise ``IndeterminateSignError`` instead of guessing.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

from nica_dilations.core.exceptions import (
    DilationError,
    IndeterminateSignError,
    ShapeMismatchError,
)
from nica_dilations.semigroup.factors import FactorKind, FactorSpec, Semigroup
from nica_dilations.semigroup.intervals import Interval, interval_sum

logger = logging.getLogger(__name__)

Coeffs = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GroupElement:
    """An element of G given by per-factor integer coefficient vectors."""

    coeffs: Coeffs
    semigroup: Semigroup = field(compare=False, repr=False)

    @cached_property
    def values(self) -> tuple[Interval, ...]:
        """Per-factor value enclosures: sum_j coeffs[i][j] * generator[i][j]."""
        return tuple(
            interval_sum(
                [gen.scale(c) for gen, c in zip(self.semigroup.generator_intervals(i), row, strict=True)]
            )
            for i, row in enumerate(self.coeffs)
        )

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(self.factor_sign(i) for i in range(len(self.coeffs)))

    def factor_sign(self, factor: int) -> int:
        row = self.coeffs[factor]
        if not any(row):
            return 0
        if self.semigroup.factors[factor].kind == FactorKind.CYCLIC:
            return 1 if row[0] > 0 else -1
        decided = self.values[factor].sign()
        if decided is None or decided == 0:
            # independent generators: a nonzero combination is never exactly zero
            raise IndeterminateSignError(factor, row, self.values[factor].as_floats())
        return decided

    @property
    def is_zero(self) -> bool:
        return not any(any(row) for row in self.coeffs)

    def in_cone(self) -> bool:
        """Membership in S, decided by the sign of every factor value."""
        return all(sign >= 0 for sign in self.signs)

    def in_monoid(self) -> bool:
        """Membership in the monoid generated by the declared generators."""
        return all(c >= 0 for row in self.coeffs for c in row)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, row in enumerate(self.coeffs) if any(row))

    def single_factor(self) -> int | None:
        """Index of the only factor this element lives in, if any."""
        supp = self.support()
        return supp[0] if len(supp) == 1 else None

    def restrict(self, factor: int) -> GroupElement:
        rows = tuple(
            row if i == factor else (0,) * len(row) for i, row in enumerate(self.coeffs)
        )
        return GroupElement(rows, self.semigroup)

    def value_floats(self) -> tuple[float, ...]:
        return tuple(float(v.midpoint) for v in self.values)

    @property
    def sort_key(self) -> tuple[tuple[float, ...], Coeffs]:
        return self.value_floats(), self.coeffs

    def _check_compatible(self, other: GroupElement) -> None:
        if self.semigroup.shape != other.semigroup.shape:
            raise ShapeMismatchError(
                f"elements over shapes {self.semigroup.shape} and {other.semigroup.shape}"
            )

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check_compatible(other)
        rows = tuple(
            tuple(a + b for a, b in zip(r, s, strict=True))
            for r, s in zip(self.coeffs, other.coeffs, strict=True)
        )
        return GroupElement(rows, self.semigroup)

    def __neg__(self) -> GroupElement:
        return GroupElement(tuple(tuple(-c for c in row) for row in self.coeffs), self.semigroup)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def scaled(self, n: int) -> GroupElement:
        return GroupElement(tuple(tuple(n * c for c in row) for row in self.coeffs), self.semigroup)

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.coeffs]

    def __str__(self) -> str:
        return "(" + "; ".join(",".join(str(c) for c in row) for row in self.coeffs) + ")"


def parse_element(
    factors: Semigroup | Sequence[FactorSpec], coeffs: Sequence[Sequence[int]]
) -> GroupElement:
    """Build an element and evaluate its per-factor signs.

    Raises:
        ShapeMismatchError: coefficient vectors do not match the factor ranks
        IndeterminateSignError: a real-factor value straddles zero
    """
    semigroup = factors if isinstance(factors, Semigroup) else Semigroup.of(tuple(factors))
    if len(coeffs) != semigroup.k:
        raise ShapeMismatchError(f"expected {semigroup.k} coefficient vectors, got {len(coeffs)}")
    rows: list[tuple[int, ...]] = []
    for i, (row, m) in enumerate(zip(coeffs, semigroup.shape, strict=True)):
        if len(row) != m:
            raise ShapeMismatchError(f"factor {i} expects {m} coefficients, got {len(row)}")
        if any(isinstance(c, bool) or int(c) != c for c in row):
            raise ShapeMismatchError(f"factor {i} coefficients must be integers: {list(row)}")
        rows.append(tuple(int(c) for c in row))
    element = GroupElement(tuple(rows), semigroup)
    _ = element.signs
    return element


def _compare_factor(g: GroupElement, h: GroupElement, factor: int) -> int:
    """Sign of g[factor] - h[factor]."""
    if g.coeffs[factor] == h.coeffs[factor]:
        return 0
    return (g - h).factor_sign(factor)


def lattice_meet(g: GroupElement, h: GroupElement) -> GroupElement:
    """Per factor, the component with the smaller value."""
    g._check_compatible(h)
    rows = tuple(
        g.coeffs[i] if _compare_factor(g, h, i) <= 0 else h.coeffs[i] for i in range(len(g.coeffs))
    )
    return GroupElement(rows, g.semigroup)


def lattice_join(g: GroupElement, h: GroupElement) -> GroupElement:
    """Per factor, the component with the larger value."""
    g._check_compatible(h)
    rows = tuple(
        g.coeffs[i] if _compare_factor(g, h, i) >= 0 else h.coeffs[i] for i in range(len(g.coeffs))
    )
    return GroupElement(rows, g.semigroup)


def less_equal(g: GroupElement, h: GroupElement) -> bool:
    return (h - g).in_cone()


def decompose_parts(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Split g into disjoint cone elements with g = g_plus - g_minus."""
    zero = g.semigroup.zero()
    g_plus = lattice_join(g, zero)
    g_minus = lattice_join(-g, zero)
    if g_plus - g_minus != g:
        raise DilationError(f"reconstruction failed for {g}", check="lattice")
    if not lattice_meet(g_plus, g_minus).is_zero:
        raise DilationError(f"parts of {g} are not disjoint", check="lattice")
    return g_plus, g_minus


def disjoint(g: GroupElement, h: GroupElement) -> bool:
    """True when g and h are cone elements with g ∧ h = 0."""
    return lattice_meet(g, h).is_zero
