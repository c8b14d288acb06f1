"""Exact rational intervals used for sign decisions on real factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Fraction | int) -> Interval:
        exact = Fraction(value)
        return cls(exact, exact)

    @classmethod
    def around(cls, midpoint: Fraction, halfwidth: Fraction) -> Interval:
        return cls(midpoint - halfwidth, midpoint + halfwidth)

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Interval) -> Interval:
        return self + (-other)

    def scale(self, factor: int) -> Interval:
        if factor >= 0:
            return Interval(self.lo * factor, self.hi * factor)
        return Interval(self.hi * factor, self.lo * factor)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def halfwidth(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def sign(self) -> int | None:
        """1, -1 or 0 when decided; ``None`` when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)


def interval_sum(terms: list[Interval]) -> Interval:
    total = Interval.point(0)
    for term in terms:
        total = total + term
    return total
