"""Factor declarations for S = S_1 + ... + S_k and the semigroup they generate."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from nica_dilations.core.config import DEFAULT_CONFIG, NumericConfig
from nica_dilations.semigroup.intervals import Interval

if TYPE_CHECKING:
    from nica_dilations.semigroup.elements import GroupElement


class FactorKind(str, Enum):
    """How a factor's generators are declared."""

    CYCLIC = "cyclic"  # one exact rational generator
    REAL = "real"  # rationally independent reals, ordered by value


def parse_generator(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"generator {text!r} is not an exact rational or decimal") from exc


def is_decimal_literal(text: str) -> bool:
    lowered = text.lower()
    return "." in lowered or "e" in lowered


class FactorSpec(BaseModel):
    """One summand S_i, given by its positive generators."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: FactorKind
    generators: tuple[str, ...]
    label: str = ""
    declared_independent: bool = True

    @field_validator("generators", mode="before")
    @classmethod
    def _stringify(cls, value: Any) -> Any:
        if isinstance(value, list | tuple):
            return tuple(str(item) for item in value)
        return value

    @model_validator(mode="after")
    def validate_factor(self) -> FactorSpec:
        if not self.generators:
            raise ValueError("a factor needs at least one generator")
        for text in self.generators:
            if parse_generator(text) <= 0:
                raise ValueError(f"generator {text!r} must be strictly positive")
        if self.kind == FactorKind.CYCLIC and len(self.generators) != 1:
            raise ValueError("cyclic factors have exactly one generator")
        if self.kind == FactorKind.REAL and not self.declared_independent:
            raise ValueError("real factors must declare their generators rationally independent")
        return self

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def midpoints(self) -> tuple[Fraction, ...]:
        return tuple(parse_generator(text) for text in self.generators)

    def intervals(self, halfwidth: Fraction) -> tuple[Interval, ...]:
        """Enclosures of the generators; exact rationals get zero width."""
        out = []
        for text, mid in zip(self.generators, self.midpoints, strict=True):
            width = halfwidth if self.kind == FactorKind.REAL and is_decimal_literal(text) else 0
            out.append(Interval.around(mid, Fraction(width)))
        return tuple(out)


@dataclass(frozen=True)
class Semigroup:
    """The finitely generated semigroup S and the group G it generates."""

    factors: tuple[FactorSpec, ...]
    config: NumericConfig = DEFAULT_CONFIG

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("a semigroup needs at least one factor")

    @classmethod
    def of(cls, factors: list[FactorSpec] | tuple[FactorSpec, ...], config: NumericConfig | None = None) -> Semigroup:
        return cls(tuple(factors), config or DEFAULT_CONFIG)

    @classmethod
    def cyclic(cls, k: int = 1, config: NumericConfig | None = None) -> Semigroup:
        """Z_+^k with unit generators."""
        specs = [FactorSpec(kind=FactorKind.CYCLIC, generators=("1",), label=f"n{i}") for i in range(k)]
        return cls.of(specs, config)

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(factor.rank for factor in self.factors)

    def generator_intervals(self, factor: int) -> tuple[Interval, ...]:
        return self.factors[factor].intervals(self.config.halfwidth)

    def zero(self) -> GroupElement:
        from nica_dilations.semigroup.elements import GroupElement

        return GroupElement(tuple((0,) * m for m in self.shape), self)

    def generator(self, factor: int, index: int = 0) -> GroupElement:
        from nica_dilations.semigroup.elements import GroupElement

        coeffs = [[0] * m for m in self.shape]
        coeffs[factor][index] = 1
        return GroupElement(tuple(tuple(c) for c in coeffs), self)

    def generators(self) -> list[tuple[int, int, GroupElement]]:
        """Every declared generator as ``(factor, index, element)``."""
        return [
            (i, j, self.generator(i, j)) for i, m in enumerate(self.shape) for j in range(m)
        ]

    def label(self, factor: int, index: int) -> str:
        name = self.factors[factor].label or f"factor{factor}"
        return f"{name}.g{index}"
