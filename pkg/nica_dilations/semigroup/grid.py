"""Finite truncations of S: depth-bounded grids and symmetric windows of G."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from nica_dilations.core.exceptions import CapExceededError
from nica_dilations.semigroup.elements import GroupElement
from nica_dilations.semigroup.factors import Semigroup

logger = logging.getLogger(__name__)


def sort_elements(elements: Iterable[GroupElement]) -> list[GroupElement]:
    """Deduplicate and order by (value vector, coefficients)."""
    unique = {element.coeffs: element for element in elements}
    return sorted(unique.values(), key=lambda element: element.sort_key)


@dataclass(frozen=True)
class GridSet:
    """Ordered, duplicate-free finite set of group elements."""

    elements: tuple[GroupElement, ...]
    depth: int = -1
    _index: dict[tuple[tuple[int, ...], ...], int] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        for position, element in enumerate(self.elements):
            if element.coeffs in self._index:
                raise ValueError(f"duplicate element {element} in grid")
            self._index[element.coeffs] = position

    @classmethod
    def of(cls, elements: Iterable[GroupElement], depth: int = -1) -> GridSet:
        return cls(tuple(sort_elements(elements)), depth)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return isinstance(element, GroupElement) and element.coeffs in self._index

    def index(self, element: GroupElement) -> int:
        return self._index[element.coeffs]

    def union(self, extra: Iterable[GroupElement]) -> GridSet:
        """Sorted union; the depth tag is dropped since the result is no longer a grid."""
        return GridSet.of([*self.elements, *extra])

    def translate(self, shift: GroupElement) -> list[GroupElement]:
        return [element + shift for element in self.elements]

    @property
    def semigroup(self) -> Semigroup:
        return self.elements[0].semigroup


def _coefficient_rows(rank: int, values: range) -> list[tuple[int, ...]]:
    return list(itertools.product(values, repeat=rank))


def _enumerate(semigroup: Semigroup, values: range, cap: int, what: str) -> list[GroupElement]:
    size = math.prod(len(values) ** m for m in semigroup.shape)
    if size > cap:
        raise CapExceededError(what, size, cap)
    per_factor = [_coefficient_rows(m, values) for m in semigroup.shape]
    return [GroupElement(tuple(rows), semigroup) for rows in itertools.product(*per_factor)]


def enumerate_grid(semigroup: Semigroup, depth: int, cap: int | None = None) -> GridSet:
    """All monoid elements with every coefficient in ``0..depth``.

    Raises:
        ValueError: depth is negative
        CapExceededError: the grid would be larger than ``cap`` (default ``grid_cap``)
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    limit = cap if cap is not None else semigroup.config.grid_cap
    elements = _enumerate(semigroup, range(depth + 1), limit, "grid")
    grid = GridSet.of(elements, depth)
    logger.debug(f"grid depth={depth} shape={semigroup.shape} size={len(grid)}")
    return grid


def enumerate_window(semigroup: Semigroup, radius: int, cap: int | None = None) -> GridSet:
    """Elements of G with every coefficient in ``-radius..radius``."""
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    limit = cap if cap is not None else semigroup.config.grid_cap
    elements = _enumerate(semigroup, range(-radius, radius + 1), limit, "window")
    return GridSet.of(elements, radius)
