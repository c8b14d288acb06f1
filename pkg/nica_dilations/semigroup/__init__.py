"""Lattice-ordered groups generated by finitely generated positive cones."""

from nica_dilations.semigroup.elements import (
    GroupElement,
    decompose_parts,
    disjoint,
    lattice_join,
    lattice_meet,
    less_equal,
    parse_element,
)
from nica_dilations.semigroup.factors import FactorKind, FactorSpec, Semigroup
from nica_dilations.semigroup.grid import (
    GridSet,
    enumerate_grid,
    enumerate_window,
    sort_elements,
)
from nica_dilations.semigroup.intervals import Interval

__all__ = [
    # Factors
    "FactorKind",
    "FactorSpec",
    "Semigroup",
    "Interval",
    # Elements
    "GroupElement",
    "parse_element",
    "lattice_meet",
    "lattice_join",
    "less_equal",
    "disjoint",
    "decompose_parts",
    # Grids
    "GridSet",
    "enumerate_grid",
    "enumerate_window",
    "sort_elements",
]
