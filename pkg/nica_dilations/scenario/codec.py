"""JSON encodings: complex numbers as [re, im], matrices as nested rows, elements as coefficient rows."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np

from nica_dilations.core.exceptions import ShapeMismatchError
from nica_dilations.linalg import ComplexMatrix
from nica_dilations.semigroup import GroupElement, Semigroup, parse_element


def decode_complex(value: Any) -> complex:
    if isinstance(value, bool):
        raise ShapeMismatchError(f"expected a number or [re, im], got {value!r}")
    if isinstance(value, int | float):
        return complex(value)
    if isinstance(value, Sequence) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ShapeMismatchError(f"expected a number or [re, im], got {value!r}")


def encode_complex(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def decode_matrix(spec: Any) -> ComplexMatrix:
    """A bare number or [re, im] is a 1x1 matrix; otherwise a list of equal-length rows."""
    if isinstance(spec, int | float) or (
        isinstance(spec, Sequence) and len(spec) == 2 and all(isinstance(x, int | float) for x in spec)
    ):
        return np.array([[decode_complex(spec)]], dtype=np.complex128)
    rows = [[decode_complex(entry) for entry in row] for row in spec]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise ShapeMismatchError(f"matrix must be square and non-empty, got {len(rows)} rows")
    return np.array(rows, dtype=np.complex128)


def encode_matrix(matrix: ComplexMatrix) -> list[list[list[float]]]:
    return [[encode_complex(complex(z)) for z in row] for row in np.asarray(matrix)]


def decode_element(semigroup: Semigroup, spec: Sequence[Sequence[int]]) -> GroupElement:
    return parse_element(semigroup, spec)


def decode_elements(semigroup: Semigroup, specs: Sequence[Sequence[Sequence[int]]]) -> list[GroupElement]:
    return [parse_element(semigroup, spec) for spec in specs]
