"""Compressed shifts V_s: delta_t (x) h -> delta_{t+s} (x) h on quotient coordinates."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from nica_dilations.core.exceptions import SupportError
from nica_dilations.dilation.space import DilationSpace, raw_translation
from nica_dilations.linalg import ComplexMatrix
from nica_dilations.semigroup import GroupElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ShiftOperator:
    """V_s from the quotient on ``source.support`` into the quotient on ``target.support``."""

    shift: GroupElement
    source: DilationSpace
    target: DilationSpace
    raw: ComplexMatrix
    matrix: ComplexMatrix

    def gram_frame(self) -> ComplexMatrix:
        """Q_E* M Q: the shift in raw coordinates; equals ``raw`` when the Gram form is I."""
        return self.target.factor.conj().T @ self.matrix @ self.source.factor


def shift_target(dil: DilationSpace, shifts: Iterable[GroupElement]) -> DilationSpace:
    """Extension of ``dil`` containing every translate of its support by ``shifts``."""
    extra = [element for s in shifts for element in dil.support.translate(s)]
    return dil.extend(extra)


def compressed_shift(
    dil: DilationSpace, s: GroupElement, target: DilationSpace | None = None
) -> ShiftOperator:
    """Realize V_s against the support extended by ``s + support``.

    Raises:
        SupportError: s is not in the cone S, or ``target`` misses a translate
        CapExceededError: the extended Gram form exceeds ``gram_cap``
    """
    if not s.in_cone():
        raise SupportError(f"shift parameter {s} is not in S")
    target = target if target is not None else shift_target(dil, [s])
    raw = raw_translation(dil.support, target.support, s, dil.dim)
    matrix = target.factor @ raw @ dil.factor_pinv
    logger.debug(f"shift {s}: {dil.rank} -> {target.rank}")
    return ShiftOperator(shift=s, source=dil, target=target, raw=raw, matrix=matrix)
