"""Seeded random unitaries, contractions and tensor Nica representations."""

from __future__ import annotations

import numpy as np

from nica_dilations.linalg import ComplexMatrix, standard_complex_normal
from nica_dilations.representation.nica import NicaRep, build_tensor_rep
from nica_dilations.semigroup import Semigroup


def haar_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    """Haar-distributed unitary from the QR factorization of a complex Gaussian."""
    q, r = np.linalg.qr(standard_complex_normal(rng, (n, n)))
    diagonal = np.diag(r)
    phases = np.where(np.abs(diagonal) > 0, diagonal / np.abs(diagonal), 1.0)
    return np.asarray(q * phases, dtype=np.complex128)


def random_contraction(
    rng: np.random.Generator, n: int, radius: float = 1.0
) -> ComplexMatrix:
    """Random directions with singular values uniform on ``[0, radius]``."""
    u, _, vh = np.linalg.svd(standard_complex_normal(rng, (n, n)))
    singular = rng.uniform(0.0, radius, size=n)
    return np.asarray(u @ np.diag(singular) @ vh, dtype=np.complex128)


def commuting_family(
    rng: np.random.Generator, n: int, count: int, radius: float = 1.0
) -> list[ComplexMatrix]:
    """``count`` commuting contractions X, X^2, ... from one random contraction X."""
    base = random_contraction(rng, n, radius)
    return [np.linalg.matrix_power(base, power + 1) for power in range(count)]


def random_tensor_rep(
    semigroup: Semigroup,
    rng: np.random.Generator,
    leg_dims: tuple[int, ...] | int = 2,
    radius: float = 0.9,
) -> NicaRep:
    """Tensor representation with one random commuting family per factor."""
    dims = (leg_dims,) * semigroup.k if isinstance(leg_dims, int) else leg_dims
    legs = [
        commuting_family(rng, n, rank, radius)
        for n, rank in zip(dims, semigroup.shape, strict=True)
    ]
    return build_tensor_rep(semigroup, legs)


def random_isometric_tensor_rep(
    semigroup: Semigroup, rng: np.random.Generator, leg_dims: tuple[int, ...] | int = 1
) -> NicaRep:
    """Tensor representation by unitaries (isometric on every support)."""
    dims = (leg_dims,) * semigroup.k if isinstance(leg_dims, int) else leg_dims
    legs = []
    for n, rank in zip(dims, semigroup.shape, strict=True):
        base = haar_unitary(rng, n)
        legs.append([np.linalg.matrix_power(base, power + 1) for power in range(rank)])
    return build_tensor_rep(semigroup, legs)
