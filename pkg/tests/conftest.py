"""Pytest configuration and fixtures."""

from pathlib import Path

import numpy as np
import pytest

from nica_dilations.representation import build_direct_rep, build_tensor_rep
from nica_dilations.semigroup import FactorKind, FactorSpec, Semigroup

REPO_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def scenarios_dir() -> Path:
    return REPO_ROOT / "scenarios"


@pytest.fixture
def z_plus() -> Semigroup:
    return Semigroup.cyclic(1)


@pytest.fixture
def z_plus_2() -> Semigroup:
    return Semigroup.cyclic(2)


@pytest.fixture
def real_semigroup() -> Semigroup:
    """Z_+ (1, sqrt 2) as one real factor, next to a cyclic one."""
    return Semigroup.of(
        [
            FactorSpec(kind=FactorKind.REAL, generators=("1", "1.4142135623730951"), label="r"),
            FactorSpec(kind=FactorKind.CYCLIC, generators=("1",), label="n"),
        ]
    )


@pytest.fixture
def scalar_rep(z_plus):
    return build_tensor_rep(z_plus, [[0.5]])


@pytest.fixture
def zero_rep(z_plus):
    return build_tensor_rep(z_plus, [[0.0]])


@pytest.fixture
def tensor_pair_rep(z_plus_2):
    """T_(m,n) = 0.5^m 0.3^n on C."""
    return build_tensor_rep(z_plus_2, [[0.5], [0.3]])


@pytest.fixture
def m2_unitary() -> np.ndarray:
    return np.diag([1.0, 1j]).astype(np.complex128)


@pytest.fixture
def m2_rep(z_plus, m2_unitary):
    return build_direct_rep(z_plus, [[m2_unitary.conj().T / 2]])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
