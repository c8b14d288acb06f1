"""Tests for operator-valued Schur products and the lift-and-compress identity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nica_dilations.core.config import NumericConfig
from nica_dilations.core.exceptions import (
    CapExceededError,
    NonCommutingEntriesError,
    NotHermitianError,
    ShapeMismatchError,
)
from nica_dilations.schur import (
    BlockMatrix,
    check_positive,
    entry_commutators,
    lift_compress_check,
    lift_operators,
    random_psd_blocks,
    schur_product,
    tensor_commuting_pair,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_scalar_schur_with_identity():
    ones = BlockMatrix.from_scalars([[1.0, 1.0], [1.0, 1.0]])
    eye = BlockMatrix.from_scalars(np.eye(2))
    np.testing.assert_allclose(schur_product(ones, eye).assembled(), np.eye(2))


def test_identity_blocks_are_neutral(rng):
    a = BlockMatrix(random_psd_blocks(rng, 3, 2))
    ones = BlockMatrix(np.broadcast_to(np.eye(2), (3, 3, 2, 2)).astype(np.complex128))
    np.testing.assert_allclose(schur_product(a, ones).assembled(), a.assembled(), atol=1e-14)


def test_assembled_round_trips_block_layout(rng):
    a = BlockMatrix(random_psd_blocks(rng, 3, 2))
    again = BlockMatrix.from_assembled(a.assembled(), 2)
    np.testing.assert_array_equal(again.blocks, a.blocks)
    with pytest.raises(ShapeMismatchError):
        BlockMatrix.from_assembled(a.assembled(), 4)


def test_schur_product_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        schur_product(BlockMatrix.from_scalars(np.eye(2)), BlockMatrix.from_scalars(np.eye(3)))


def test_check_positive_verdicts():
    assert check_positive(np.eye(3)).min_eigenvalue == pytest.approx(1.0)
    assert not check_positive(np.diag([1.0, -1.0])).positive
    with pytest.raises(NotHermitianError):
        check_positive(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_scalar_entries_lift_exactly(rng):
    a = BlockMatrix.from_scalars(rng.standard_normal((3, 3)))
    b = BlockMatrix.from_scalars(rng.standard_normal((3, 3)))
    result = lift_compress_check(a, b)
    assert result.defect <= 1e-12
    assert result.isometry_defect == 0.0


def test_scalar_multiple_blocks_commute_with_anything(rng):
    scalars = rng.standard_normal((2, 2))
    a = BlockMatrix(np.einsum("ij,ab->ijab", scalars, np.eye(3)).astype(np.complex128))
    b = BlockMatrix(rng.standard_normal((2, 2, 3, 3)).astype(np.complex128))
    assert lift_compress_check(a, b).defect <= 1e-12


def test_lift_isometry_shape(rng):
    a, b = tensor_commuting_pair(rng, 3, 2, 2)
    _, _, r = lift_operators(a, b)
    assert r.shape == (3 * 3 * 4, 3 * 4)
    np.testing.assert_array_equal(r.conj().T @ r, np.eye(12))


def test_non_commuting_entries_are_rejected():
    x = np.array([[0.0, 1.0], [0.0, 0.0]])
    a = BlockMatrix(np.broadcast_to(x, (2, 2, 2, 2)).astype(np.complex128))
    b = BlockMatrix(np.broadcast_to(x.T, (2, 2, 2, 2)).astype(np.complex128))
    defect, witness = entry_commutators(a, b)
    assert defect == pytest.approx(1.0)
    assert witness.startswith("A[")
    with pytest.raises(NonCommutingEntriesError):
        lift_compress_check(a, b)


def test_commutation_cap():
    a = BlockMatrix.from_scalars(np.eye(4))
    with pytest.raises(CapExceededError):
        lift_compress_check(a, a, NumericConfig(commutation_cap=3))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_classical_schur_product_theorem(seed):
    rng = np.random.default_rng(seed)
    a = BlockMatrix(random_psd_blocks(rng, 3, 1))
    b = BlockMatrix(random_psd_blocks(rng, 3, 1))
    assert check_positive(schur_product(a, b)).positive


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=4))
def test_tensor_pairs_lift_and_stay_positive(seed, m):
    rng = np.random.default_rng(seed)
    a, b = tensor_commuting_pair(rng, m, 2, 2)
    result = lift_compress_check(a, b)
    assert result.defect <= 1e-10
    assert result.commutator_defect <= 1e-10
    assert check_positive(schur_product(a, b)).min_eigenvalue >= -1e-10
