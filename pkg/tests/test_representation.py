"""Tests for representations, their validation and the regular-dilation kernel."""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from nica_dilations.core.config import NumericConfig
from nica_dilations.core.exceptions import (
    CapExceededError,
    NonCommutingError,
    NormExceededError,
    NotInMonoidError,
    SupportError,
)
from nica_dilations.representation import (
    build_direct_rep,
    build_tensor_rep,
    commuting_family,
    evaluate_at,
    haar_unitary,
    kernel_positivity,
    random_contraction,
    random_isometric_tensor_rep,
    random_tensor_rep,
    regular_kernel,
    validate_nica,
)
from nica_dilations.semigroup import FactorKind, FactorSpec, Semigroup, enumerate_grid, parse_element

NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]])


def test_scalar_kernel_on_two_points(z_plus, scalar_rep):
    points = [z_plus.zero(), z_plus.generator(0)]
    kernel = regular_kernel(scalar_rep, points)
    np.testing.assert_allclose(kernel.assembled, [[1.0, 0.5], [0.5, 1.0]], atol=1e-15)
    np.testing.assert_allclose(scipy.linalg.eigvalsh(kernel.assembled), [0.5, 1.5], atol=1e-12)

    result = kernel_positivity(scalar_rep, points)
    assert result.min_eigenvalue == pytest.approx(0.5)
    assert result.positive


def test_kernel_rejects_repeated_points(z_plus, scalar_rep):
    with pytest.raises(ValueError):
        regular_kernel(scalar_rep, [z_plus.zero(), z_plus.zero()])


def test_kernel_rejects_points_outside_the_cone(z_plus, scalar_rep):
    with pytest.raises(SupportError) as exc_info:
        regular_kernel(scalar_rep, [z_plus.zero(), parse_element(z_plus, [[-1]])])
    assert exc_info.value.check == "support"


def test_kernel_enforces_gram_cap():
    semigroup = Semigroup.cyclic(1, NumericConfig(gram_cap=4))
    rep = build_tensor_rep(semigroup, [[0.5]])
    with pytest.raises(CapExceededError) as exc_info:
        kernel_positivity(rep, list(enumerate_grid(semigroup, 20)))
    assert exc_info.value.size == 21
    assert exc_info.value.cap == 4
    assert exc_info.value.check == "cap"
    assert kernel_positivity(rep, list(enumerate_grid(semigroup, 3))).positive


def test_kernel_rejects_reps_whose_orderings_differ(z_plus_2):
    x = np.array([[0.0, 0.9], [0.0, 0.0]])
    y = np.array([[0.5, 0.3], [0.0, 0.5]])
    rep = build_direct_rep(z_plus_2, [[x], [y]])
    mixed = parse_element(z_plus_2, [[1], [-1]])
    lenient = evaluate_at(rep, mixed)
    np.testing.assert_allclose(lenient, y.conj().T @ x)
    with pytest.raises(NonCommutingError) as exc_info:
        evaluate_at(rep, mixed, strict=True)
    assert exc_info.value.check == "regular_extension"
    assert exc_info.value.defect == pytest.approx(0.27)
    grid = list(enumerate_grid(z_plus_2, 1))
    with pytest.raises(NonCommutingError):
        regular_kernel(rep, grid)
    lenient_kernel = regular_kernel(rep, grid, strict=False)
    assert lenient_kernel.ordering_defect == pytest.approx(0.27)
    assert kernel_positivity(rep, grid).ordering_defect == pytest.approx(0.27)
    assert kernel_positivity(rep, [z_plus_2.zero(), z_plus_2.generator(0)]).ordering_defect == 0.0


def test_tensor_rep_evaluates_products(z_plus_2, tensor_pair_rep):
    both = parse_element(z_plus_2, [[1], [1]])
    mixed = parse_element(z_plus_2, [[1], [-1]])
    assert evaluate_at(tensor_pair_rep, both)[0, 0] == pytest.approx(0.15)
    assert evaluate_at(tensor_pair_rep, mixed, strict=True)[0, 0] == pytest.approx(0.15)
    assert evaluate_at(tensor_pair_rep, z_plus_2.zero())[0, 0] == 1.0


def test_negative_group_element_uses_adjoint(z_plus):
    rep = build_tensor_rep(z_plus, [[0.5j]])
    minus_two = parse_element(z_plus, [[-2]])
    assert evaluate_at(rep, minus_two)[0, 0] == pytest.approx(-0.25)


def test_monoid_operator_rejects_negative_coefficients(scalar_rep):
    with pytest.raises(NotInMonoidError):
        scalar_rep.monoid_operator(((-1,),))


def test_generator_above_norm_one_is_rejected(z_plus):
    with pytest.raises(NormExceededError) as exc_info:
        build_tensor_rep(z_plus, [[1.2]])
    assert exc_info.value.norm == pytest.approx(1.2)
    assert exc_info.value.witness == "n0.g0"


def test_non_commuting_generators_of_one_factor_are_rejected():
    semigroup = Semigroup.of(
        [FactorSpec(kind=FactorKind.REAL, generators=["1", "1.4142135623730951"])]
    )
    with pytest.raises(NonCommutingError):
        build_direct_rep(semigroup, [[NILPOTENT, NILPOTENT.T]])


def test_non_doubly_commuting_pair_fails_nica(z_plus_2):
    y = 0.5 * np.eye(2) + 0.5 * NILPOTENT
    rep = build_direct_rep(z_plus_2, [[NILPOTENT], [y]])
    report = validate_nica(rep)
    assert not report.passed
    assert report.get("cross_factor_commutation").passed
    assert report.get("nica_covariance").defect == pytest.approx(0.5)
    assert report.get("contraction").passed


def test_tensor_rep_passes_validation(z_plus_2, tensor_pair_rep):
    report = validate_nica(tensor_pair_rep, points=[parse_element(z_plus_2, [[2], [0]])])
    assert report.passed
    assert report.dim == 1


def test_real_factor_rep_on_chain_points(real_semigroup):
    rep = build_tensor_rep(real_semigroup, [[0.5, 0.3], [0.6j]])
    chain = [parse_element(real_semigroup, [[n, 0], [n]]) for n in range(4)]
    assert kernel_positivity(rep, chain).positive
    with pytest.raises(NotInMonoidError):
        evaluate_at(rep, parse_element(real_semigroup, [[1, -1], [0]]))


def test_haar_unitary_is_unitary(rng):
    u = haar_unitary(rng, 4)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


def test_random_contraction_respects_radius(rng):
    x = random_contraction(rng, 3, radius=0.7)
    assert np.linalg.norm(x, 2) <= 0.7 + 1e-12


def test_commuting_family_commutes(rng):
    x, y, z = commuting_family(rng, 3, 3, radius=0.9)
    np.testing.assert_allclose(x @ z, z @ x, atol=1e-12)
    np.testing.assert_allclose(y, x @ x, atol=1e-12)


def test_isometric_rep_has_unit_norm_powers(z_plus_2, rng):
    rep = random_isometric_tensor_rep(z_plus_2, rng, leg_dims=2)
    t = evaluate_at(rep, parse_element(z_plus_2, [[2], [1]]))
    np.testing.assert_allclose(t.conj().T @ t, np.eye(4), atol=1e-12)


def test_kernel_factorization_rebuilds_kernel(z_plus_2, rng):
    rep = random_tensor_rep(z_plus_2, rng, leg_dims=2, radius=0.9)
    result = kernel_positivity(rep, list(enumerate_grid(z_plus_2, 1)), factorize=True)
    assert result.positive
    factorization = result.factorization
    assert factorization is not None
    assert factorization.passed
    assert factorization.lift_error is None
    assert all(value >= -1e-10 for value in factorization.factor_min_eigenvalues)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_tensor_kernels_are_positive(seed):
    semigroup = Semigroup.cyclic(2)
    rep = random_tensor_rep(semigroup, np.random.default_rng(seed), leg_dims=2, radius=1.0)
    assert validate_nica(rep).passed
    assert kernel_positivity(rep, list(enumerate_grid(semigroup, 2))).positive


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=2))
def test_evaluation_laws_on_the_grid(seed, k):
    semigroup = Semigroup.cyclic(k)
    rep = random_tensor_rep(semigroup, np.random.default_rng(seed), leg_dims=2, radius=1.0)
    grid = list(enumerate_grid(semigroup, 2))
    for s in grid:
        for t in grid:
            np.testing.assert_allclose(
                evaluate_at(rep, s + t), evaluate_at(rep, s) @ evaluate_at(rep, t), atol=1e-12
            )
            g = t - s
            value = evaluate_at(rep, g, strict=True)
            np.testing.assert_allclose(evaluate_at(rep, -g), value.conj().T, atol=1e-12)
            assert np.linalg.norm(value, 2) <= 1.0 + rep.tol
