"""Tests for dynamical systems, covariant pairs, induced pairs, polynomials and norm sampling."""

import numpy as np
import pytest

from nica_dilations.core.exceptions import (
    DilationError,
    SamplerExhaustedError,
    ShapeMismatchError,
    SupportError,
)
from nica_dilations.representation import build_direct_rep, build_tensor_rep, validate_nica
from nica_dilations.semicrossed import (
    Polynomial,
    SamplerConfig,
    build_pair,
    build_system,
    character,
    dilate_covariant_pair,
    estimate_norms,
    eval_polynomial,
    gauge_defect,
    gauge_transform,
    homomorphism_defect,
    identity_sigma,
    induced_representation,
    isometric_value,
    matrix_units,
    polynomial_product,
    quotient_pi,
    sample_pair,
    trivial_system,
    truncated_translation,
    validate_covariance,
    validate_system,
)
from nica_dilations.semigroup import GridSet, enumerate_grid, enumerate_window, parse_element

E11, E12, E21, E22 = matrix_units(2)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.diag([1.0, -1.0])


@pytest.fixture
def m2_system(z_plus, m2_unitary):
    return build_system(z_plus, [[m2_unitary]])


@pytest.fixture
def m2_pair(m2_system, m2_rep):
    return build_pair(m2_system, None, m2_rep)


@pytest.fixture
def scalar_system(z_plus):
    return trivial_system(z_plus, 1)


# ---------------------------------------------------------------------------
# Systems and covariance


def test_identity_action_has_no_defects(z_plus_2):
    report = validate_system(trivial_system(z_plus_2, 2))
    assert report.passed
    assert all(check.defect <= 1e-12 for check in report.checks)


def test_diagonal_unitary_action_passes(m2_system):
    report = validate_system(m2_system)
    assert report.passed
    assert len(m2_system.basis) == 4


def test_non_unitary_action_fails(z_plus):
    report = validate_system(build_system(z_plus, [[np.diag([1.0, 0.5])]]))
    assert not report.get("unitarity").passed


def test_system_shape_errors(z_plus_2):
    with pytest.raises(ShapeMismatchError):
        build_system(z_plus_2, [[np.eye(2)]])
    with pytest.raises(ShapeMismatchError):
        build_system(z_plus_2, [[np.eye(2)], [np.eye(3)]])


def test_alpha_rejects_negative_elements(z_plus, m2_system):
    with pytest.raises(DilationError):
        m2_system.alpha(parse_element(z_plus, [[-1]]), E12)
    np.testing.assert_allclose(
        m2_system.alpha_group(parse_element(z_plus, [[-1]]), E12), 1j * E12
    )


def test_inner_action_pair_is_covariant(m2_pair):
    report = validate_covariance(m2_pair)
    assert report.passed
    assert report.get("covariance").defect <= 1e-12


def test_commutant_rep_with_trivial_action(scalar_system, scalar_rep):
    assert validate_covariance(build_pair(scalar_system, None, scalar_rep)).passed


def test_mismatched_pair_reports_witness(z_plus, m2_system):
    rep = build_direct_rep(z_plus, [[np.array([[0.0, 1.0], [0.0, 0.0]])]])
    report = validate_covariance(build_pair(m2_system, None, rep))
    covariance = report.get("covariance")
    assert not covariance.passed
    assert covariance.witness is not None and covariance.witness.startswith("basis[")


def test_sigma_images_must_match_basis(m2_system, m2_rep):
    with pytest.raises(ShapeMismatchError):
        build_pair(m2_system, [np.eye(2)], m2_rep)


# ---------------------------------------------------------------------------
# Dilated pairs


def test_dilated_inner_pair_satisfies_covariance(z_plus, m2_pair):
    dilated = dilate_covariant_pair(m2_pair, enumerate_grid(z_plus, 2))
    assert dilated.passed
    assert all(check.defect <= 1e-8 for check in dilated.checks)


def test_zero_contraction_pi_is_scalar_multiplication(z_plus, scalar_system, zero_rep):
    pair = build_pair(scalar_system, None, zero_rep)
    dilated = dilate_covariant_pair(pair, enumerate_grid(z_plus, 2))
    assert dilated.dil.rank == 3
    np.testing.assert_allclose(dilated.pi(np.array([[2.5]])), 2.5 * np.eye(3), atol=1e-12)


def test_identity_rep_does_not_grow(z_plus):
    rep = build_direct_rep(z_plus, [[np.eye(2)]])
    pair = build_pair(trivial_system(z_plus, 2), None, rep)
    dilated = dilate_covariant_pair(pair, enumerate_grid(z_plus, 2))
    assert dilated.dil.rank == 2
    assert dilated.passed
    embedded = dilated.dil.embed_h
    for k, basis in enumerate(pair.system.basis):
        np.testing.assert_allclose(
            embedded.conj().T @ dilated.pi_basis[k] @ embedded, basis, atol=1e-12
        )


def test_quotient_pi_is_multiplicative(z_plus, m2_pair):
    dil = dilate_covariant_pair(m2_pair, enumerate_grid(z_plus, 1)).dil
    a = E12 + 2 * E21
    b = E11 - 1j * E22
    np.testing.assert_allclose(
        quotient_pi(m2_pair, dil, a @ b),
        quotient_pi(m2_pair, dil, a) @ quotient_pi(m2_pair, dil, b),
        atol=1e-12,
    )


# ---------------------------------------------------------------------------
# Induced pairs


def test_truncated_translation_is_a_shift(z_plus):
    grid = enumerate_grid(z_plus, 3)
    w = truncated_translation(grid, z_plus.generator(0), 1)
    expected = np.zeros((4, 4))
    expected[np.arange(1, 4), np.arange(3)] = 1.0
    np.testing.assert_array_equal(w, expected)


def test_trivial_action_induces_amplification(z_plus):
    system = trivial_system(z_plus, 2)
    grid = enumerate_grid(z_plus, 2)
    pair = induced_representation(system, identity_sigma(system), grid)
    for k, basis in enumerate(system.basis):
        np.testing.assert_allclose(pair.sigma_basis[k], np.kron(np.eye(3), basis))


def test_induced_pair_on_two_factors(z_plus_2, m2_unitary):
    system = build_system(z_plus_2, [[m2_unitary], [m2_unitary]])
    pair = induced_representation(system, identity_sigma(system), enumerate_grid(z_plus_2, 2))
    assert validate_covariance(pair).get("covariance").defect <= 1e-10
    assert validate_nica(pair.rep).passed
    truncation = pair.truncation
    assert truncation is not None
    assert truncation.interior_isometry_defect <= 1e-12
    assert truncation.boundary_columns == {"n0.g0": 3, "n1.g0": 3}
    assert truncation.interior_unitary_defect is None


def test_bilateral_induced_pair_is_unitary_inside(z_plus, m2_system):
    window = enumerate_window(z_plus, 2)
    pair = induced_representation(m2_system, identity_sigma(m2_system), window, bilateral=True)
    assert pair.truncation is not None
    assert pair.truncation.interior_unitary_defect == 0.0
    assert validate_covariance(pair).passed


def test_induced_support_errors(z_plus, m2_system):
    with pytest.raises(SupportError):
        induced_representation(m2_system, identity_sigma(m2_system), GridSet(()))
    with pytest.raises(SupportError):
        induced_representation(m2_system, identity_sigma(m2_system), enumerate_window(z_plus, 1))


# ---------------------------------------------------------------------------
# Polynomials


def test_constant_identity_polynomial(z_plus, m2_pair):
    p = Polynomial(((z_plus.zero(), np.eye(2)),))
    np.testing.assert_allclose(eval_polynomial(m2_pair, p), np.eye(2))


def test_single_shift_on_scalar_system(z_plus, scalar_system, scalar_rep):
    pair = build_pair(scalar_system, None, scalar_rep)
    p = Polynomial(((z_plus.generator(0), np.eye(1)),))
    assert eval_polynomial(pair, p)[0, 0] == pytest.approx(0.5)


def test_two_term_polynomial_matches_hand_sum(z_plus, m2_pair, m2_unitary):
    p = Polynomial(((z_plus.zero(), E11), (z_plus.generator(0), E12)))
    expected = E11 + (m2_unitary.conj().T / 2) @ E12
    np.testing.assert_allclose(eval_polynomial(m2_pair, p), expected, atol=1e-13)


def test_polynomial_terms_are_validated(z_plus):
    one = z_plus.generator(0)
    with pytest.raises(ValueError):
        Polynomial(((one, E11), (one, E12)))
    with pytest.raises(SupportError):
        Polynomial(((parse_element(z_plus, [[-1]]), E11),))
    collected = Polynomial.collect([(one, E11), (one, E12)])
    assert len(collected.terms) == 1
    np.testing.assert_allclose(collected.terms[0][1], E11 + E12)


def test_coefficient_outside_algebra_is_rejected(z_plus, m2_unitary, m2_rep):
    diagonal = build_system(z_plus, [[m2_unitary]], basis=[E11, E22])
    pair = build_pair(diagonal, None, m2_rep)
    with pytest.raises(DilationError) as exc_info:
        eval_polynomial(pair, Polynomial(((z_plus.zero(), E12),)))
    assert exc_info.value.check == "algebra"


def test_product_follows_the_action(z_plus, m2_system, m2_unitary):
    one = z_plus.generator(0)
    p = Polynomial(((one, E12),))
    q = Polynomial(((one, E21),))
    product = polynomial_product(m2_system, p, q)
    assert [s.coeffs for s in product.indices] == [((2,),)]
    np.testing.assert_allclose(
        product.terms[0][1], m2_unitary @ E12 @ m2_unitary.conj().T @ E21, atol=1e-15
    )


def test_evaluation_is_multiplicative(z_plus, m2_pair, rng):
    def random_polynomial() -> Polynomial:
        return Polynomial(
            tuple(
                (z_plus.generator(0).scaled(n), rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
                for n in range(3)
            )
        )

    assert homomorphism_defect(m2_pair, random_polynomial(), random_polynomial()) <= 1e-12
    p = Polynomial(((z_plus.generator(0), E11),))
    q = Polynomial(((z_plus.zero(), E12), (z_plus.generator(0), E21)))
    assert homomorphism_defect(m2_pair, p, q) == pytest.approx(0.0, abs=1e-13)


# ---------------------------------------------------------------------------
# Gauge action


def test_trivial_character_leaves_polynomial_unchanged(z_plus):
    p = Polynomial(((z_plus.zero(), E11), (z_plus.generator(0), E12)))
    transformed = gauge_transform(p, [[0.0]])
    for (_, before), (_, after) in zip(p.terms, transformed.terms, strict=True):
        np.testing.assert_allclose(after, before)


def test_character_values(z_plus_2):
    s = parse_element(z_plus_2, [[1], [2]])
    assert character([[np.pi], [0.25 * np.pi]], s) == pytest.approx(-1j)
    with pytest.raises(ShapeMismatchError):
        character([[0.0]], s)


def test_single_term_norm_is_gauge_invariant(z_plus, m2_pair):
    p = Polynomial(((z_plus.generator(0), E12 + E21),))
    base = np.linalg.norm(eval_polynomial(m2_pair, p), 2)
    moved = np.linalg.norm(eval_polynomial(m2_pair, gauge_transform(p, [[1.3]])), 2)
    assert moved == pytest.approx(base)


def test_gauge_identity(z_plus, m2_pair, rng):
    p = Polynomial(
        ((z_plus.zero(), E11 + E22), (z_plus.generator(0), E12), (z_plus.generator(0).scaled(2), E21))
    )
    for theta in rng.uniform(0.0, 2 * np.pi, size=(5, 1, 1)):
        assert gauge_defect(m2_pair, p, theta.tolist()) <= 1e-12


# ---------------------------------------------------------------------------
# Norm sampling


def test_sampled_pairs_are_covariant_nica_pairs(m2_system):
    config = SamplerConfig(seed=3, leg_dim_cap=2)
    pair, leg_dims = sample_pair(m2_system, np.random.default_rng(3), config)
    assert pair.dim == 2 * leg_dims[0]
    assert validate_covariance(pair).passed
    assert validate_nica(pair.rep).passed


def test_constant_identity_has_unit_norms(z_plus, m2_system):
    p = Polynomial(((z_plus.zero(), np.eye(2)),))
    estimate = estimate_norms(p, m2_system, SamplerConfig(seed=1, samples=3, support_depth=1))
    assert estimate.contractive_sup == pytest.approx(1.0)
    assert estimate.isometric_sup == pytest.approx(1.0)
    assert estimate.inequality_holds


def test_single_shift_reaches_one_at_the_unitary_corner(z_plus, scalar_system):
    p = Polynomial(((z_plus.generator(0), np.eye(1)),))
    estimate = estimate_norms(p, scalar_system, SamplerConfig(seed=5, samples=6, support_depth=2))
    assert estimate.per_sample[0].contractive == pytest.approx(1.0)
    assert estimate.contractive_sup == pytest.approx(1.0)
    assert estimate.isometric_sup == pytest.approx(1.0)
    assert estimate.induced_value == pytest.approx(1.0)
    assert estimate.min_dilation_gap >= -estimate.tol
    assert all(record.contractive <= 1.0 + 1e-12 for record in estimate.per_sample)


def test_compression_inequality_holds_per_sample(z_plus, m2_system):
    p = Polynomial(((z_plus.zero(), E11), (z_plus.generator(0), E12 - E21)))
    estimate = estimate_norms(p, m2_system, SamplerConfig(seed=9, samples=5, support_depth=2))
    assert estimate.inequality_holds
    assert all(record.gap >= -estimate.tol for record in estimate.per_sample)


def test_estimates_are_seed_deterministic(z_plus, m2_system):
    p = Polynomial(((z_plus.generator(0), E12),))
    config = SamplerConfig(seed=21, samples=4, support_depth=1, include_unitary_corner=False)
    first = estimate_norms(p, m2_system, config)
    second = estimate_norms(p, m2_system, config)
    assert first.model_dump() == second.model_dump()


def test_isometric_value_of_constant(z_plus, m2_pair):
    value, rank = isometric_value(m2_pair, Polynomial(((z_plus.zero(), np.eye(2)),)), 1)
    assert value == pytest.approx(1.0)
    assert rank >= m2_pair.dim


def test_non_commuting_action_exhausts_sampler(z_plus_2):
    system = build_system(z_plus_2, [[PAULI_X], [PAULI_Z]])
    p = Polynomial(((z_plus_2.zero(), np.eye(2)),))
    with pytest.raises(SamplerExhaustedError):
        estimate_norms(p, system, SamplerConfig(samples=2))


def test_scalar_rep_from_tensor_builder_evaluates(z_plus, scalar_system):
    rep = build_tensor_rep(z_plus, [[0.25]])
    pair = build_pair(scalar_system, None, rep)
    p = Polynomial(((z_plus.zero(), np.eye(1)), (z_plus.generator(0).scaled(2), 2 * np.eye(1))))
    assert eval_polynomial(pair, p)[0, 0] == pytest.approx(1.0 + 2 * 0.0625)
