"""Identities of the minimal isometric Nica-covariant dilation, measured at truncation.

Every pairing is computed in quotient coordinates of a support that has been
extended far enough for the identity to be exact. Adjoints V_s* are obtained
by least-squares projection onto span{V_s delta_f (x) h : f in F}; the
projection is exact once F contains the element that V_s* lands on.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np
import scipy.linalg
from pydantic import BaseModel, computed_field

from nica_dilations.core.exceptions import SupportError
from nica_dilations.core.models import CheckResult
from nica_dilations.dilation.shifts import compressed_shift
from nica_dilations.dilation.space import DilationSpace
from nica_dilations.linalg import ComplexMatrix, spectral_norm
from nica_dilations.representation import evaluate_at
from nica_dilations.semigroup import (
    GroupElement,
    decompose_parts,
    disjoint,
    lattice_join,
    sort_elements,
)

logger = logging.getLogger(__name__)


def _tol(dil: DilationSpace, extended: DilationSpace | None = None) -> float:
    space = extended or dil
    return dil.rep.config.scaled_tol(space.raw_dim)


def _require_cone(**elements: GroupElement) -> None:
    for name, element in elements.items():
        if not element.in_cone():
            raise SupportError(f"{name}={element} is not in S")


def _positive_part(g: GroupElement) -> GroupElement:
    return lattice_join(g, g.semigroup.zero())


def _adjoint_shift(
    space: DilationSpace, s: GroupElement, domain: Sequence[GroupElement], vectors: ComplexMatrix
) -> ComplexMatrix:
    """Coefficients C with V_s* y = span(domain) C, by projecting y onto span(domain + s)."""
    shifted = space.span([f + s for f in domain])
    cond = float(np.sqrt(space.rep.config.rank_rel_tol))
    coefficients, *_ = scipy.linalg.lstsq(shifted, vectors, cond=cond)
    return np.asarray(coefficients, dtype=np.complex128)


def verify_isometry(dil: DilationSpace, s: GroupElement) -> CheckResult:
    """max | ||V_s xi||^2 - ||xi||^2 | over an orthonormal basis of the quotient.

    The norms come from the extended Gram form: X*(S* G_E S - G)X with X = Q^+.
    """
    shift = compressed_shift(dil, s)
    basis = dil.factor_pinv
    moved = shift.raw @ basis
    gram_defect = spectral_norm(
        moved.conj().T @ shift.target.gram @ moved - basis.conj().T @ dil.gram @ basis
    )
    coordinate_defect = spectral_norm(shift.matrix.conj().T @ shift.matrix - np.eye(dil.rank))
    return CheckResult(
        check="isometry",
        defect=gram_defect,
        tol=_tol(dil, shift.target),
        parameters={"s": s.to_json(), "coordinate_defect": coordinate_defect},
    )


def verify_regularity(dil: DilationSpace, g: GroupElement) -> CheckResult:
    """||P_H V_{g-}* V_{g+}|_H - T_g|| through <V_{g+} h^, V_{g-} k^> = <T_g h, k>."""
    g_plus, g_minus = decompose_parts(g)
    extended = dil.extend([g_plus, g_minus])
    compressed = extended.pairing(g_plus, g_minus)
    defect = spectral_norm(compressed - evaluate_at(dil.rep, g))
    return CheckResult(
        check="regularity", defect=defect, tol=_tol(dil, extended), parameters={"g": g.to_json()}
    )


def verify_coinvariance(dil: DilationSpace, s: GroupElement) -> CheckResult:
    """||V_s* h^ - (T_s* h)^||: H is co-invariant and V_s* acts on it as T_s*."""
    _require_cone(s=s)
    zero = s.semigroup.zero()
    domain = [zero]
    extended = dil.extend(f + s for f in domain)
    coefficients = _adjoint_shift(extended, s, domain, extended.vectors(zero))
    projected = extended.span(domain) @ coefficients
    expected = extended.vectors(zero) @ evaluate_at(dil.rep, s).conj().T
    return CheckResult(
        check="coinvariance",
        defect=spectral_norm(projected - expected),
        tol=_tol(dil, extended),
        parameters={"s": s.to_json()},
    )


def _restricted_pairings(
    space: DilationSpace,
    domain: Sequence[GroupElement],
    s: GroupElement,
    mu: GroupElement,
    nu: GroupElement,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """<V_s* V_mu h^, V_nu k^> and <V_mu V_s* h^, V_nu k^>."""
    zero = s.semigroup.zero()
    target = space.vectors(nu)
    after = _adjoint_shift(space, s, domain, space.vectors(mu))
    lhs = target.conj().T @ space.span(domain) @ after
    before = _adjoint_shift(space, s, domain, space.vectors(zero))
    rhs = target.conj().T @ space.span([f + mu for f in domain]) @ before
    return lhs, rhs


def _domain(extra: Iterable[GroupElement]) -> list[GroupElement]:
    return sort_elements(extra)


def verify_restricted_nica(
    dil: DilationSpace, s: GroupElement, mu: GroupElement, nu: GroupElement
) -> CheckResult:
    """V_s* V_mu|_H = V_mu V_s*|_H for s ∧ mu = 0, tested against V_nu k^.

    Raises:
        SupportError: a parameter is outside S, or s ∧ mu != 0
    """
    _require_cone(s=s, mu=mu, nu=nu)
    if not disjoint(s, mu):
        raise SupportError(f"restricted identity needs s ∧ mu = 0, got s={s}, mu={mu}")
    domain = _domain([s.semigroup.zero(), mu])
    needed = [*domain, *(f + s for f in domain), *(f + mu for f in domain), nu]
    extended = dil.extend(needed)
    lhs, rhs = _restricted_pairings(extended, domain, s, mu, nu)
    return CheckResult(
        check="restricted_nica",
        defect=spectral_norm(lhs - rhs),
        tol=_tol(dil, extended),
        parameters={"s": s.to_json(), "mu": mu.to_json(), "nu": nu.to_json()},
    )


class NicaDilationCheck(BaseModel):
    """The full Nica pairing identity and its restricted sub-identity."""

    identity: CheckResult
    restricted: CheckResult

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.identity.passed and self.restricted.passed


def verify_nica_dilation(
    dil: DilationSpace,
    s: GroupElement,
    t: GroupElement,
    mu: GroupElement,
    nu: GroupElement,
) -> NicaDilationCheck:
    """<V_s* V_t V_mu h^, V_nu k^> = <V_t V_s* V_mu h^, V_nu k^> for s, t in different factors.

    Raises:
        SupportError: parameters outside S, or s and t not supported on distinct single factors
    """
    _require_cone(s=s, t=t, mu=mu, nu=nu)
    s_factor, t_factor = s.single_factor(), t.single_factor()
    if s.support() and t.support() and (s_factor is None or t_factor is None or s_factor == t_factor):
        raise SupportError(f"s={s} and t={t} must lie in distinct single factors")

    domain = _domain([s.semigroup.zero(), mu, t, _positive_part(mu - s)])
    needed = [
        *domain,
        *(f + s for f in domain),
        *(f + t for f in domain),
        t + mu,
        s + nu,
        nu,
    ]
    extended = dil.extend(needed)

    # V_s* V_t V_mu h^ paired with V_nu k^ is <V_{t+mu} h^, V_{s+nu} k^>
    lhs = extended.pairing(t + mu, s + nu)
    coefficients = _adjoint_shift(extended, s, domain, extended.vectors(mu))
    rhs = extended.vectors(nu).conj().T @ extended.span([f + t for f in domain]) @ coefficients
    tol = _tol(dil, extended)
    parameters = {"s": s.to_json(), "t": t.to_json(), "mu": mu.to_json(), "nu": nu.to_json()}
    identity = CheckResult(
        check="nica_identity", defect=spectral_norm(lhs - rhs), tol=tol, parameters=parameters
    )

    restricted_lhs, restricted_rhs = _restricted_pairings(extended, domain, s, t, nu)
    restricted = CheckResult(
        check="restricted_nica",
        defect=spectral_norm(restricted_lhs - restricted_rhs),
        tol=tol,
        parameters={"s": s.to_json(), "mu": t.to_json(), "nu": nu.to_json()},
    )
    logger.debug(
        f"nica s={s} t={t} mu={mu} nu={nu}: {identity.defect:.3e} / {restricted.defect:.3e}"
    )
    return NicaDilationCheck(identity=identity, restricted=restricted)


def compare_minimal_dilations(
    first: DilationSpace,
    second: DilationSpace,
    pairs: Sequence[tuple[GroupElement, GroupElement]] | None = None,
) -> CheckResult:
    """Gram criterion for unitary equivalence: <V_mu h^, V_nu k^> = <T_{mu-nu} h, k> in both.

    Raises:
        ValueError: the two dilations are built from different representations
    """
    if first.rep is not second.rep and not _same_generators(first, second):
        raise ValueError("dilations must come from the same representation")
    if pairs is None:
        common = [element for element in first.support if element in second.support]
        pairs = [(mu, nu) for mu in common for nu in common]
    worst, witness = 0.0, None
    for mu, nu in pairs:
        expected = evaluate_at(first.rep, mu - nu)
        for name, space in (("A", first), ("B", second)):
            defect = spectral_norm(space.pairing(mu, nu) - expected)
            if defect > worst:
                worst, witness = defect, f"{name}: mu={mu} nu={nu}"
    tol = first.rep.config.scaled_tol(max(first.raw_dim, second.raw_dim))
    return CheckResult(
        check="uniqueness",
        defect=worst,
        tol=tol,
        witness=witness,
        parameters={"pairs": len(pairs), "rank_a": first.rank, "rank_b": second.rank},
    )


def _same_generators(first: DilationSpace, second: DilationSpace) -> bool:
    a, b = first.rep, second.rep
    if a.mode != b.mode or a.dim != b.dim or a.semigroup.shape != b.semigroup.shape:
        return False
    return all(
        np.array_equal(x, y)
        for row_a, row_b in zip(a.generators, b.generators, strict=True)
        for x, y in zip(row_a, row_b, strict=True)
    )


def embedding_check(dil: DilationSpace) -> CheckResult:
    """<h^, k^> = <h, k>: block (0, 0) of the Gram form is T_0 = I."""
    return CheckResult(check="embedding", defect=dil.embedding_defect(), tol=_tol(dil))
