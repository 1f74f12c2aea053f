import dataclasses
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bmseq import polys
from bmseq.bounds import delta1
from bmseq.identities import (
    CLAIMS,
    IDENTITIES,
    certificate_grid,
    certify_poly_identity,
    check_surd_identity,
    default_surd_grid,
    expand,
    lattice,
    positivity_scan,
)
from bmseq.surd import QuadraticSurd

POLY_IDS = [i for i, r in IDENTITIES.items() if r.kind == "polynomial"]
SURD_IDS = [i for i, r in IDENTITIES.items() if r.kind == "single_radical"]

ls, ms = sympy.symbols("l m")


def _sym(x):
    if isinstance(x, QuadraticSurd):
        return _sym(x.a) + _sym(x.b) * sympy.sqrt(x.D)
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def test_registry_contents():
    for i in ["ID-G3", "ID-G2", "ID-H", "ID-P2", "ID-OMEGA", "ID-DISC31", "ID-DISC33", "ID-FDIAG",
              "ID-SL", "ID-SL1", "ID-F0", "ID-DSHIFT"]:
        assert IDENTITIES[i].kind == "polynomial"
    for i in ["ID-GH", "ID-KM", "ID-ST", "ID-X2", "ID-WDIAG"]:
        assert IDENTITIES[i].kind == "single_radical"
    for c in ["PC-P", "PC-D2F", "PC-G32", "PC-H", "PC-M", "PC-S", "PC-SLNEG", "PC-110"]:
        assert c in CLAIMS


@pytest.mark.parametrize("ident", POLY_IDS)
def test_poly_identity_certifies(ident):
    res = certify_poly_identity(ident)
    assert res.passed, res.witness
    deg_m, deg_l = IDENTITIES[ident].degrees
    assert res.points >= (deg_m + 1) * (1 if "l" not in IDENTITIES[ident].variables else deg_l + 1)


@pytest.mark.parametrize("ident", POLY_IDS)
def test_poly_identity_expands_to_zero_and_degrees_bound_both_sides(ident):
    rec = IDENTITIES[ident]
    assert expand(rec).is_zero()
    deg_m, deg_l = rec.degrees
    for side in (rec.lhs(polys.L, polys.M), rec.rhs(polys.L, polys.M)):
        assert side.deg_m <= deg_m and side.deg_l <= deg_l


@pytest.mark.parametrize("ident", POLY_IDS)
def test_poly_identity_sympy_oracle(ident):
    rec = IDENTITIES[ident]
    diff = sympy.expand(rec.lhs(ls, ms) - rec.rhs(ls, ms))
    assert diff == 0


def test_grid_exceeds_degrees():
    rec = IDENTITIES["ID-G3"]
    pts = certificate_grid(rec, pad=2)
    assert len({m for _, m in pts}) == rec.degrees[0] + 3
    assert len({l for l, _ in pts}) == rec.degrees[1] + 3
    omega = IDENTITIES["ID-OMEGA"]
    assert {l for l, _ in certificate_grid(omega)} == {1}


def test_g3_spot_value():
    rec = IDENTITIES["ID-G3"]
    assert polys.G3(1, 2) == 285 and polys.DELTA2(1, 2) == 8009
    assert rec.lhs(1, 2) == rec.rhs(1, 2) == 73216 == 4 * 11 * 13 * 16 * 4 * 2


def test_dshift_spot_and_shared_delta1():
    assert polys.DELTA2(1, 2) == delta1(1, 3) == 8009
    assert expand("ID-DISC31").is_zero()


def test_mutated_g3_fails_at_first_grid_point():
    rec = IDENTITIES["ID-G3"]
    bad = dataclasses.replace(rec, rhs=lambda l, m: 5 * (4 * m + 3) * (4 * m + 5) * (m + 2) ** 2 * (m + 1 + l) * (m + 1 - l))
    res = certify_poly_identity(bad)
    assert not res.passed
    assert res.witness[:2] == certificate_grid(rec)[0]
    assert not expand(bad).is_zero()


@pytest.mark.parametrize("ident", SURD_IDS)
def test_surd_identity_passes_default_grid(ident):
    res = check_surd_identity(ident)
    assert res.passed, res.witness
    if IDENTITIES[ident].grid is None:
        assert res.points == len(default_surd_grid()) == 144


def test_surd_identity_perfect_square_point():
    assert polys.LAMBDA(1, 2) == 81
    assert check_surd_identity("ID-ST", [(1, 2)]).passed
    rec = IDENTITIES["ID-ST"]
    r = QuadraticSurd.sqrt(81)
    assert r.is_rational and rec.rhs(1, 2, r) == rec.lhs(1, 2, r)


def test_mutated_x2_sign_flip_fails_at_first_point():
    rec = IDENTITIES["ID-X2"]
    bad = dataclasses.replace(rec, rhs=lambda l, m, r: -rec.rhs(l, m, r))
    res = check_surd_identity(bad)
    assert not res.passed
    assert res.witness[:2] == (1, 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SURD_IDS), st.integers(1, 15), st.integers(1, 15))
def test_surd_identities_sympy_oracle(ident, ell, dm):
    rec = IDENTITIES[ident]
    m = ell + dm
    if rec.grid is not None:
        ell = m
    root = sympy.sqrt(sympy.Integer(rec.radicand(ell, m)))
    diff = _sym(rec.lhs(ell, m, root)) - _sym(rec.rhs(ell, m, root))
    assert sympy.simplify(diff) == 0


def test_wrong_kind_rejected():
    with pytest.raises(ValueError):
        certify_poly_identity("ID-GH")
    with pytest.raises(ValueError):
        check_surd_identity("ID-G3")
    with pytest.raises(KeyError):
        certify_poly_identity("ID-NOPE")


@pytest.mark.parametrize("claim", list(CLAIMS))
def test_claims_scan_clean(claim):
    rep = positivity_scan(claim)
    assert rep.ok, rep.violations[:3]
    assert rep.label == "scanned domain"


def test_claim_examples():
    rep = positivity_scan("PC-S", lattice(1, 15, 1, 20))
    assert rep.ok and rep.examined == 15 * 20
    rep = positivity_scan("PC-SLNEG", [(l, l) for l in range(1, 31)])
    assert rep.ok and rep.examined == 30


def test_claim_domain_is_enforced():
    # points outside the hypothesis are skipped, not silently counted
    rep = positivity_scan("PC-P", [(3, 3), (2, 3)])
    assert rep.examined == 1 and rep.skipped == 1
    # widening PC-P to l = m is allowed; it stays clean there
    wide = positivity_scan("PC-P", [(l, l) for l in range(1, 40)], domain=lambda l, m: l <= m)
    assert wide.examined == 39
    assert wide.ok


def test_claim_detects_sign_failure():
    # S_l(l) is negative, so asking for S > 0 on the diagonal must report it
    rep = positivity_scan("PC-S", [(l, l) for l in range(1, 6)], domain=lambda l, m: True)
    assert len(rep.violations) == 5
    with pytest.raises(KeyError):
        positivity_scan("PC-NOPE")
