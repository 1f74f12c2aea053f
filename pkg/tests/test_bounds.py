from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bmseq import polys
from bmseq.bounds import (
    BOUND_SPECS,
    NegativeRadicand,
    W_value,
    check_bracket,
    check_inequality,
    chen_gu_lower,
    chen_gu_upper,
    delta1,
    f_eval,
    gap_values,
    isolate_r2,
    lambda_and_U,
    quad_roots,
    sweep,
    x_root,
    y_root,
)
from bmseq.core import DomainError, build_table
from bmseq.logprops import Seq, extended_ultra
from bmseq.surd import QuadraticSurd, surd_cmp

F = Fraction
transposed = st.integers(1, 40).flatmap(lambda l: st.tuples(st.just(l), st.integers(l + 1, l + 60)))


def test_delta1_values():
    assert delta1(1, 2) == 2032
    assert delta1(1, 3) == 8009
    with pytest.raises(DomainError):
        delta1(0, 3)
    with pytest.raises(DomainError):
        delta1(2, 2)


def test_W_values():
    w = W_value(1, 2)
    # (25 - 2 sqrt(127)) / 8, kept over the raw radicand 2032 = 16 * 127
    assert w == QuadraticSurd(F(25, 8), F(-1, 16), 2032)
    assert str(w) == "(25/8) + (-1/16)*sqrt(2032)"
    assert (w - F(25, 8)) ** 2 == F(4 * 127, 64)
    assert W_value(1, 3) == QuadraticSurd(F(105, 24), F(-1, 24), 8009)


def test_W_on_the_diagonal_uses_omega():
    for m in range(1, 30):
        assert delta1(m, m + 1) == polys.OMEGA(0, m)


def test_f_values():
    for v in range(0, 12):
        assert f_eval(v, 0) == -4 * v * v
        assert f_eval(v, 1) == 16 * v**4 + 328 * v**2 - 119
    assert f_eval(1, 3) == -1135
    assert f_eval(1, 2) == 1324


def test_lambda_and_U():
    lam, U = lambda_and_U(1, 2)
    assert lam == 81 and U == F(17, 6) and U.is_rational
    assert F(43, 15) > F(17, 6)
    lam, U = lambda_and_U(2, 3)
    assert lam == 7 * 183 == 1281
    assert U.D == 1281 and not U.is_rational
    with pytest.raises(DomainError):
        lambda_and_U(0, 3)


def test_quad_roots():
    x1, x2 = quad_roots(1, 2)
    assert x1 == W_value(1, 2)
    assert x2 - x1 == QuadraticSurd.sqrt(2032) / (2 * 2 * 2)
    assert surd_cmp(x1, x2) < 0


@given(transposed)
def test_roots_solve_their_quadratic(pt):
    ell, m = pt
    A, B, C = (p(ell, m) for p in (polys.QA, polys.QB, polys.QC))
    for x in quad_roots(ell, m):
        assert A * x * x + B * x + C == 0


def test_y_root_needs_nonnegative_f():
    with pytest.raises(NegativeRadicand):
        y_root(1, 3)
    y = y_root(1, 2)
    x = x_root(1, 2)
    A, B, C = (p(1, 2) for p in (polys.CA, polys.CB, polys.CC))
    for r in (x, y):
        assert A * r * r + B * r + C == 0
    assert surd_cmp(x, y) < 0


def test_isolate_r2():
    expected = {1: (2, 3), 2: (18, 19), 3: (45, 46), 4: (84, 85), 5: (135, 136), 6: (196, 197), 7: (268, 269)}
    for ell, bracket in expected.items():
        assert isolate_r2(ell) == bracket
        t, t1 = bracket
        assert f_eval(ell, t) >= 0 > f_eval(ell, t1)
    assert isolate_r2(0) is None
    for ell in range(1, 21):
        assert f_eval(ell, ell + 1) > 0


def test_gap_values():
    assert gap_values(1, 2) == (F(1), F(4, 15))
    assert gap_values(1, 3) == (F(3, 5), F(9, 80))
    for ell in range(1, 6):
        for m in range(ell + 1, ell + 10):
            assert gap_values(ell, m)[0] == chen_gu_upper(ell, m) - chen_gu_lower(ell, m)


def test_gap_d2_approaches_inverse_square():
    vals = [m * m * gap_values(1, m)[1] for m in (10, 100, 1000)]
    assert abs(1 - vals[2]) < abs(1 - vals[1]) < abs(1 - vals[0])
    assert abs(1 - vals[1]) < F(1, 10)


def test_check_inequality_examples(table):
    r = check_inequality("UB_TRANSPOSED", 1, 2, table)
    assert (r.lhs, r.rhs, r.holds) == (F(225, 172), F(4, 3), True)
    r = check_inequality("LB_TRANSPOSED", 1, 2, table)
    assert (r.lhs, r.rhs, r.holds) == (F(225, 172), F(16, 15), True)
    r = check_inequality("W_LOWER", 1, 2, table)
    assert r.lhs == F(2, 5) and r.rhs == W_value(1, 2) and r.holds
    assert r.margin == F(2, 5) - W_value(1, 2)
    assert r.margin_sign == 1


def test_check_inequality_domains(table):
    with pytest.raises(DomainError):
        check_inequality("UB_TRANSPOSED", 0, 3, table)
    with pytest.raises(DomainError):
        check_inequality("COR_M2", 1, 3, table)
    with pytest.raises(DomainError):
        check_inequality("UB_TRANSPOSED", 1, 2, None)
    with pytest.raises(DomainError):
        check_inequality("UB_TRANSPOSED", 1, 5, build_table(5))
    assert check_inequality("INEQ_110", 2, 3).holds


def test_check_records_detect_a_corrupted_table():
    t = build_table(8)
    bad = t.with_entry(3, 6, t.N(3, 6) * 3)
    r = check_inequality("CHEN_GU_UB", 3, 6, bad)
    assert not r.holds and r.margin_sign == -1


def test_bracket(table):
    r = check_bracket(1, 2, table)
    assert r.holds and r.lhs == F(2, 5) and r.extra == F(1, 2)
    with pytest.raises(DomainError):
        check_bracket(0, 2, table)


def test_sweep_small_all_specs(table):
    for sid in BOUND_SPECS:
        rep = sweep(sid, 40, table)
        assert rep.ok, sid
        assert rep.examined > 0
        assert rep.min_margin.holds


def test_sweep_counts(table):
    assert sweep("UB_TRANSPOSED", 30, table).examined == 29 * 30 // 2
    assert sweep("LB_TRANSPOSED", 30, table).examined == 30 * 31 // 2
    assert sweep("COR_M2", 30, table).examined == 28 * 29 // 2


def test_sweep_empty_domain(table):
    with pytest.raises(DomainError):
        sweep("UB_TRANSPOSED", 1, table)
    with pytest.raises(KeyError):
        sweep("NOPE", 10, table)
    with pytest.raises(DomainError):
        sweep("U_LOWER", 201, table)


def test_sweep_is_independent_of_jobs(table):
    a = sweep("W_LOWER", 30, table, keep_records=True)
    b = sweep("W_LOWER", 30, table, jobs=2, keep_records=True)
    assert a.records == b.records
    assert a.min_margin == b.min_margin
    assert [(r.ell, r.m) for r in a.records] == sorted((r.ell, r.m) for r in a.records)


def test_sweep_reports_injected_violation():
    t = build_table(21)
    bad = t.with_entry(5, 12, t.N(5, 12) * 2)
    rep = sweep("CHEN_XIA_UB", 20, bad)
    assert not rep.ok
    assert (rep.violations[0].ell, rep.violations[0].m) in {(4, 12), (5, 12)}


def test_ub_sweep_agrees_with_extended_reverse_ultra(table):
    rep = sweep("UB_TRANSPOSED", 60, table, keep_records=True)
    for ell in range(1, 59):
        col = Seq.of(table.column(ell, 61), ell)
        ok = all(r.holds for r in rep.records if r.ell == ell)
        assert ok == bool(extended_ultra(col, ell, "reverse"))


def test_diagonal_ratio(table):
    for m in range(0, 200):
        assert table.d(m + 1, m + 1) / table.d(m, m + 1) == F(2, 2 * m + 3)


@settings(max_examples=30, deadline=None)
@given(transposed)
def test_W_formula_matches_sympy(pt):
    ell, m = pt
    expr = (m * (2 * m + 1) * (2 * ell + 3) - sympy.sqrt(delta1(ell, m))) / (4 * m * (ell * ell + ell))
    w = W_value(ell, m)
    assert sympy.simplify(expr - (sympy.Rational(w.a.numerator, w.a.denominator)
                                   + sympy.Rational(w.b.numerator, w.b.denominator) * sympy.sqrt(w.D))) == 0
