from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bmseq.core import (
    BMTable,
    CacheFormatError,
    DomainError,
    build_table,
    column_via_m_recurrence,
    cross_validate,
    d_closed_form,
    d_jacobi,
    d_via_ell_recurrence,
    d_via_m_recurrence,
    diagonal,
    extend_table,
    generalized_binomial,
    p_double_sum,
    p_single_sum,
    read_table,
    row_via_ell_recurrence,
    write_table,
)
from bmseq.logprops import Seq, is_log_concave, is_unimodal

F = Fraction


def test_generalized_binomial_small():
    assert generalized_binomial(F(-1, 2), 0) == 1
    assert generalized_binomial(F(-1, 2), 1) == F(-1, 2)
    assert generalized_binomial(F(-1, 2), 2) == F(3, 8)


@given(st.integers(0, 30), st.integers(0, 30))
def test_generalized_binomial_matches_comb_on_integers(r, n):
    assert generalized_binomial(r, n) == comb(r, n)


def test_closed_form_values():
    assert d_closed_form(0, 0) == 1
    assert d_closed_form(1, 2) == F(15, 4)
    assert d_closed_form(2, 2) == F(3, 2)
    assert d_closed_form(2, 2) / d_closed_form(1, 2) == F(2, 5)
    assert d_closed_form(1, 3) == F(43, 4)
    assert d_closed_form(0, 3) == F(77, 16)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        d_closed_form(3, 2)
    with pytest.raises(DomainError):
        d_closed_form(-1, 2)


def test_build_table_rows():
    t = build_table(3)
    assert t.rows[0] == (1,)
    assert t.rows[1] == (6, 4)
    assert t.rows[2] == (42, 60, 24)
    assert t.rows[3] == (308, 688, 560, 160)
    assert t.N(3, 3) == 160
    assert t.d(3, 3) == F(5, 2)
    assert t.row(2) == [F(21, 8), F(15, 4), F(3, 2)]


def test_build_table_rejects_negative():
    with pytest.raises(DomainError):
        build_table(-1)


def test_table_coverage_errors():
    t = build_table(4)
    with pytest.raises(DomainError):
        t.d(0, 5)
    with pytest.raises(DomainError):
        t.column(2, 4, m_lo=1)
    assert t.column(1, 3) == [1, F(15, 4), F(43, 4)]


def test_table_shape_validated():
    with pytest.raises(ValueError):
        BMTable(1, ((1,), (6,)))


def test_extend_table_matches_direct_build():
    assert extend_table(build_table(10), 25) == build_table(25)
    t = build_table(10)
    assert extend_table(t, 5) is t


def test_diagonal_closed_form(table):
    for m in range(0, 201):
        assert table.N(m, m) == 2**m * comb(2 * m, m)
        assert table.d(m, m) == diagonal(m)


def test_m_recurrence_examples():
    assert d_via_m_recurrence(1, 3, (F(1), F(15, 4))) == F(43, 4)
    assert d_via_m_recurrence(0, 2, (F(1), F(3, 2))) == F(21, 8)
    with pytest.raises(DomainError):
        d_via_m_recurrence(3, 2)


def test_m_recurrence_agrees_with_table_to_50(table):
    for ell in range(51):
        assert column_via_m_recurrence(ell, 50) == table.column(ell, 50)


def test_ell_recurrence_examples():
    assert d_via_ell_recurrence(F(3, 2), F(15, 4), 2, 2) == F(21, 8)
    assert d_via_ell_recurrence(F(5, 2), F(35, 4), 3, 3) == F(43, 4)
    assert d_via_ell_recurrence(F(35, 4), F(43, 4), 2, 3) == F(77, 16)
    with pytest.raises(DomainError):
        d_via_ell_recurrence(F(1), F(1), 1, 3)


def test_row_via_ell_recurrence(table):
    for m in range(40):
        assert row_via_ell_recurrence(m) == table.row(m)


def test_double_sum_small_rows():
    assert p_double_sum(0) == [1]
    assert p_double_sum(1) == [F(3, 2), 1]
    assert p_double_sum(2) == [F(21, 8), F(15, 4), F(3, 2)]


def test_single_and_double_sum_agree():
    for m in range(15):
        assert p_single_sum(m) == p_double_sum(m)


def test_jacobi_examples():
    assert d_jacobi(0, 1) == F(3, 2)
    assert d_jacobi(1, 1) == 1
    assert d_jacobi(0, 0) == 1
    with pytest.raises(DomainError):
        d_jacobi(2, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 60).flatmap(lambda m: st.tuples(st.integers(0, m), st.just(m))))
def test_jacobi_equals_closed_form(point):
    ell, m = point
    assert d_jacobi(ell, m) == d_closed_form(ell, m)


def test_cross_validate_small():
    rep = cross_validate(20)
    assert rep.ok
    assert rep.first_mismatch is None
    assert rep.compared["jacobi"] == 21 * 22 // 2
    assert rep.compared["double_sum"] == 21 * 22 // 2


def test_cross_validate_locates_injected_fault():
    t = build_table(12)
    bad = t.with_entry(4, 9, t.N(4, 9) + 1)
    rep = cross_validate(12, 5, table=bad)
    assert not rep.ok
    mm = rep.first_mismatch
    assert (mm.method, mm.ell, mm.m) == ("row_recurrence", 4, 9)
    assert mm.got - mm.expected == F(1, 4**9)
    assert len(rep.mismatches) == 1


def test_cross_validate_cap_check():
    with pytest.raises(DomainError):
        cross_validate(5, 6)


def test_rows_positive_unimodal_log_concave(table):
    for m in range(0, 201):
        row = Seq.of(table.row(m))
        assert all(v > 0 for v in row.values)
        assert is_unimodal(row)
        if m >= 2:
            assert is_log_concave(row, strict=True)
        # peak within distance 1 of m/2
        peak = max(range(m + 1), key=lambda i: row[i])
        assert abs(peak - m / 2) <= 1


@given(st.integers(0, 60))
def test_entries_are_integral_and_match_closed_form(m):
    t = build_table(m)
    for ell in range(m + 1):
        assert t.d(ell, m) == d_closed_form(ell, m)


def test_cache_round_trip(tmp_path):
    t = build_table(60)
    p = tmp_path / "t.bmt"
    write_table(t, p)
    assert p.read_text().splitlines()[0] == "BMTABLE v1 max_m=60"
    assert p.read_text().splitlines()[4] == "2 0 42"
    assert read_table(p) == t


def test_cache_bad_header(tmp_path):
    p = tmp_path / "bad.bmt"
    p.write_text("BMTABLE v2 max_m=1\n0 0 1\n1 0 6\n1 1 4\n")
    with pytest.raises(CacheFormatError):
        read_table(p)


def test_cache_truncated_or_misordered(tmp_path):
    p = tmp_path / "short.bmt"
    p.write_text("BMTABLE v1 max_m=1\n0 0 1\n1 0 6\n")
    with pytest.raises(CacheFormatError):
        read_table(p)
    p.write_text("BMTABLE v1 max_m=1\n0 0 1\n1 1 4\n1 0 6\n")
    with pytest.raises(CacheFormatError):
        read_table(p)
