from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bmseq.conjectures import (
    DISCLAIMER,
    bessel_row,
    check_conj_C42,
    check_conj_C42_C43,
    check_conj_C43,
    check_half_split,
    check_inf_logconcave,
    check_log_monotonic_conj,
    check_row_inf_logconcave,
    r_ratio,
    ratio_seq,
    run_conjecture,
)
from bmseq.core import DomainError
from bmseq.logprops import LengthError, Seq, op_L

F = Fraction

R9 = {
    2: F(60275815334620606439322, 78173355142115765635889),
    3: F(122118613523526671413768, 133528261319822227027923),
    4: F(135495563425805832093, 139776208550739676384),
    5: F(2512968603767684, 2503881674347833),
    6: F(3844942434909, 3698150303624),
    7: F(2672864807424, 2420889681239),
    8: F(3879265207, 2951578112),
}


def test_inf_logconcave_l2_depth5_fails(table):
    rep = check_inf_logconcave(2, 5, 120, table)
    assert not rep.holds
    assert all(c.holds for c in rep.checks[:4])
    depth, idx, val = rep.checks[4].witness
    assert depth == 5 and val < 0
    lo, hi = rep.checks[4].window
    assert lo <= idx <= hi


def test_inf_logconcave_l3_depth4_holds(table):
    rep = check_inf_logconcave(3, 4, 120, table)
    assert rep.holds
    assert rep.verified_window == (3, 116)
    assert rep.disclaimer == DISCLAIMER


def test_inf_logconcave_l0_fails_immediately(table):
    rep = check_inf_logconcave(0, 1, 10, table)
    assert not rep.holds
    assert rep.checks[0].witness[:2] == (1, 1)
    assert any("outside the conjectured range" in a for a in rep.assumptions)


def test_inf_logconcave_window_precondition(table):
    with pytest.raises(LengthError):
        check_inf_logconcave(3, 4, 8, table)
    with pytest.raises(DomainError):
        check_inf_logconcave(3, 0, 20, table)


@settings(max_examples=20, deadline=None)
@given(ell=st.integers(0, 8), depth=st.integers(1, 5), extra=st.integers(0, 30))
def test_reports_never_claim_truncated_indices(table, ell, depth, extra):
    m_max = ell + depth + 2 + extra
    rep = check_inf_logconcave(ell, depth, m_max, table)
    for j, c in enumerate(rep.checks, start=1):
        lo, hi = c.window
        assert lo == ell and hi == m_max - j
    assert rep.verified_window[1] <= m_max - depth


def test_row_checks(table):
    for m in range(2, 61):
        assert check_row_inf_logconcave(m, 2, table).holds
        assert check_row_inf_logconcave(m, 3, table).holds
    rep = check_row_inf_logconcave(10, 2, table)
    assert rep.verified_window == (0, 10)
    with pytest.raises(DomainError):
        check_row_inf_logconcave(1, 2, table)


def test_row_checks_use_zero_boundaries(table):
    row = Seq.of(table.row(4))
    rep = check_row_inf_logconcave(4, 1, table)
    assert rep.checks[0].window == (0, 4)
    assert op_L(row, True, True)[4] == row[4] ** 2


def test_ratio_seq(table):
    q1 = ratio_seq(1, 10, table)
    assert q1.offset == 2 and q1.last == 9
    assert q1[2] == F(172, 225) < 1
    q0 = ratio_seq(0, 10, table)
    assert q0[1] == F(7, 6) > 1
    with pytest.raises(DomainError):
        ratio_seq(3, 4, table)


def test_c42_c43(table):
    assert check_conj_C42(1, 100, table).holds
    assert check_conj_C43(0, 100, table).holds
    with pytest.raises(DomainError):
        check_conj_C42(0, 100, table)
    both = check_conj_C42_C43(2, 60, table)
    assert [r.conjecture for r in both] == ["C42", "C43"]
    assert [r.conjecture for r in check_conj_C42_C43(0, 60, table)] == ["C43"]
    rep = check_conj_C43(3, 40, table)
    assert rep.params["k"] == 4
    assert any("k = l + 1" in a for a in rep.assumptions)


def test_r_ratio_table():
    for ell, r in R9.items():
        assert r_ratio(ell, 9) == r
    assert r_ratio(2, 3) > 1
    with pytest.raises(DomainError):
        r_ratio(1, 9)
    with pytest.raises(DomainError):
        r_ratio(9, 9)


def test_r_ratio_scale_free(table):
    for m in range(3, 40):
        for ell in range(2, m):
            assert r_ratio(ell, m, table) == r_ratio(ell, m)


def test_half_split_row_9(table):
    rep = check_half_split(9, table, keep_values=True)
    assert rep.holds
    assert rep.values == R9
    assert [r < 1 for r in rep.values.values()] == [True, True, True, False, False, False, False]


def test_half_split_row_3(table):
    rep = check_half_split(3, table)
    assert rep.holds
    assert len(rep.checks) == 1 and rep.checks[0].window == (2, 2)
    with pytest.raises(DomainError):
        check_half_split(2, table)


def test_half_split_detects_fault(table):
    bad = table.with_entry(4, 9, table.N(4, 9) * 2)
    assert not check_half_split(9, bad).holds


def test_log_monotonic(table):
    assert check_log_monotonic_conj(0, 2, 60, table).holds
    rep = check_log_monotonic_conj(0, 4, 120, table)
    assert [c.window for c in rep.checks] == [(1, 119), (1, 118), (1, 117), (1, 116)]
    rep = check_log_monotonic_conj(1, 3, 120, table)
    assert rep.holds
    assert rep.checks[0].name.startswith("R^0 log-convex")


def test_bessel_rows():
    assert bessel_row(0).values == (1,)
    assert bessel_row(2).values == (1, 3, 3)
    assert bessel_row(3).values == (1, 6, 15, 15)


def test_run_conjecture_ordering_and_jobs(table):
    serial = run_conjecture("c42", 50, (1, 4), table=table)
    assert [r.params["l"] for r in serial] == [1, 2, 3, 4]
    pooled = run_conjecture("c42", 50, (1, 4), table=table, jobs=2)
    assert [r.holds for r in pooled] == [r.holds for r in serial]
    assert [r.verified_window for r in pooled] == [r.verified_window for r in serial]
    with pytest.raises(DomainError):
        run_conjecture("c99", 50, table=table)
    with pytest.raises(DomainError):
        run_conjecture("c44", 50, rows=(2, 5), table=table)
