"""Closed-form bounds on ratios of d_l(m) and exact sweeps over them.

Radical-bearing bounds are ``QuadraticSurd`` values and are compared by
exact sign analysis. The polynomials behind them come from ``polys``.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from bmseq import polys
from bmseq.core import BMTable, DomainError
from bmseq.surd import QuadraticSurd, compare

__all__ = [
    "BOUND_SPECS",
    "BoundSpec",
    "CheckRecord",
    "NegativeRadicand",
    "SweepReport",
    "W_value",
    "check_bracket",
    "check_inequality",
    "delta1",
    "f_eval",
    "gap_d1",
    "gap_d2",
    "gap_values",
    "isolate_r2",
    "lambda_and_U",
    "quad_roots",
    "sweep",
    "x_root",
    "y_root",
]

R2_SCAN_CAP = 10**6


class NegativeRadicand(DomainError):
    pass


def _transposed_domain(ell: int, m: int) -> None:
    if ell < 1 or m < ell + 1:
        raise DomainError(f"need l >= 1 and m >= l + 1, got l={ell}, m={m}")


# --------------------------------------------------------------------------
# closed forms


def delta1(ell: int, m: int) -> int:
    _transposed_domain(ell, m)
    return polys.DELTA1(ell, m)


def W_value(ell: int, m: int) -> QuadraticSurd:
    """(m(2m+1)(2l+3) - sqrt(Delta1)) / (4m(l^2+l))."""
    return quad_roots(ell, m)[0]


def quad_roots(ell: int, m: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Both roots (x1 < x2) of A x^2 + B x + C, x = d_{l+1}(m)/d_l(m)."""
    D = delta1(ell, m)
    den = 4 * m * (ell * ell + ell)
    a = Fraction(m * (2 * m + 1) * (2 * ell + 3), den)
    b = Fraction(1, den)
    return QuadraticSurd(a, -b, D), QuadraticSurd(a, b, D)


def f_eval(ell: int, m: int) -> int:
    return polys.FELL(ell, m)


def lambda_and_U(ell: int, m: int) -> tuple[int, QuadraticSurd]:
    _transposed_domain(ell, m)
    lam = polys.LAMBDA(ell, m)
    q = m + ell * ell
    den = 2 * (m + 1) * (m - ell + 1) * q
    a = Fraction((4 * m * m + 7 * m - 2 * ell * ell + 3) * q, den)
    return lam, QuadraticSurd(a, Fraction(ell, den), lam)


def _lower_quadratic_roots(ell: int, m: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    if m < 1 or m + 1 - ell <= 0:
        raise DomainError(f"need m >= 1 and m >= l, got l={ell}, m={m}")
    f = f_eval(ell, m)
    if f < 0:
        raise NegativeRadicand(f"f_{ell}({m}) = {f} < 0, no real roots")
    den = 4 * m * m * (m + 1) * (m + 1 - ell)
    a = Fraction(m * m * (8 * m * m + 8 * m - 4 * ell * ell + 3), den)
    b = Fraction(1, den)
    return QuadraticSurd(a, -b, f), QuadraticSurd(a, b, f)


def x_root(ell: int, m: int) -> QuadraticSurd:
    return _lower_quadratic_roots(ell, m)[0]


def y_root(ell: int, m: int) -> QuadraticSurd:
    """Larger root of the quadratic in d_l(m+1)/d_l(m); needs f_l(m) >= 0."""
    return _lower_quadratic_roots(ell, m)[1]


def isolate_r2(ell: int) -> tuple[int, int] | None:
    """Integers (t, t+1) with f_l(t) >= 0 > f_l(t+1), scanning up from l+1.

    Returns None for l = 0, where f_0 is negative on m >= 1.
    """
    if ell < 0:
        raise DomainError(f"l must be nonnegative, got {ell}")
    if ell == 0:
        return None
    t = ell + 1
    if f_eval(ell, t) < 0:
        raise AssertionError(f"f_{ell}({t}) < 0: scan start invalid")
    while f_eval(ell, t + 1) >= 0:
        t += 1
        if t > R2_SCAN_CAP:
            raise AssertionError(f"no sign change of f_{ell} below {R2_SCAN_CAP}")
    return t, t + 1


def ub_transposed_bound(ell: int, m: int) -> Fraction:
    return Fraction((m - ell + 1) * m, (m - ell) * (m + 1))


def lb_transposed_bound(ell: int, m: int) -> Fraction:
    return Fraction((m - ell + 1) * m**3, (m - ell) * (m + 1) * (m * m + 1))


def chen_gu_upper(ell: int, m: int) -> Fraction:
    return Fraction((m - ell + 1) * (ell + 1), (m - ell) * ell)


def chen_gu_lower(ell: int, m: int) -> Fraction:
    return Fraction((m - ell + 1) * (ell + 1) * (m + ell), (m - ell) * ell * (m + ell + 1))


def gap_d1(ell: int, m: int) -> Fraction:
    """Distance between the two row bounds (upper minus lower)."""
    if m < 2 or not 1 <= ell <= m - 1:
        raise DomainError(f"need m >= 2 and 1 <= l <= m-1, got l={ell}, m={m}")
    return Fraction((m - ell + 1) * (ell + 1), (m - ell) * ell * (m + ell + 1))


def gap_d2(ell: int, m: int) -> Fraction:
    """Distance between the two column bounds (upper minus lower)."""
    _transposed_domain(ell, m)
    return Fraction((m - ell + 1) * m, (m - ell) * (m + 1) * (m * m + 1))


def gap_values(ell: int, m: int) -> tuple[Fraction, Fraction]:
    return gap_d1(ell, m), gap_d2(ell, m)


# --------------------------------------------------------------------------
# inequality registry


@dataclass(frozen=True)
class CheckRecord:
    spec_id: str
    ell: int
    m: int
    lhs: Fraction | QuadraticSurd
    rhs: Fraction | QuadraticSurd
    holds: bool
    margin_sign: int
    margin: Fraction | QuadraticSurd = field(repr=False, compare=False)
    extra: Fraction | None = None


@dataclass(frozen=True)
class BoundSpec:
    """One strict inequality lhs <relation> rhs over a domain of (l, m).

    ``ell_range(m)`` enumerates the admissible l for a given m, ``min_m`` is
    the smallest m with a nonempty range, and ``rows_ahead`` says how far
    past m the table must reach.
    """

    id: str
    statement: str
    relation: str
    min_m: int
    ell_range: Callable[[int], range]
    evaluate: Callable[[int, int, BMTable | None], tuple]
    rows_ahead: int = 1
    needs_table: bool = True

    def in_domain(self, ell: int, m: int) -> bool:
        return m >= self.min_m and ell in self.ell_range(m)

    def points(self, max_m: int) -> Iterator[tuple[int, int]]:
        """(l, m) pairs ordered by l, then m."""
        pts = [(ell, m) for m in range(self.min_m, max_m + 1) for ell in self.ell_range(m)]
        return iter(sorted(pts))


def _col_ratio(t: BMTable, ell: int, m: int) -> Fraction:
    return t.d(ell, m) ** 2 / (t.d(ell, m - 1) * t.d(ell, m + 1))


def _row_ratio(t: BMTable, ell: int, m: int) -> Fraction:
    return t.d(ell, m) ** 2 / (t.d(ell - 1, m) * t.d(ell + 1, m))


def _chain(ell, m, t):
    top = t.d(ell, m) ** 2
    mid = t.d(ell, m - 1) * t.d(ell, m + 1)
    low = t.d(ell - 1, m) * t.d(ell + 1, m)
    return top, mid, low


def _upto(lo_fn, hi_fn):
    return lambda m: range(lo_fn(m), hi_fn(m) + 1)


_TRANSPOSED = _upto(lambda m: 1, lambda m: m - 1)  # l >= 1, m >= l + 1
_TRANSPOSED_FROM_0 = _upto(lambda m: 0, lambda m: m - 1)
_FROM_2 = _upto(lambda m: 2, lambda m: m - 1)

BOUND_SPECS: dict[str, BoundSpec] = {
    s.id: s
    for s in [
        BoundSpec(
            "UB_TRANSPOSED",
            "d_l(m)^2 / (d_l(m-1) d_l(m+1)) < (m-l+1)m / ((m-l)(m+1)),  l >= 1, m >= l+1",
            "<", 2, _TRANSPOSED,
            lambda ell, m, t: (_col_ratio(t, ell, m), ub_transposed_bound(ell, m)),
        ),
        BoundSpec(
            "LB_TRANSPOSED",
            "d_l(m)^2 / (d_l(m-1) d_l(m+1)) > (m-l+1)m^3 / ((m-l)(m+1)(m^2+1)),  l >= 0, m >= l+1",
            ">", 1, _TRANSPOSED_FROM_0,
            lambda ell, m, t: (_col_ratio(t, ell, m), lb_transposed_bound(ell, m)),
        ),
        BoundSpec(
            "COR_M2",
            "d_l(m)^2 / (d_l(m-1) d_l(m+1)) > (m^2+1)/m^2,  l >= 2, m >= l+1",
            ">", 3, _FROM_2,
            lambda ell, m, t: (_col_ratio(t, ell, m), Fraction(m * m + 1, m * m)),
        ),
        BoundSpec(
            "PROP_CHAIN",
            "d_l(m)^2 > d_l(m-1) d_l(m+1) > d_{l-1}(m) d_{l+1}(m),  l >= 1, m >= l+1",
            "chain", 2, _TRANSPOSED, _chain,
        ),
        BoundSpec(
            "W_LOWER",
            "d_{l+1}(m)/d_l(m) > W(l, m),  l >= 1, m >= l+1",
            ">", 2, _TRANSPOSED,
            lambda ell, m, t: (t.d(ell + 1, m) / t.d(ell, m), W_value(ell, m)),
            rows_ahead=0,
        ),
        BoundSpec(
            "CHEN_XIA_UB",
            "d_{l+1}(m)/d_l(m) < (m-l)/(l+1),  l >= 1, m >= l+1",
            "<", 2, _TRANSPOSED,
            lambda ell, m, t: (t.d(ell + 1, m) / t.d(ell, m), Fraction(m - ell, ell + 1)),
            rows_ahead=0,
        ),
        BoundSpec(
            "CHEN_GU_UB",
            "d_l(m)^2 / (d_{l-1}(m) d_{l+1}(m)) < (m-l+1)(l+1) / ((m-l)l),  m >= 2, 1 <= l <= m-1",
            "<", 2, _TRANSPOSED,
            lambda ell, m, t: (_row_ratio(t, ell, m), chen_gu_upper(ell, m)),
            rows_ahead=0,
        ),
        BoundSpec(
            "CHEN_GU_LB",
            "d_l(m)^2 / (d_{l-1}(m) d_{l+1}(m)) > (m-l+1)(l+1)(m+l) / ((m-l)l(m+l+1)),  m >= 2, 1 <= l <= m-1",
            ">", 2, _TRANSPOSED,
            lambda ell, m, t: (_row_ratio(t, ell, m), chen_gu_lower(ell, m)),
            rows_ahead=0,
        ),
        BoundSpec(
            "U_LOWER",
            "d_l(m+1)/d_l(m) > U(l, m),  m >= 2, 1 <= l <= m-1",
            ">", 2, _TRANSPOSED,
            lambda ell, m, t: (t.d(ell, m + 1) / t.d(ell, m), lambda_and_U(ell, m)[1]),
        ),
        BoundSpec(
            "INEQ_110",
            "(m-l+1)m^3 / ((m-l)(m+1)(m^2+1)) > (m^2+1)/m^2,  l >= 2, m >= l+1",
            ">", 3, _FROM_2,
            lambda ell, m, t: (lb_transposed_bound(ell, m), Fraction(m * m + 1, m * m)),
            rows_ahead=0,
            needs_table=False,
        ),
    ]
}


def _sign(x) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def check_inequality(spec: BoundSpec | str, ell: int, m: int, table: BMTable | None = None) -> CheckRecord:
    if isinstance(spec, str):
        spec = BOUND_SPECS[spec]
    if not spec.in_domain(ell, m):
        raise DomainError(f"{spec.id}: (l={ell}, m={m}) is outside the domain")
    if spec.needs_table:
        if table is None:
            raise DomainError(f"{spec.id} needs a table")
        table.require(m + spec.rows_ahead)
    vals = spec.evaluate(ell, m, table)
    extra = None
    if spec.relation == "chain":
        lhs, rhs, extra = vals
        m1, m2 = lhs - rhs, rhs - extra
        margin = m1 if m1 <= m2 else m2
    else:
        lhs, rhs = vals
        margin = lhs - rhs if spec.relation == ">" else rhs - lhs
    s = _sign(margin)
    return CheckRecord(spec.id, ell, m, lhs, rhs, s > 0, s, margin, extra)


def check_bracket(ell: int, m: int, table: BMTable) -> CheckRecord:
    """x1 < d_{l+1}(m)/d_l(m) < (m-l)/(l+1) < x2, every comparison exact.

    ``margin`` is the smallest of the three gaps.
    """
    _transposed_domain(ell, m)
    table.require(m)
    x1, x2 = quad_roots(ell, m)
    r = table.d(ell + 1, m) / table.d(ell, m)
    cx = Fraction(m - ell, ell + 1)
    gaps = [r - x1, cx - r, x2 - cx]
    margin = gaps[0]
    for g in gaps[1:]:
        if compare(g, margin) < 0:
            margin = g
    s = _sign(margin)
    return CheckRecord("BRACKET", ell, m, r, x1, s > 0, s, margin, cx)


# --------------------------------------------------------------------------
# sweeps


@dataclass
class SweepReport:
    spec_id: str
    max_m: int
    examined: int
    violations: list[CheckRecord]
    min_margin: CheckRecord | None
    records: list[CheckRecord] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations


_WORKER_TABLE: BMTable | None = None


def _init_worker(table):
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _run_points(spec_id: str, points: list[tuple[int, int]]) -> list[CheckRecord]:
    t = _WORKER_TABLE
    if spec_id == "BRACKET":
        return [check_bracket(ell, m, t) for ell, m in points]
    spec = BOUND_SPECS[spec_id]
    return [check_inequality(spec, ell, m, t) for ell, m in points]


def _points(spec_id: str, max_m: int) -> list[tuple[int, int]]:
    if spec_id == "BRACKET":
        return sorted((ell, m) for m in range(2, max_m + 1) for ell in range(1, m))
    return list(BOUND_SPECS[spec_id].points(max_m))


def sweep(
    spec: BoundSpec | str,
    max_m: int,
    table: BMTable | None = None,
    jobs: int = 1,
    keep_records: bool = False,
) -> SweepReport:
    """Check every domain point with m <= max_m; results ordered by (l, m).

    Points are split into ``jobs`` contiguous chunks; with ``jobs > 1`` the
    chunks run in forked worker processes. The report is the same either way.
    """
    spec_id = spec if isinstance(spec, str) else spec.id
    if spec_id != "BRACKET" and spec_id not in BOUND_SPECS:
        raise KeyError(f"unknown bound spec {spec_id!r}")
    pts = _points(spec_id, max_m)
    if not pts:
        raise DomainError(f"{spec_id}: no domain points with m <= {max_m}")
    needs = spec_id == "BRACKET" or BOUND_SPECS[spec_id].needs_table
    if needs:
        if table is None:
            raise DomainError(f"{spec_id} needs a table")
        ahead = 0 if spec_id == "BRACKET" else BOUND_SPECS[spec_id].rows_ahead
        table.require(max_m + ahead)

    if jobs <= 1 or len(pts) < 2 * jobs:
        _init_worker(table)
        try:
            records = _run_points(spec_id, pts)
        finally:
            _init_worker(None)
    else:
        size = -(-len(pts) // jobs)
        chunks = [pts[i : i + size] for i in range(0, len(pts), size)]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(jobs, mp_context=ctx, initializer=_init_worker, initargs=(table,)) as ex:
            parts = list(ex.map(_run_points, [spec_id] * len(chunks), chunks))
        records = [r for part in parts for r in part]

    violations = [r for r in records if not r.holds]
    best = None
    for r in records:
        if best is None or compare(r.margin, best.margin) < 0:
            best = r
    return SweepReport(spec_id, max_m, len(records), violations, best, records if keep_records else [])
