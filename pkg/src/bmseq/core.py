"""Exact computation of the Boros-Moll triangle d_l(m).

Values are ``fractions.Fraction``. The triangle itself is stored as the
normalized integers N_l(m) = 4**m * d_l(m), which are integral for every
entry, so building it never needs a gcd.

Five routes to the same numbers live here:

* ``d_closed_form``      single sum over k
* ``build_table``        row recurrence in (l, m), integer only
* ``d_via_m_recurrence`` three-term recurrence along a column
* ``d_via_ell_recurrence`` downward recurrence inside a row
* ``d_jacobi``           Jacobi form with alpha = m + 1/2, beta = -alpha
* ``p_double_sum``       original double sum, expanded as a polynomial

``cross_validate`` runs them against each other.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "BMTable",
    "CacheFormatError",
    "CrossValidationReport",
    "DomainError",
    "Mismatch",
    "build_table",
    "column_via_m_recurrence",
    "cross_validate",
    "d_closed_form",
    "d_jacobi",
    "d_via_ell_recurrence",
    "d_via_m_recurrence",
    "diagonal",
    "generalized_binomial",
    "p_double_sum",
    "read_table",
    "row_via_ell_recurrence",
    "write_table",
]

CACHE_HEADER = "BMTABLE v1"


class DomainError(ValueError):
    """An index pair outside the domain of the requested quantity."""


class CacheFormatError(ValueError):
    pass


def generalized_binomial(r, n: int) -> Fraction:
    """r(r-1)...(r-n+1)/n! for rational ``r`` and integer ``n >= 0``."""
    if n < 0:
        raise DomainError(f"lower argument must be nonnegative, got {n}")
    r = Fraction(r)
    out = Fraction(1)
    for i in range(n):
        out *= r - i
    # dividing once keeps the intermediate denominators small
    return out / _factorial(n)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _check_lm(ell: int, m: int) -> None:
    if ell < 0 or m < 0 or ell > m:
        raise DomainError(f"need 0 <= l <= m, got l={ell}, m={m}")


def _normalized_closed_form(ell: int, m: int) -> int:
    return sum(
        (1 << k) * comb(2 * m - 2 * k, m - k) * comb(m + k, k) * comb(k, ell)
        for k in range(ell, m + 1)
    )


def d_closed_form(ell: int, m: int) -> Fraction:
    _check_lm(ell, m)
    return Fraction(_normalized_closed_form(ell, m), 4**m)


def diagonal(m: int) -> Fraction:
    """d_m(m) = binom(2m, m) / 2**m."""
    return Fraction(comb(2 * m, m), 2**m)


# --------------------------------------------------------------------------
# the triangle


@dataclass(frozen=True)
class BMTable:
    """Rows 0..max_m of N_l(m) = 4**m d_l(m).

    ``rows[m][l]`` is N_l(m). Instances are never mutated after
    construction.
    """

    max_m: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.max_m + 1:
            raise ValueError(f"expected {self.max_m + 1} rows, got {len(self.rows)}")
        for m, row in enumerate(self.rows):
            if len(row) != m + 1:
                raise ValueError(f"row {m} has {len(row)} entries, expected {m + 1}")

    def covers(self, m: int) -> bool:
        return 0 <= m <= self.max_m

    def require(self, m: int) -> None:
        if not self.covers(m):
            raise DomainError(f"table covers m <= {self.max_m}, need m = {m}")

    def N(self, ell: int, m: int) -> int:
        self.require(m)
        _check_lm(ell, m)
        return self.rows[m][ell]

    def d(self, ell: int, m: int) -> Fraction:
        return Fraction(self.N(ell, m), 4**m)

    def row(self, m: int) -> list[Fraction]:
        self.require(m)
        den = 4**m
        return [Fraction(n, den) for n in self.rows[m]]

    def column(self, ell: int, m_hi: int, m_lo: int | None = None) -> list[Fraction]:
        """d_l(m) for m_lo <= m <= m_hi (m_lo defaults to l)."""
        m_lo = ell if m_lo is None else m_lo
        if m_lo < ell:
            raise DomainError(f"column of l={ell} starts at m={ell}, asked for {m_lo}")
        self.require(m_hi)
        return [Fraction(self.rows[m][ell], 4**m) for m in range(m_lo, m_hi + 1)]

    def entries(self) -> Iterable[tuple[int, int, int]]:
        for m, row in enumerate(self.rows):
            for ell, n in enumerate(row):
                yield m, ell, n

    def with_entry(self, ell: int, m: int, value: int) -> "BMTable":
        """Copy with one normalized entry replaced (fault injection)."""
        rows = list(self.rows)
        row = list(rows[m])
        row[ell] = value
        rows[m] = tuple(row)
        return BMTable(self.max_m, tuple(rows))


def _next_row(prev: Sequence[int], m: int) -> tuple[int, ...]:
    # N_l(m+1) = 2 [2(m+l) N_{l-1}(m) + (4m+2l+3) N_l(m)] / (m+1), N_{-1} = 0
    d = m + 1
    out = []
    below = 0
    for ell in range(m + 2):
        here = prev[ell] if ell <= m else 0
        num = 2 * (2 * (m + ell) * below + (4 * m + 2 * ell + 3) * here)
        q, r = divmod(num, d)
        assert r == 0, f"inexact division building N_{ell}({m + 1})"
        out.append(q)
        below = here
    return tuple(out)


def build_table(max_m: int) -> BMTable:
    if max_m < 0:
        raise DomainError(f"max_m must be nonnegative, got {max_m}")
    rows = [(1,)]
    for m in range(max_m):
        rows.append(_next_row(rows[-1], m))
    return BMTable(max_m, tuple(rows))


def extend_table(table: BMTable, max_m: int) -> BMTable:
    if max_m <= table.max_m:
        return table
    rows = list(table.rows)
    for m in range(table.max_m, max_m):
        rows.append(_next_row(rows[-1], m))
    return BMTable(max_m, tuple(rows))


# --------------------------------------------------------------------------
# recurrences


def column_via_m_recurrence(ell: int, m_max: int, seeds: tuple | None = None) -> list[Fraction]:
    """d_l(m) for l <= m <= m_max from the three-term recurrence in m.

    ``seeds`` are (d_l(l), d_l(l+1)); they default to closed-form values.
    """
    if ell < 0 or m_max < ell:
        raise DomainError(f"need 0 <= l <= m_max, got l={ell}, m_max={m_max}")
    if seeds is None:
        seeds = (d_closed_form(ell, ell), d_closed_form(ell, ell + 1))
    out = [Fraction(seeds[0]), Fraction(seeds[1])]
    for m in range(ell + 1, m_max):
        # 4(m^2+m)(m+1-l) d(m+1) = 2m(8m^2+8m-4l^2+3) d(m) - (16m^2-1)(m+l) d(m-1)
        rhs = 2 * m * (8 * m * m + 8 * m - 4 * ell * ell + 3) * out[-1] - (16 * m * m - 1) * (
            m + ell
        ) * out[-2]
        out.append(rhs / (4 * (m * m + m) * (m + 1 - ell)))
    return out[: m_max - ell + 1]


def d_via_m_recurrence(ell: int, m: int, seeds: tuple | None = None) -> Fraction:
    if m < ell:
        raise DomainError(f"m-recurrence needs m >= l, got l={ell}, m={m}")
    return column_via_m_recurrence(ell, m, seeds)[-1]


def d_via_ell_recurrence(d_ell, d_ell_minus_1, ell: int, m: int) -> Fraction:
    """d_{l-2}(m) from d_l(m) and d_{l-1}(m)."""
    if ell < 2 or ell > m:
        raise DomainError(f"l-recurrence needs 2 <= l <= m, got l={ell}, m={m}")
    num = (2 * m + 1) * (ell - 1) * Fraction(d_ell_minus_1) - ell * (ell - 1) * Fraction(d_ell)
    return num / ((m + 2 - ell) * (m + ell - 1))


def row_via_ell_recurrence(m: int, top: tuple | None = None) -> list[Fraction]:
    """Row m walked downward from (d_m(m), d_{m-1}(m))."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    if m == 0:
        return [Fraction(1)]
    if top is None:
        top = (diagonal(m), d_closed_form(m - 1, m))
    row = {m: Fraction(top[0]), m - 1: Fraction(top[1])}
    for ell in range(m, 1, -1):
        row[ell - 2] = d_via_ell_recurrence(row[ell], row[ell - 1], ell, m)
    return [row[i] for i in range(m + 1)]


# --------------------------------------------------------------------------
# polynomial forms


def _binomial_row(n: int, sign: int) -> list[int]:
    """Coefficients of (x + sign)^n, low degree first."""
    return [comb(n, i) * sign ** (n - i) for i in range(n + 1)]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(coeffs: list) -> list:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def p_double_sum(m: int) -> list[Fraction]:
    """Coefficients of P_m(x) from the double sum over (j, k).

    Every term is scaled by 8**m so the expansion stays in the integers.
    """
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    minus_rows = [_binomial_row(k, -1) for k in range(m + 1)]
    total = [0] * (m + 1)
    for j in range(m + 1):
        inner = [0] * (m - j + 1)
        for k in range(m - j + 1):
            c = comb(m - j, k) * comb(2 * k + 2 * j, k + j) * 8 ** (m - k - j)
            for i, v in enumerate(minus_rows[k]):
                inner[i] += c * v
        term = _poly_mul(_binomial_row(j, 1), inner)
        w = comb(2 * m + 1, 2 * j)
        for i, v in enumerate(term):
            total[i] += w * v
    den = 8**m
    return _trim([Fraction(c, den) for c in total])


def p_single_sum(m: int) -> list[Fraction]:
    """Coefficients of P_m(x) from the single sum in powers of (x + 1)."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    total = [0] * (m + 1)
    for k in range(m + 1):
        c = (1 << k) * comb(2 * m - 2 * k, m - k) * comb(m + k, k)
        for i, v in enumerate(_binomial_row(k, 1)):
            total[i] += c * v
    return _trim([Fraction(c, 4**m) for c in total])


@lru_cache(maxsize=None)
def _minus_half_binomials(n: int) -> tuple[Fraction, ...]:
    """genbinom(-1/2, j) for 0 <= j <= n, by the ratio (r - j)/(j + 1)."""
    out = [Fraction(1)]
    r = Fraction(-1, 2)
    for j in range(n):
        out.append(out[-1] * (r - j) / (j + 1))
    return tuple(out)


def d_jacobi(ell: int, m: int) -> Fraction:
    # alpha + beta = 0 turns the second binomial into binom(m+k, k);
    # m + beta = -1/2
    _check_lm(ell, m)
    gb = _minus_half_binomials(m)
    total = Fraction(0)
    for k in range(ell, m + 1):
        term = gb[m - k] * Fraction(comb(m + k, k) * comb(k, ell), 2**k)
        total += -term if (m - k) % 2 else term
    return total


# --------------------------------------------------------------------------
# cross validation


@dataclass(frozen=True)
class Mismatch:
    method: str
    ell: int
    m: int
    expected: Fraction
    got: Fraction


@dataclass
class CrossValidationReport:
    max_m: int
    max_m_double_sum: int
    compared: dict[str, int]
    timings: dict[str, float]
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self) -> Mismatch | None:
        return self.mismatches[0] if self.mismatches else None


def cross_validate(
    max_m: int, max_m_double_sum: int | None = None, table: BMTable | None = None
) -> CrossValidationReport:
    """Compare every method against the closed form on 0 <= l <= m <= max_m.

    The double sum is only run up to ``max_m_double_sum``. A supplied
    ``table`` is used in place of a freshly built one.
    """
    if max_m_double_sum is None:
        max_m_double_sum = max_m
    if max_m_double_sum > max_m:
        raise DomainError("double-sum cap must not exceed max_m")

    timings: dict[str, float] = {}
    compared: dict[str, int] = {}
    mismatches: list[Mismatch] = []

    t0 = time.perf_counter()
    ref = [[d_closed_form(ell, m) for ell in range(m + 1)] for m in range(max_m + 1)]
    timings["closed_form"] = time.perf_counter() - t0

    def compare(method, values):
        n = 0
        for (ell, m), got in values:
            n += 1
            if got != ref[m][ell]:
                mismatches.append(Mismatch(method, ell, m, ref[m][ell], got))
        compared[method] = n

    t0 = time.perf_counter()
    if table is None:
        table = build_table(max_m)
    elif table.max_m < max_m:
        raise DomainError(f"table covers m <= {table.max_m}, need {max_m}")
    compare(
        "row_recurrence",
        (((ell, m), table.d(ell, m)) for m in range(max_m + 1) for ell in range(m + 1)),
    )
    timings["row_recurrence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    compare(
        "m_recurrence",
        (
            ((ell, ell + i), v)
            for ell in range(max_m + 1)
            for i, v in enumerate(column_via_m_recurrence(ell, max_m))
        ),
    )
    timings["m_recurrence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    compare(
        "ell_recurrence",
        (((ell, m), v) for m in range(max_m + 1) for ell, v in enumerate(row_via_ell_recurrence(m))),
    )
    timings["ell_recurrence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    compare(
        "jacobi",
        (((ell, m), d_jacobi(ell, m)) for m in range(max_m + 1) for ell in range(m + 1)),
    )
    timings["jacobi"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    compare(
        "double_sum",
        (
            ((ell, m), v)
            for m in range(max_m_double_sum + 1)
            for ell, v in enumerate(p_double_sum(m))
        ),
    )
    timings["double_sum"] = time.perf_counter() - t0

    mismatches.sort(key=lambda x: (x.m, x.ell, x.method))
    return CrossValidationReport(max_m, max_m_double_sum, compared, timings, mismatches)


# --------------------------------------------------------------------------
# cache file


def write_table(table: BMTable, path) -> None:
    path = Path(path)
    with path.open("w", encoding="ascii") as fh:
        fh.write(f"{CACHE_HEADER} max_m={table.max_m}\n")
        for m, ell, n in table.entries():
            fh.write(f"{m} {ell} {n}\n")


def read_table(path) -> BMTable:
    path = Path(path)
    with path.open("r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        prefix = CACHE_HEADER + " max_m="
        if not header.startswith(prefix):
            raise CacheFormatError(f"{path}: bad header {header!r}")
        try:
            max_m = int(header[len(prefix):])
        except ValueError:
            raise CacheFormatError(f"{path}: bad header {header!r}") from None
        rows: list[list[int]] = [[] for _ in range(max_m + 1)]
        expect = iter((m, ell) for m in range(max_m + 1) for ell in range(m + 1))
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if len(parts) != 3:
                raise CacheFormatError(f"{path}:{lineno}: expected 'm l N'")
            m, ell, n = (int(p) for p in parts)
            if (m, ell) != next(expect, None):
                raise CacheFormatError(f"{path}:{lineno}: entry ({m}, {ell}) out of order")
            rows[m].append(n)
        if next(expect, None) is not None:
            raise CacheFormatError(f"{path}: truncated table")
    return BMTable(max_m, tuple(tuple(r) for r in rows))
