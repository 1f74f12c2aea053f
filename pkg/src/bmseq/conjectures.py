"""Finite-depth checks of the open conjectures on d_l(m).

Nothing here proves anything: each report states exactly which indices
were examined, which were lost to window truncation, and carries a
disclaimer saying the verdict is finite evidence.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from bmseq.core import BMTable, DomainError, build_table, d_closed_form
from bmseq.logprops import (
    LengthError,
    Seq,
    extended_ultra,
    is_log_concave,
    log_monotonic_order,
    op_L,
    op_R,
)

__all__ = [
    "CONJECTURES",
    "ConjectureReport",
    "ConjectureSpec",
    "SubCheck",
    "bessel_row",
    "check_conj_C42",
    "check_conj_C42_C43",
    "check_conj_C43",
    "check_half_split",
    "check_inf_logconcave",
    "check_log_monotonic_conj",
    "check_row_inf_logconcave",
    "r_ratio",
    "ratio_seq",
    "run_conjecture",
]

DISCLAIMER = "finite verification on the stated window; not a proof"


@dataclass(frozen=True)
class ConjectureSpec:
    id: str
    statement: str
    ell_min: int | None = None
    m_min: int | None = None


CONJECTURES: dict[str, ConjectureSpec] = {
    c.id: c
    for c in [
        ConjectureSpec("C11_ROWS", "each row {d_l(m)}_{l=0..m} is infinitely log-concave", m_min=2),
        ConjectureSpec("C41", "{d_l(m)}_{m>=l} is infinitely strictly log-concave for l >= 3", ell_min=3),
        ConjectureSpec("C42", "{d_l(m-1)d_l(m+1)/d_l(m)^2}_{m>=l+1} is log-concave for l >= 1", ell_min=1),
        ConjectureSpec(
            "C43", "{d_l(m-1)d_l(m+1)/d_l(m)^2}_{m>=l+1} is extended reverse ultra log-concave for l >= 0", ell_min=0
        ),
        ConjectureSpec(
            "C44", "r_l(m) < 1 for 2 <= l <= floor(m/2) and r_l(m) > 1 for floor(m/2)+1 <= l <= m-1", m_min=3
        ),
        ConjectureSpec(
            "C45", "{d_0(m)} and {d_l(m+1)/d_l(m)}_{m>=l} (l >= 1) are infinitely log-monotonic", ell_min=0
        ),
    ]
}


@dataclass(frozen=True)
class SubCheck:
    name: str
    holds: bool
    window: tuple[int, int] | None
    witness: tuple | None = None


@dataclass
class ConjectureReport:
    conjecture: str
    params: dict
    verified_window: tuple[int, int] | None
    checks: list[SubCheck]
    counterexamples: list[tuple] = field(default_factory=list)
    truncation: str = ""
    assumptions: list[str] = field(default_factory=list)
    disclaimer: str = DISCLAIMER
    values: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)


def _table(table: BMTable | None, need_m: int) -> BMTable:
    if table is None:
        return build_table(need_m)
    table.require(need_m)
    return table


def _column(table: BMTable, ell: int, m_max: int) -> Seq:
    return Seq(ell, tuple(table.column(ell, m_max)))


# --------------------------------------------------------------------------
# infinite log-concavity


def _iterate_L(s: Seq, depth: int, strict: bool, left: bool, right: bool, max_witnesses: int = 20):
    checks, witnesses = [], []
    t = s
    for j in range(1, depth + 1):
        t = op_L(t, left, right)
        bad = [(i, b) for i, b in t.items() if b < 0 or (strict and b == 0)]
        first = (j, bad[0][0], bad[0][1]) if bad else None
        checks.append(SubCheck(f"L^{j}", not bad, (t.offset, t.last), first))
        witnesses.extend((j, i, b) for i, b in bad[:max_witnesses])
    return checks, witnesses


def check_inf_logconcave(ell: int, depth: int, m_max: int, table: BMTable | None = None) -> ConjectureReport:
    """L^j({d_l(m)}_{m=l..m_max}) > 0 for j = 1..depth (strict).

    The window starts at the sequence origin, so a_{l-1} = 0 is used on the
    left; each application of L loses the rightmost index.
    """
    if ell < 0 or depth < 1:
        raise DomainError(f"need l >= 0 and depth >= 1, got l={ell}, depth={depth}")
    if m_max < ell + depth + 2:
        raise LengthError(f"m_max must be at least l + depth + 2 = {ell + depth + 2}, got {m_max}")
    table = _table(table, m_max)
    checks, wit = _iterate_L(_column(table, ell, m_max), depth, strict=True, left=True, right=False)
    notes = []
    if ell < CONJECTURES["C41"].ell_min:
        notes.append(f"l={ell} is outside the conjectured range l >= 3")
    return ConjectureReport(
        "C41",
        {"l": ell, "depth": depth, "m_max": m_max},
        checks[-1].window,
        checks,
        wit,
        truncation=f"depth j examines m in [{ell}, {m_max} - j]; the top j indices are lost at depth j",
        assumptions=["a_{l-1} = 0 at the origin m = l"] + notes,
    )


def check_row_inf_logconcave(m: int, depth: int, table: BMTable | None = None) -> ConjectureReport:
    """L^j of the full row m is nonnegative, j = 1..depth.

    The row is a complete finite sequence, so zeros are used beyond both
    ends and nothing is truncated.
    """
    if m < 2:
        raise DomainError(f"rows need m >= 2, got {m}")
    table = _table(table, m)
    row = Seq(0, tuple(table.row(m)))
    checks, wit = _iterate_L(row, depth, strict=False, left=True, right=True)
    return ConjectureReport(
        "C11_ROWS",
        {"m": m, "depth": depth},
        (0, m),
        checks,
        wit,
        truncation="none: zero boundary on both ends",
        assumptions=["non-strict: boundary zeros make b = a^2 at the ends"],
    )


# --------------------------------------------------------------------------
# ratio sequence


def ratio_seq(ell: int, m_max: int, table: BMTable | None = None) -> Seq:
    """q_m = d_l(m-1) d_l(m+1) / d_l(m)^2 for l+1 <= m <= m_max-1."""
    if ell < 0 or m_max < ell + 2:
        raise DomainError(f"need l >= 0 and m_max >= l + 2, got l={ell}, m_max={m_max}")
    table = _table(table, m_max)
    d = table.column(ell, m_max)
    return Seq(ell + 1, tuple(d[i - 1] * d[i + 1] / (d[i] * d[i]) for i in range(1, len(d) - 1)))


def check_conj_C42(ell: int, m_max: int, table: BMTable | None = None) -> ConjectureReport:
    spec = CONJECTURES["C42"]
    if ell < spec.ell_min:
        raise DomainError(f"C42 is stated for l >= 1, got l={ell}")
    q = ratio_seq(ell, m_max, table)
    out = is_log_concave(q)
    strict = is_log_concave(q, strict=True)
    wit = _witness(out)
    return ConjectureReport(
        "C42",
        {"l": ell, "m_max": m_max},
        out.checked_range,
        [
            SubCheck("log-concave", out.holds, out.checked_range, wit),
            SubCheck("strictly log-concave (informational)", True, strict.checked_range, _witness(strict)),
        ],
        [wit] if wit else [],
        truncation=f"q_m needs d_l(m+1): q is defined for m in [{ell + 1}, {m_max - 1}]; "
        "log-concavity examines its interior",
    )


def check_conj_C43(ell: int, m_max: int, table: BMTable | None = None) -> ConjectureReport:
    spec = CONJECTURES["C43"]
    if ell < spec.ell_min:
        raise DomainError(f"C43 is stated for l >= 0, got l={ell}")
    q = ratio_seq(ell, m_max, table)
    out = extended_ultra(q, ell + 1, "reverse")
    wit = _witness(out)
    return ConjectureReport(
        "C43",
        {"l": ell, "m_max": m_max, "k": ell + 1},
        out.checked_range,
        [SubCheck("extended reverse ultra (strict)", out.holds, out.checked_range, wit)],
        [wit] if wit else [],
        truncation=f"q is defined for m in [{ell + 1}, {m_max - 1}]; the check examines its interior",
        assumptions=[f"binomial offset k = l + 1 = {ell + 1}, the first index of the ratio sequence"],
    )


def check_conj_C42_C43(ell: int, m_max: int, table: BMTable | None = None) -> list[ConjectureReport]:
    """C43 always; C42 too when l >= 1."""
    out = []
    if ell >= 1:
        out.append(check_conj_C42(ell, m_max, table))
    out.append(check_conj_C43(ell, m_max, table))
    return out


def _witness(outcome) -> tuple | None:
    v = outcome.first_violation
    return None if v is None else (v.index, v.lhs, v.rhs)


# --------------------------------------------------------------------------
# half log-convex / half log-concave rows


def r_ratio(ell: int, m: int, table: BMTable | None = None) -> Fraction:
    """d_l^3 d_{l-2} / (d_{l-1}^3 d_{l+1}) in row m."""
    if not 2 <= ell <= m - 1:
        raise DomainError(f"need 2 <= l <= m-1, got l={ell}, m={m}")
    if table is None:
        d = lambda i: d_closed_form(i, m)  # noqa: E731
    else:
        table.require(m)
        # row m shares the factor 4^m, which cancels
        d = lambda i: table.N(i, m)  # noqa: E731
    return Fraction(d(ell) ** 3 * d(ell - 2), d(ell - 1) ** 3 * d(ell + 1))


def check_half_split(m: int, table: BMTable | None = None, keep_values: bool = False) -> ConjectureReport:
    """r_l(m) < 1 on the lower half of row m and > 1 on the upper half.

    With ``keep_values`` the report carries every r_l(m) under ``values``.
    """
    if m < 3:
        raise DomainError(f"C44 is stated for m >= 3, got {m}")
    table = _table(table, m)
    half = m // 2
    lower, upper = [], []
    values = {}
    for ell in range(2, m):
        r = r_ratio(ell, m, table)
        if keep_values:
            values[ell] = r
        if ell <= half and not r < 1:
            lower.append((ell, m, r))
        elif ell > half and not r > 1:
            upper.append((ell, m, r))
    checks = []
    if half >= 2:
        checks.append(SubCheck("r < 1 on 2..floor(m/2)", not lower, (2, half), lower[0] if lower else None))
    checks.append(SubCheck("r > 1 on floor(m/2)+1..m-1", not upper, (half + 1, m - 1), upper[0] if upper else None))
    return ConjectureReport(
        "C44", {"m": m}, (2, m - 1), checks, lower + upper, truncation="none: full row", values=values
    )


# --------------------------------------------------------------------------
# log-monotonicity


def check_log_monotonic_conj(ell: int, order: int, m_max: int, table: BMTable | None = None) -> ConjectureReport:
    """Order-``order`` log-monotonicity of {d_0(m)} (l = 0) or of R({d_l(m)}) (l >= 1)."""
    if ell < 0 or order < 1:
        raise DomainError(f"need l >= 0 and order >= 1, got l={ell}, order={order}")
    table = _table(table, m_max)
    col = _column(table, ell, m_max)
    s = col if ell == 0 else op_R(col)
    out = log_monotonic_order(s, order)
    wit = None
    if out.first_violation is not None:
        v = out.first_violation
        wit = (v.depth, v.index, v.lhs, v.rhs)
    checks = [
        SubCheck(f"R^{j} {'log-convex' if j % 2 == 0 else 'log-concave'}", True, (lo, hi))
        for j, lo, hi in out.windows
    ]
    if wit:
        j = wit[0]
        checks[j] = SubCheck(checks[j].name, False, checks[j].window, wit)
    return ConjectureReport(
        "C45",
        {"l": ell, "order": order, "m_max": m_max},
        out.checked_range,
        checks,
        [wit] if wit else [],
        truncation="each application of R loses the top index; "
        + ", ".join(f"R^{j} checked on {lo}..{hi}" for j, lo, hi in out.windows),
        assumptions=["non-strict inequalities"],
    )


def bessel_row(n: int) -> Seq:
    """Coefficients (n+k)! / (2^k k! (n-k)!) of the Bessel polynomial B_n."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return Seq(
        0,
        tuple(
            Fraction(factorial(n + k), 2**k * factorial(k) * factorial(n - k)) for k in range(n + 1)
        ),
    )


# --------------------------------------------------------------------------
# batch driver

DEFAULT_ELL = {"c41": (3, 10), "c42": (1, 10), "c43": (0, 10), "c45": (0, 5)}

_WORKER_TABLE: BMTable | None = None


def _init_worker(table):
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _task(cid: str, key: int, depth: int, m_max: int, keep: bool = False) -> list[ConjectureReport]:
    t = _WORKER_TABLE
    if cid == "c11":
        return [check_row_inf_logconcave(key, depth, t)]
    if cid == "c41":
        return [check_inf_logconcave(key, depth, m_max, t)]
    if cid == "c42":
        return [check_conj_C42(key, m_max, t)]
    if cid == "c43":
        return [check_conj_C43(key, m_max, t)]
    if cid == "c44":
        return [check_half_split(key, t, keep)]
    if cid == "c45":
        return [check_log_monotonic_conj(key, depth, m_max, t)]
    raise DomainError(f"unknown conjecture id {cid!r}")


def run_conjecture(
    cid: str,
    m_max: int,
    ell_range: tuple[int, int] | None = None,
    depth: int = 4,
    table: BMTable | None = None,
    jobs: int = 1,
    rows: tuple[int, int] | None = None,
    keep_values: bool = False,
) -> list[ConjectureReport]:
    """Run one conjecture over its parameter range; reports come back in key order.

    ``ell_range`` applies to column conjectures (c41, c42, c43, c45); ``rows``
    to row conjectures (c11, c44), defaulting to every row up to ``m_max``.
    ``depth`` doubles as the order for c45.
    """
    cid = cid.lower()
    if cid in ("c11", "c44"):
        lo, hi = rows or ((2 if cid == "c11" else 3), m_max)
        if lo > hi or lo < (2 if cid == "c11" else 3):
            raise DomainError(f"{cid}: empty or invalid row range {lo}..{hi}")
        keys = list(range(lo, hi + 1))
        need = hi
    elif cid in DEFAULT_ELL:
        lo, hi = ell_range or DEFAULT_ELL[cid]
        if lo > hi:
            raise DomainError(f"{cid}: empty l range {lo}..{hi}")
        keys = list(range(lo, hi + 1))
        need = m_max
    else:
        raise DomainError(f"unknown conjecture id {cid!r}")
    table = _table(table, need)

    if jobs <= 1 or len(keys) < 2:
        _init_worker(table)
        try:
            parts = [_task(cid, k, depth, m_max, keep_values) for k in keys]
        finally:
            _init_worker(None)
    else:
        ctx = multiprocessing.get_context("fork")
        n = len(keys)
        with ProcessPoolExecutor(jobs, mp_context=ctx, initializer=_init_worker, initargs=(table,)) as ex:
            parts = list(ex.map(_task, [cid] * n, keys, [depth] * n, [m_max] * n, [keep_values] * n))
    return [r for part in parts for r in part]
