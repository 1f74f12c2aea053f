"""Log-behaviour of finite windows of exact sequences.

A ``Seq`` is a window ``values`` whose first element sits at logical index
``offset``. Operators that need a neighbour outside the window either drop
that index (the default) or, when the window starts or ends at the true
boundary of the underlying sequence, use a zero neighbour. Which of the
two applies is always an explicit flag.

Every predicate returns a ``PropertyOutcome`` saying exactly which indices
were examined. Strict and non-strict variants are never mixed silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "LengthError",
    "PositivityError",
    "PropertyOutcome",
    "Seq",
    "Violation",
    "briggs_check",
    "extended_ultra",
    "higher_turan_check",
    "is_k_log_concave",
    "is_log_concave",
    "is_log_convex",
    "is_unimodal",
    "log_monotonic_order",
    "nth_root_log_convex",
    "op_L",
    "op_R",
    "ultra_log_concave",
]


class LengthError(ValueError):
    """Window too short for the requested operation or depth."""


class PositivityError(ValueError):
    pass


@dataclass(frozen=True)
class Seq:
    offset: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if not vals:
            raise LengthError("sequence window must be nonempty")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable, offset: int = 0) -> "Seq":
        return cls(offset, tuple(values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        j = i - self.offset
        if not 0 <= j < len(self.values):
            raise IndexError(f"index {i} outside window [{self.offset}, {self.last}]")
        return self.values[j]

    @property
    def last(self) -> int:
        return self.offset + len(self.values) - 1

    @property
    def indices(self) -> range:
        return range(self.offset, self.last + 1)

    def items(self):
        return zip(self.indices, self.values)

    def scaled(self, c) -> "Seq":
        return Seq(self.offset, tuple(c * v for v in self.values))


@dataclass(frozen=True)
class Violation:
    index: int
    lhs: object
    rhs: object
    depth: int | None = None


@dataclass(frozen=True)
class PropertyOutcome:
    holds: bool
    first_violation: Violation | None
    checked_range: tuple[int, int] | None
    windows: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        assert self.holds == (self.first_violation is None)

    def __bool__(self):
        return self.holds


def _outcome(checks, checked_range, windows=()) -> PropertyOutcome:
    """Build an outcome from (index, lhs, rhs, ok[, depth]) tuples."""
    for item in checks:
        if not item[3]:
            depth = item[4] if len(item) > 4 else None
            return PropertyOutcome(False, Violation(item[0], item[1], item[2], depth), checked_range, windows)
    return PropertyOutcome(True, None, checked_range, windows)


def _need(s: Seq, n: int, what: str) -> None:
    if len(s) < n:
        raise LengthError(f"{what} needs at least {n} terms, window has {len(s)}")


def _require_positive(s: Seq) -> None:
    for i, v in s.items():
        if v <= 0:
            raise PositivityError(f"term at index {i} is {v}, expected positive")


# --------------------------------------------------------------------------
# operators


def op_L(s: Seq, left_boundary: bool = False, right_boundary: bool = False) -> Seq:
    """b_i = a_i^2 - a_{i-1} a_{i+1}.

    With ``left_boundary`` the window starts at the sequence origin and the
    neighbour a_{offset-1} is 0, so b_offset = a_offset^2 is kept. Likewise
    ``right_boundary`` means the sequence ends at the window and the last
    term keeps b = a^2. Without a flag, that edge term is dropped.
    """
    if not right_boundary:
        _need(s, 2, "op_L")
    v = s.values
    n = len(v)
    lo = 0 if left_boundary else 1
    hi = n - 1 if right_boundary else n - 2
    if hi < lo:
        raise LengthError(f"op_L leaves an empty window from {n} terms")
    out = []
    for j in range(lo, hi + 1):
        prev = v[j - 1] if j > 0 else 0
        nxt = v[j + 1] if j + 1 < n else 0
        out.append(v[j] * v[j] - prev * nxt)
    return Seq(s.offset + lo, tuple(out))


def op_R(s: Seq) -> Seq:
    """b_i = a_{i+1} / a_i, offset preserved."""
    _need(s, 2, "op_R")
    for i, x in s.items():
        if x == 0 and i != s.last:
            raise ZeroDivisionError(f"op_R: zero term at index {i}")
    v = s.values
    return Seq(s.offset, tuple(v[j + 1] / v[j] for j in range(len(v) - 1)))


# --------------------------------------------------------------------------
# order-2 predicates


def _interior(s: Seq) -> tuple[int, int]:
    return s.offset + 1, s.last - 1


def is_log_concave(s: Seq, strict: bool = False) -> PropertyOutcome:
    _need(s, 3, "log-concavity")
    v = s.values

    def checks():
        for j in range(1, len(v) - 1):
            lhs, rhs = v[j] * v[j], v[j - 1] * v[j + 1]
            yield s.offset + j, lhs, rhs, lhs > rhs if strict else lhs >= rhs

    return _outcome(checks(), _interior(s))


def is_log_convex(s: Seq, strict: bool = False) -> PropertyOutcome:
    _need(s, 3, "log-convexity")
    v = s.values

    def checks():
        for j in range(1, len(v) - 1):
            lhs, rhs = v[j] * v[j], v[j - 1] * v[j + 1]
            yield s.offset + j, lhs, rhs, lhs < rhs if strict else lhs <= rhs

    return _outcome(checks(), _interior(s))


def is_unimodal(s: Seq) -> PropertyOutcome:
    """Weakly increasing then weakly decreasing."""
    v = s.values
    j = 0
    while j + 1 < len(v) and v[j] <= v[j + 1]:
        j += 1
    for k in range(j, len(v) - 1):
        if v[k] < v[k + 1]:
            return PropertyOutcome(False, Violation(s.offset + k + 1, v[k + 1], v[k]), (s.offset, s.last))
    return PropertyOutcome(True, None, (s.offset, s.last))


# --------------------------------------------------------------------------
# iterated operators


def is_k_log_concave(
    s: Seq,
    k: int,
    left_boundary: bool = True,
    strict: bool = False,
    right_boundary: bool = False,
) -> PropertyOutcome:
    """Is L^j(s) nonnegative (positive if ``strict``) on its valid window, j = 1..k?

    ``windows`` lists (depth, first, last) for every iterate examined.
    """
    if k < 1:
        raise ValueError("depth must be positive")
    if not right_boundary:
        need = k + 2 if left_boundary else 2 * k + 1
        _need(s, need, f"depth-{k} log-concavity")
    windows = []
    t = s
    for depth in range(1, k + 1):
        t = op_L(t, left_boundary, right_boundary)
        windows.append((depth, t.offset, t.last))
        for i, b in t.items():
            if b < 0 or (strict and b == 0):
                return PropertyOutcome(False, Violation(i, b, 0, depth), (t.offset, t.last), tuple(windows))
    return PropertyOutcome(True, None, (t.offset, t.last), tuple(windows))


def log_monotonic_order(s: Seq, k: int, strict: bool = False) -> PropertyOutcome:
    """R^j(s) log-convex for even j and log-concave for odd j, 0 <= j < k."""
    if k < 1:
        raise ValueError("order must be positive")
    _require_positive(s)
    _need(s, k + 2, f"log-monotonicity of order {k}")
    windows = []
    t = s
    for j in range(k):
        check = is_log_convex if j % 2 == 0 else is_log_concave
        out = check(t, strict)
        windows.append((j, out.checked_range[0], out.checked_range[1]))
        if not out:
            v = out.first_violation
            return PropertyOutcome(False, Violation(v.index, v.lhs, v.rhs, j), out.checked_range, tuple(windows))
        if j + 1 < k:
            t = op_R(t)
    return PropertyOutcome(True, None, windows[-1][1:], tuple(windows))


# --------------------------------------------------------------------------
# ultra log-concavity


def _orient(lhs, rhs, mode: str) -> bool:
    if mode == "ultra":
        return lhs > rhs
    if mode == "reverse":
        return lhs < rhs
    raise ValueError(f"mode must be 'ultra' or 'reverse', got {mode!r}")


def ultra_log_concave(s: Seq, n: int, mode: str = "ultra") -> PropertyOutcome:
    """Strict (reverse) ultra log-concavity of a_0..a_n against binom(n, i)."""
    if s.offset != 0 or len(s) != n + 1:
        raise IndexError(f"expected a window indexed 0..{n}, got {s.offset}..{s.last}")
    _orient(0, 0, mode)
    v = s.values

    def checks():
        for i in range(1, n):
            lhs = v[i] * v[i] / comb(n, i) ** 2
            rhs = v[i - 1] * v[i + 1] / (comb(n, i - 1) * comb(n, i + 1))
            yield i, lhs, rhs, _orient(lhs, rhs, mode)

    return _outcome(checks(), (1, n - 1) if n >= 2 else None)


def extended_ultra(s: Seq, k: int, mode: str = "ultra") -> PropertyOutcome:
    """{a_i / binom(i, k)}_{i >= k} strictly log-concave (ultra) or log-convex (reverse)."""
    if s.offset != k:
        raise IndexError(f"extended ultra with k={k} needs offset {k}, got {s.offset}")
    _need(s, 3, "extended ultra log-concavity")
    _orient(0, 0, mode)
    scaled = Seq(k, tuple(a / comb(i, k) for i, a in s.items()))
    if mode == "ultra":
        return is_log_concave(scaled, strict=True)
    return is_log_convex(scaled, strict=True)


# --------------------------------------------------------------------------
# stronger inequalities


def briggs_check(s: Seq) -> PropertyOutcome:
    """a_k^2 (a_k^2 - a_{k-1}a_{k+1}) > a_{k-1}^2 (a_{k+1}^2 - a_k a_{k+2})."""
    _need(s, 4, "Briggs inequality")
    v = s.values

    def checks():
        for j in range(1, len(v) - 2):
            lhs = v[j] ** 2 * (v[j] ** 2 - v[j - 1] * v[j + 1])
            rhs = v[j - 1] ** 2 * (v[j + 1] ** 2 - v[j] * v[j + 2])
            yield s.offset + j, lhs, rhs, lhs > rhs

    return _outcome(checks(), (s.offset + 1, s.last - 2))


def nth_root_log_convex(s: Seq, strict: bool = False) -> PropertyOutcome:
    """Log-convexity of a_n^(1/n), n = logical index >= 1.

    Compared in the integer-exponent form
    a_n^(2(n-1)(n+1)) <= a_{n-1}^(n(n+1)) a_{n+1}^(n(n-1)).
    """
    if s.offset < 1:
        raise IndexError("n-th root sequence must be indexed from n >= 1")
    _require_positive(s)
    _need(s, 3, "n-th root log-convexity")

    def checks():
        for n in range(s.offset + 1, s.last):
            lhs = s[n] ** (2 * (n - 1) * (n + 1))
            rhs = s[n - 1] ** (n * (n + 1)) * s[n + 1] ** (n * (n - 1))
            yield n, lhs, rhs, lhs < rhs if strict else lhs <= rhs

    return _outcome(checks(), _interior(s))


def higher_turan_check(s: Seq, strict: bool = False) -> PropertyOutcome:
    """4(a_n^2 - a_{n-1}a_{n+1})(a_{n+1}^2 - a_n a_{n+2}) >= (a_n a_{n+1} - a_{n-1}a_{n+2})^2.

    The standard quartic form of the higher order Turan inequality.
    """
    _need(s, 4, "higher order Turan inequality")
    v = s.values

    def checks():
        for j in range(1, len(v) - 2):
            lhs = 4 * (v[j] ** 2 - v[j - 1] * v[j + 1]) * (v[j + 1] ** 2 - v[j] * v[j + 2])
            rhs = (v[j] * v[j + 1] - v[j - 1] * v[j + 2]) ** 2
            yield s.offset + j, lhs, rhs, lhs > rhs if strict else lhs >= rhs

    return _outcome(checks(), (s.offset + 1, s.last - 2))
