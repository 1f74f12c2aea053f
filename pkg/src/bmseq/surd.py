"""Exact numbers a + b*sqrt(D) with rational a, b and integer D >= 0.

Signs and comparisons are decided by integer squaring; nothing here
touches floating point except the explicitly approximate ``__float__``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

__all__ = ["IncompatibleRadicand", "QuadraticSurd", "compare", "surd_cmp", "sign"]


class IncompatibleRadicand(ValueError):
    pass


def _is_square(n: int) -> int | None:
    r = isqrt(n)
    return r if r * r == n else None


class QuadraticSurd:
    """a + b*sqrt(D), kept canonical.

    The radicand is stored as given (not square-free reduced). When D is 0,
    b is 0, or D is a perfect square, the value collapses to (a, 0, 0).
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        D = int(D)
        if D < 0:
            raise ValueError(f"radicand must be nonnegative, got {D}")
        if b and D:
            r = _is_square(D)
            if r is not None:
                a, b, D = a + b * r, Fraction(0), 0
        else:
            b, D = Fraction(0), 0
        self.a = a
        self.b = b
        self.D = D

    @classmethod
    def sqrt(cls, D: int) -> "QuadraticSurd":
        return cls(0, 1, D)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.D and self.D and other.D != self.D:
                raise IncompatibleRadicand(f"sqrt({self.D}) and sqrt({other.D}) do not mix")
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticSurd(other)
        return NotImplemented

    def _radicand(self, other: "QuadraticSurd") -> int:
        return self.D or other.D

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a - o.a, self.b - o.b, self._radicand(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._radicand(o)
        return QuadraticSurd(
            self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational:
            if o.a == 0:
                raise ZeroDivisionError("division by zero surd")
            return QuadraticSurd(self.a / o.a, self.b / o.a, self.D)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return QuadraticSurd(num.a / n, num.b / n, num.D)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadraticSurd(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        return sign(self.a, self.b, self.D)

    def __eq__(self, other):
        if isinstance(other, (int, Rational, QuadraticSurd)):
            o = QuadraticSurd(other) if not isinstance(other, QuadraticSurd) else other
            return (self.a, self.b, self.D) == (o.a, o.b, o.D)
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return surd_cmp(self, other) < 0

    def __le__(self, other):
        return surd_cmp(self, other) <= 0

    def __gt__(self, other):
        return surd_cmp(self, other) > 0

    def __ge__(self, other):
        return surd_cmp(self, other) >= 0

    def __float__(self):
        # display only
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __repr__(self):
        if self.is_rational:
            return f"QuadraticSurd({self.a})"
        return f"QuadraticSurd({self.a}, {self.b}, {self.D})"

    def __str__(self):
        return f"({_frac(self.a)}) + ({_frac(self.b)})*sqrt({self.D})"

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational interval [lo, hi] containing the value, width ~ |b| 2**-bits."""
        if self.is_rational:
            return self.a, self.a
        scale = 1 << bits
        r = isqrt(self.D * scale * scale)
        lo_root = Fraction(r, scale)
        hi_root = Fraction(r + 1, scale)
        x, y = self.a + self.b * lo_root, self.a + self.b * hi_root
        return (x, y) if x <= y else (y, x)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def sign(a, b, D: int) -> int:
    """Sign of a + b*sqrt(D), exactly."""
    a = Fraction(a)
    b = Fraction(b)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0) if D else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 D
    lhs = a * a
    rhs = b * b * D
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def surd_cmp(s, t) -> int:
    """-1, 0, 1 ordering of two surds sharing a radicand (or rationals)."""
    s = s if isinstance(s, QuadraticSurd) else QuadraticSurd(s)
    t = t if isinstance(t, QuadraticSurd) else QuadraticSurd(t)
    if s.D and t.D and s.D != t.D:
        raise IncompatibleRadicand(f"cannot compare sqrt({s.D}) with sqrt({t.D}) directly")
    return (s - t).sign()


def compare(s, t) -> int:
    """Ordering of a + b sqrt(D) against c + e sqrt(E) for any radicands.

    Reduces to ``surd_cmp`` after one squaring: the difference is
    u - v with u = (a - c) + b sqrt(D) and v = e sqrt(E).
    """
    s = s if isinstance(s, QuadraticSurd) else QuadraticSurd(s)
    t = t if isinstance(t, QuadraticSurd) else QuadraticSurd(t)
    if not (s.D and t.D and s.D != t.D):
        return surd_cmp(s, t)
    u = QuadraticSurd(s.a - t.a, s.b, s.D)
    v = QuadraticSurd(0, t.b, t.D)
    su, sv = u.sign(), v.sign()
    if su != sv:
        return (su > sv) - (su < sv)
    if su == 0:
        return 0
    # same sign: order by magnitude, flipped when both negative
    mag = surd_cmp(u * u, v.b * v.b * v.D)
    return mag if su > 0 else -mag
