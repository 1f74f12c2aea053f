"""Sparse integer polynomials in (m, l) and the named proof polynomials.

``BiPoly`` keys are (deg_m, deg_l). Calling a BiPoly evaluates it; the
arguments may be ints, Fractions or other BiPolys (composition), so the
same expression code serves both numeric evaluation and expansion.

Every polynomial that appears in the bound functions and in the identity
registry is defined exactly once, below.
"""

from __future__ import annotations

from typing import Mapping

__all__ = ["BiPoly", "L", "M", "NAMED"]


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_m(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def deg_l(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def coeff(self, deg_m: int, deg_l: int = 0) -> int:
        return self.terms.get((deg_m, deg_l), 0)

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(x) -> "BiPoly":
        if isinstance(x, BiPoly):
            return x
        if isinstance(x, int):
            return BiPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation -----------------------------------------------------------

    def __call__(self, ell, m):
        """Value at (l, m); note the argument order (l first, as in d_l(m))."""
        symbolic = isinstance(ell, BiPoly) or isinstance(m, BiPoly)
        if not self.terms:
            return BiPoly() if symbolic else 0
        mp = [1]
        for _ in range(self.deg_m):
            mp.append(mp[-1] * m)
        lp = [1]
        for _ in range(self.deg_l):
            lp.append(lp[-1] * ell)
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * mp[i] * lp[j]
        if symbolic and not isinstance(total, BiPoly):
            total = BiPoly.const(total)
        return total

    def __repr__(self):
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                s for s in (f"m^{i}" if i > 1 else "m" if i else "", f"l^{j}" if j > 1 else "l" if j else "") if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "BiPoly(" + " + ".join(parts) + ")"


M = BiPoly({(1, 0): 1})
L = BiPoly({(0, 1): 1})


# --------------------------------------------------------------------------
# named polynomials (m = M, l = L)

DELTA1 = 52 * M**4 + (64 * L**2 + 56) * M**3 + (16 * L**4 + 36 * L**2 + 13) * M**2 - 8 * L**2 * M - 4 * L**2

DELTA2 = (
    52 * M**4
    + (64 * L**2 + 264) * M**3
    + (16 * L**4 + 228 * L**2 + 493) * M**2
    + (32 * L**4 + 256 * L**2 + 402) * M
    + 16 * L**4
    + 88 * L**2
    + 121
)

# rational part of P; the full P subtracts sqrt(DELTA2)
P_RAT = 8 * M**3 + 32 * M**2 + 43 * M - 4 * L**2 * M - 4 * L**2 + 19

F = 16 * L * M**2 + 24 * M**2 - 16 * L**2 * M + 16 * L * M + 54 * M + 8 * L**3 - 12 * L**2 - 8 * L + 27

G1 = (M**2 + M) * (12 * M**2 + 24 * M - 16 * L**4 + 28 * L**2 + 3)
G2 = 8 * M**3 + 8 * M**2 - 4 * L**2 * M + 3 * M
G3 = (M + 1) * (8 * M**2 + 24 * M - 4 * L**2 + 19)

H1 = 8 * (M + 1) ** 2 * (
    832 * M**7 + 1536 * L**2 * M**6 + 4576 * M**6 + 512 * L**4 * M**5 + 7104 * L**2 * M**5
    + 9556 * M**5 + 1792 * L**4 * M**4 + 11648 * L**2 * M**4 + 9358 * M**4 + 2048 * L**4 * M**3
    + 7588 * L**2 * M**3 + 4192 * M**3 + 800 * L**4 * M**2 + 770 * L**2 * M**2 + 646 * M**2
    - 32 * L**6 * M + 120 * L**4 * M - 1018 * L**2 * M - 16 * L**6 + 32 * L**4 - 241 * L**2
)
H2 = 8 * (M + 1) * (
    128 * M**6 + 128 * L**2 * M**5 + 496 * M**5 + 448 * L**2 * M**4 + 672 * M**4
    + 480 * L**2 * M**3 + 368 * M**3 + 120 * L**2 * M**2 + 64 * M**2 + 8 * L**4 * M
    - 62 * L**2 * M + 4 * L**4 - 19 * L**2
)

OMEGA = 16 * M**6 + 96 * M**5 + 296 * M**4 + 520 * M**3 + 581 * M**2 + 402 * M + 121

# quadratic in d_{l+1}(m)/d_l(m) whose roots bracket the ratio
QA = 4 * M**2 * L**2 * (L + 1) ** 2
QB = -2 * M**2 * (2 * M + 1) * L * (L + 1) * (2 * L + 3)
QC = (M - L) * (4 * (L**2 + 3 * L - 1) * M**3 + (4 * L**3 + 8 * L - 5) * M**2 - (2 * L + 1) * M - L)

# quadratic in d_l(m+1)/d_l(m) behind the lower bound
CA = 4 * M**4 * (M + 1 - L) ** 2 * (M + 1)
CB = -2 * M**4 * (M + 1 - L) * (8 * M**2 + 8 * M - 4 * L**2 + 3)
CC = (16 * M**2 - 1) * (M + 1) * (M**2 + 1) * (M**2 - L**2)

FELL = (
    -12 * M**6
    + (64 * L**2 - 72) * M**5
    + (16 * L**4 + 100 * L**2 - 47) * M**4
    + (120 * L**2 + 8) * M**3
    + (56 * L**2 + 4) * M**2
    - 8 * L**2 * M
    - 4 * L**2
)

LAMBDA = (M + L**2) * (4 * L**4 + 8 * L**2 * M + 5 * L**2 + M)

K1 = 3 * M**2 * (2 * M + 1) * (M + L**2)
K2 = 2 * L * M**2
K3 = M + L**2

M1 = 12 * M**5 + 27 * M**4 + (3 * L**2 + 14) * M**3 + L**2
M2 = 4 * L**2 * M**4 + 12 * L**4 * M**3 + (20 * L**4 + 16 * L**2 + 2) * M**2 + (30 * L**4 + 16 * L**2 + 1) * M + 14 * L**4

S = (
    144 * M**10
    + 648 * M**9
    + (272 * L**4 + 108 * L**2 + 1065) * M**8
    + (336 * L**6 + 504 * L**4 + 198 * L**2 + 756) * M**7
    + (452 * L**6 + 169 * L**4 + 77 * L**2 + 196) * M**6
    - (336 * L**8 + 336 * L**6 + 122 * L**4 - 16 * L**2) * M**5
    - (1084 * L**8 + 1091 * L**6 + 360 * L**4 + 10 * L**2 + 4) * M**4
    - (1536 * L**8 + 1600 * L**6 + 666 * L**4 + 68 * L**2 + 4) * M**3
    - (1460 * L**8 + 1408 * L**6 + 372 * L**4 + 32 * L**2 + 1) * M**2
    - (840 * L**8 + 448 * L**6 + 28 * L**4) * M
    - (196 * L**8 - L**4)
)
T = 6 * L * M**2 * (2 * M + 1) * (12 * M**5 + 27 * M**4 + (3 * L**2 + 14) * M**3 + L**2)

NAMED: dict[str, BiPoly] = {
    "Delta1": DELTA1,
    "Delta2": DELTA2,
    "P": P_RAT,
    "F": F,
    "G1": G1,
    "G2": G2,
    "G3": G3,
    "H1": H1,
    "H2": H2,
    "omega": OMEGA,
    "A": QA,
    "B": QB,
    "C": QC,
    "cA": CA,
    "cB": CB,
    "cC": CC,
    "f": FELL,
    "lambda": LAMBDA,
    "K1": K1,
    "K2": K2,
    "K3": K3,
    "M1": M1,
    "M2": M2,
    "S": S,
    "T": T,
}
