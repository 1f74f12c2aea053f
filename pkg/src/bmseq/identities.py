"""Registry of algebraic identities and sign claims behind the bounds.

Polynomial identities are certified on a Cartesian grid that is larger
than the degree in each variable, which makes the check a proof rather
than sampling. Identities linear in one square root are checked pointwise
in exact ``QuadraticSurd`` arithmetic. Sign claims are scanned, which is
evidence on the scanned domain only.

Side expressions are plain callables ``f(l, m)`` built from the polynomials
in ``polys``; since those accept ``BiPoly`` arguments, ``expand`` can turn
any polynomial identity into coefficient form as a second route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from bmseq import polys
from bmseq.bounds import W_value, lb_transposed_bound
from bmseq.polys import (
    CA, CB, CC, DELTA1, DELTA2, F, FELL, G1, G2, G3, H1, H2, K1, K2, K3, LAMBDA,
    M1, M2, OMEGA, P_RAT, QA, QB, QC, S, T, BiPoly,
)
from bmseq.surd import QuadraticSurd

__all__ = [
    "CLAIMS",
    "IDENTITIES",
    "CertificationResult",
    "IdentityRecord",
    "PositivityClaim",
    "PositivityReport",
    "certify_poly_identity",
    "check_surd_identity",
    "default_surd_grid",
    "expand",
    "lattice",
    "positivity_scan",
]

Point = tuple[int, int]


@dataclass(frozen=True)
class IdentityRecord:
    """lhs(l, m) == rhs(l, m).

    For ``single_radical`` records the sides take a third argument, the
    surd sqrt(radicand(l, m)). ``degrees`` bounds (deg_m, deg_l) of
    lhs - rhs; ``variables`` names which of "l", "m" actually vary.
    """

    id: str
    kind: str
    lhs: Callable
    rhs: Callable
    description: str
    degrees: tuple[int, int] = (0, 0)
    variables: str = "lm"
    radicand: BiPoly | None = None
    grid: Callable[[], list[Point]] | None = None

    def __post_init__(self):
        if self.kind not in ("polynomial", "single_radical"):
            raise ValueError(f"unknown identity kind {self.kind!r}")
        if (self.kind == "single_radical") != (self.radicand is not None):
            raise ValueError(f"{self.id}: radicand iff single_radical")


@dataclass
class CertificationResult:
    id: str
    passed: bool
    points: int
    witness: tuple | None = None
    method: str = "grid"

    def __bool__(self):
        return self.passed


# --------------------------------------------------------------------------
# polynomial identities

_POLY = [
    IdentityRecord(
        "ID-G3", "polynomial",
        lambda l, m: G3(l, m) ** 2 - DELTA2(l, m),
        lambda l, m: 4 * (4 * m + 3) * (4 * m + 5) * (m + 2) ** 2 * (m + 1 + l) * (m + 1 - l),
        "G3^2 - Delta2 factors", (6, 2),
    ),
    IdentityRecord(
        "ID-G2", "polynomial",
        lambda l, m: G2(l, m) ** 2 * DELTA2(l, m) - G1(l, m) ** 2,
        lambda l, m: 4 * m**2 * (4 * m + 3) * (4 * m + 5) * (m + 1 + l) * (m + 1 - l) * (
            52 * m**4 + 64 * l**2 * m**3 + 160 * m**3 + 16 * l**4 * m**2 + 100 * l**2 * m**2
            + 161 * m**2 - 8 * l**2 * m + 80 * m - 32 * l**4 - 20 * l**2 + 18
        ),
        "G2^2 Delta2 - G1^2 factors (removes |G1|)", (10, 8),
    ),
    IdentityRecord(
        "ID-H", "polynomial",
        lambda l, m: H2(l, m) ** 2 * DELTA2(l, m) - H1(l, m) ** 2,
        lambda l, m: 256 * (m + 1) ** 2 * (4 * m + 3) ** 2 * (4 * m + 5) ** 2 * ((m + 1) ** 2 - l**2) ** 2 * (
            156 * m**8 + 192 * l**2 * m**7 + 636 * m**7 + 816 * l**2 * m**6 + 891 * m**6
            + 256 * l**4 * m**5 + 1256 * l**2 * m**5 + 498 * m**5 + 64 * l**6 * m**4
            + 720 * l**4 * m**4 + 812 * l**2 * m**4 + 87 * m**4 + 128 * l**6 * m**3
            + 576 * l**4 * m**3 + 208 * l**2 * m**3 + 48 * l**6 * m**2 + 88 * l**4 * m**2
            + 19 * l**2 * m**2 - 64 * l**4 * m - 16 * l**4
        ),
        "H2^2 Delta2 - H1^2 factors", (18, 12),
    ),
    IdentityRecord(
        "ID-P2", "polynomial",
        lambda l, m: P_RAT(l, m) ** 2 - DELTA2(l, m),
        lambda l, m: (
            64 * m**4 * (m**2 - l**2) + 128 * m**3 * (4 * m**2 - 3 * l**2)
            + 4 * m**2 * (415 * m**2 - 207 * l**2) + 8 * m * (349 * m**2 - 94 * l**2)
            + (2572 * m**2 - 240 * l**2) + 1232 * m + 240
        ),
        "rational part of P squared minus Delta2", (6, 4),
    ),
    IdentityRecord(
        "ID-OMEGA", "polynomial",
        lambda l, m: (2 * m + 3) ** 2 * OMEGA(l, m) - (8 * m**4 + 36 * m**3 + 74 * m**2 + 73 * m + 27) ** 2,
        lambda l, m: 4 * (4 * m + 3) * (4 * m + 5) * (m**2 + 6 * m + 6),
        "diagonal radicand omega, squared gap", (8, 0), "m",
    ),
    IdentityRecord(
        "ID-WRAD", "polynomial",
        lambda l, m: DELTA1(m, m + 1),
        lambda l, m: OMEGA(l, m),
        "Delta1(m, m+1) = omega(m)", (6, 0), "m",
    ),
    IdentityRecord(
        "ID-DISC31", "polynomial",
        lambda l, m: QB(l, m) ** 2 - 4 * QA(l, m) * QC(l, m),
        lambda l, m: 4 * m**2 * l**2 * (l + 1) ** 2 * DELTA1(l, m),
        "discriminant of the quadratic in d_{l+1}(m)/d_l(m)", (6, 8),
    ),
    IdentityRecord(
        "ID-DISC33", "polynomial",
        lambda l, m: CB(l, m) ** 2 - 4 * CA(l, m) * CC(l, m),
        lambda l, m: 4 * m**4 * (m + 1 - l) ** 2 * FELL(l, m),
        "discriminant of the quadratic in d_l(m+1)/d_l(m)", (14, 6),
    ),
    IdentityRecord(
        "ID-FDIAG", "polynomial",
        lambda l, m: FELL(l, l + 1),
        lambda l, m: (
            16 * l**8 + 128 * l**7 + 504 * l**6 + 1080 * l**5 + 1085 * l**4 + 44 * l**3
            - 826 * l**2 - 588 * l - 119
        ),
        "f_l(l+1) as an octic in l", (0, 8), "l",
    ),
    IdentityRecord(
        "ID-F0", "polynomial",
        lambda l, m: FELL(0, m),
        lambda l, m: -(m**2) * ((m - 1) * (12 * m**3 + 84 * m**2 + 131 * m + 123) + 119),
        "f_0(m) factored", (6, 0), "m",
    ),
    IdentityRecord(
        "ID-FAT0", "polynomial",
        lambda l, m: FELL(l, 0),
        lambda l, m: -4 * l**2,
        "f_l(0)", (0, 2), "l",
    ),
    IdentityRecord(
        "ID-FAT1", "polynomial",
        lambda l, m: FELL(l, 1),
        lambda l, m: 16 * l**4 + 328 * l**2 - 119,
        "f_l(1)", (0, 4), "l",
    ),
    IdentityRecord(
        "ID-SL", "polynomial",
        lambda l, m: S(l, l),
        lambda l, m: -(l**2) * (
            360 * l**10 + 1368 * l**9 + 2130 * l**8 + 1716 * l**7 + 822 * l**6 + 342 * l**5
            + 186 * l**4 + 96 * l**3 + 35 * l**2 + 4 * l + 1
        ),
        "S_l(l)", (0, 18), "l",
    ),
    IdentityRecord(
        "ID-SL1", "polynomial",
        lambda l, m: S(l, l + 1),
        lambda l, m: (
            312 * l**12 + 2880 * l**11 + 11402 * l**10 + 26950 * l**9 + 48379 * l**8
            + 84450 * l**7 + 146585 * l**6 + 211096 * l**5 + 223433 * l**4 + 164196 * l**3
            + 78696 * l**2 + 22230 * l + 2800
        ),
        "S_l(l+1)", (0, 18), "l",
    ),
    IdentityRecord(
        "ID-DSHIFT", "polynomial",
        lambda l, m: DELTA2(l, m),
        lambda l, m: DELTA1(l, m + 1),
        "Delta2(l, m) = Delta1(l, m+1)", (4, 4),
    ),
]


# --------------------------------------------------------------------------
# identities with one square root


def default_surd_grid() -> list[Point]:
    return [(l, m) for l in range(1, 13) for m in range(l + 1, l + 13)]


def _diagonal_grid() -> list[Point]:
    # l = m for the W(m, m+1) diagonal; the sides only use m
    return [(m, m) for m in range(1, 25)]


def _x2(l, m, r):
    return (m * (2 * m + 1) * (2 * l + 3) + r) / (4 * m * (l * l + l))


_DIAG_POLY = lambda m: 8 * m**4 + 36 * m**3 + 74 * m**2 + 73 * m + 27  # noqa: E731

_SURD = [
    IdentityRecord(
        "ID-GH", "single_radical",
        lambda l, m, r: (G1(l, m) + G2(l, m) * r) ** 2 - (G3(l, m) - r) ** 2 * DELTA1(l, m),
        lambda l, m, r: -H1(l, m) + H2(l, m) * r,
        "squared comparison after P W - Q, radical sqrt(Delta2)",
        radicand=DELTA2,
    ),
    IdentityRecord(
        "ID-KM", "single_radical",
        lambda l, m, r: (K1(l, m) + K2(l, m) * r) ** 2 - K3(l, m) ** 2 * FELL(l, m),
        lambda l, m, r: 4 * (m + l * l) * (
            m * m * M1(l, m) + (2 * l**4 + l * l) * m + l**4 + 3 * l * m**4 * (2 * m + 1) * r - m * m * M2(l, m)
        ),
        "squared comparison in U - y, radical sqrt(lambda)",
        radicand=LAMBDA,
    ),
    IdentityRecord(
        "ID-ST", "single_radical",
        lambda l, m, r: (M1(l, m) + 3 * l * m * m * (2 * m + 1) * r) ** 2 - M2(l, m) ** 2,
        lambda l, m, r: S(l, m) + T(l, m) * r,
        "(M1 + 3 l m^2 (2m+1) sqrt(lambda))^2 - M2^2 = S + T sqrt(lambda)",
        radicand=LAMBDA,
    ),
    IdentityRecord(
        "ID-X2", "single_radical",
        lambda l, m, r: Fraction(m - l, l + 1) - _x2(l, m, r),
        lambda l, m, r: -(m * (4 * l * l + 2 * l + 6 * m + 3) + r) / (4 * m * (l * l + l)),
        "(m-l)/(l+1) - x2, radical sqrt(Delta1)",
        radicand=DELTA1,
    ),
    IdentityRecord(
        "ID-WMM1", "single_radical",
        lambda l, m, r: W_value(m, m + 1),
        lambda l, m, r: (4 * m**3 + 16 * m**2 + 21 * m + 9 - r) / (4 * m * (m + 1) ** 2),
        "W(m, m+1) with radical sqrt(omega)",
        radicand=OMEGA, variables="m", grid=_diagonal_grid,
    ),
    IdentityRecord(
        "ID-WDIAG", "single_radical",
        lambda l, m, r: Fraction(2, 2 * m + 3) - W_value(m, m + 1),
        lambda l, m, r: ((2 * m + 3) * r - _DIAG_POLY(m)) / (4 * m * (2 * m + 3) * (m + 1) ** 2),
        "2/(2m+3) - W(m, m+1), radical sqrt(omega)",
        radicand=OMEGA, variables="m", grid=_diagonal_grid,
    ),
]

IDENTITIES: dict[str, IdentityRecord] = {r.id: r for r in _POLY + _SURD}


def _lookup(record) -> IdentityRecord:
    if isinstance(record, IdentityRecord):
        return record
    try:
        return IDENTITIES[record]
    except KeyError:
        raise KeyError(f"unknown identity {record!r}") from None


def certificate_grid(rec: IdentityRecord, pad: int = 2) -> list[Point]:
    """Cartesian grid with deg + 1 + pad distinct values per varying variable."""
    deg_m, deg_l = rec.degrees
    ls = list(range(1, deg_l + 2 + pad)) if "l" in rec.variables else [1]
    ms = list(range(2, deg_m + 3 + pad)) if "m" in rec.variables else [2]
    return [(l, m) for l in ls for m in ms]


def certify_poly_identity(record, pad: int = 2) -> CertificationResult:
    rec = _lookup(record)
    if rec.kind != "polynomial":
        raise ValueError(f"{rec.id} is not a polynomial identity")
    pts = certificate_grid(rec, pad)
    for l, m in pts:
        a, b = rec.lhs(l, m), rec.rhs(l, m)
        if a != b:
            return CertificationResult(rec.id, False, len(pts), (l, m, a, b))
    return CertificationResult(rec.id, True, len(pts))


def expand(record) -> BiPoly:
    """lhs - rhs of a polynomial identity, in coefficient form."""
    rec = _lookup(record)
    if rec.kind != "polynomial":
        raise ValueError(f"{rec.id} is not a polynomial identity")
    return rec.lhs(polys.L, polys.M) - rec.rhs(polys.L, polys.M)


def check_surd_identity(record, grid: Iterable[Point] | None = None) -> CertificationResult:
    rec = _lookup(record)
    if rec.kind != "single_radical":
        raise ValueError(f"{rec.id} is not a single-radical identity")
    if grid is None:
        grid = rec.grid() if rec.grid else default_surd_grid()
    pts = list(grid)
    for l, m in pts:
        r = QuadraticSurd.sqrt(rec.radicand(l, m))
        a = _as_surd(rec.lhs(l, m, r))
        b = _as_surd(rec.rhs(l, m, r))
        if a != b:
            return CertificationResult(rec.id, False, len(pts), (l, m, a, b), method="pointwise")
    return CertificationResult(rec.id, True, len(pts), method="pointwise")


def _as_surd(x) -> QuadraticSurd:
    return x if isinstance(x, QuadraticSurd) else QuadraticSurd(x)


# --------------------------------------------------------------------------
# sign claims


def lattice(l_lo: int, l_hi: int, dm_lo: int = 1, dm_hi: int = 20) -> list[Point]:
    """(l, m) with l_lo <= l <= l_hi and l + dm_lo <= m <= l + dm_hi."""
    return [(l, m) for l in range(l_lo, l_hi + 1) for m in range(l + dm_lo, l + dm_hi + 1)]


def _transposed(l: int, m: int) -> bool:
    return l >= 1 and m >= l + 1


@dataclass(frozen=True)
class PositivityClaim:
    """Every value returned by ``expression`` has sign ``sign`` (strictly unless not ``strict``)."""

    id: str
    description: str
    expression: Callable[[int, int], tuple]
    domain: Callable[[int, int], bool] = _transposed
    sign: int = 1
    strict: bool = True
    default_points: Callable[[], list[Point]] = field(default=lambda: lattice(1, 30, 1, 40))


def _sq(D) -> QuadraticSurd:
    return QuadraticSurd.sqrt(D)


def _univariate(l_hi: int) -> Callable[[], list[Point]]:
    return lambda: [(l, l) for l in range(1, l_hi + 1)]


_CLAIMS = [
    PositivityClaim(
        "PC-P", "P = (8m^3+32m^2+43m-4l^2m-4l^2+19) - sqrt(Delta2) > 0, rational part > 0",
        lambda l, m: (P_RAT(l, m), P_RAT(l, m) - _sq(DELTA2(l, m))),
        domain=lambda l, m: 1 <= l <= m - 1,
    ),
    PositivityClaim("PC-D2F", "Delta2 > 0 and F > 0", lambda l, m: (DELTA2(l, m), F(l, m))),
    PositivityClaim("PC-DELTA1", "Delta1 > 0", lambda l, m: (DELTA1(l, m),)),
    PositivityClaim("PC-G32", "G3 > G2 > 0", lambda l, m: (G3(l, m) - G2(l, m), G2(l, m))),
    PositivityClaim(
        "PC-G3D2", "G3 - sqrt(Delta2) > 0", lambda l, m: (G3(l, m) - _sq(DELTA2(l, m)),)
    ),
    PositivityClaim(
        "PC-G12", "G1 + G2 sqrt(Delta2) > 0", lambda l, m: (G1(l, m) + G2(l, m) * _sq(DELTA2(l, m)),)
    ),
    PositivityClaim("PC-H", "H1 > 0 and H2 > 0", lambda l, m: (H1(l, m), H2(l, m))),
    PositivityClaim(
        "PC-HD2", "H2 sqrt(Delta2) - H1 > 0", lambda l, m: (H2(l, m) * _sq(DELTA2(l, m)) - H1(l, m),)
    ),
    PositivityClaim("PC-K", "K1, K2, K3 > 0", lambda l, m: (K1(l, m), K2(l, m), K3(l, m))),
    PositivityClaim("PC-M", "M1 > 0 and M2 > 0", lambda l, m: (M1(l, m), M2(l, m))),
    PositivityClaim("PC-S", "S_l(m) > 0 for m >= l+1", lambda l, m: (S(l, m),)),
    PositivityClaim("PC-T", "T_l(m) > 0", lambda l, m: (T(l, m),)),
    PositivityClaim(
        "PC-ST", "S + T sqrt(lambda) > 0", lambda l, m: (S(l, m) + T(l, m) * _sq(LAMBDA(l, m)),)
    ),
    PositivityClaim(
        "PC-SLNEG", "S_l(l) < 0", lambda l, m: (S(l, l),),
        domain=lambda l, m: l >= 1, sign=-1, default_points=_univariate(30),
    ),
    PositivityClaim(
        "PC-SL1", "S_l(l+1) > 0", lambda l, m: (S(l, l + 1),),
        domain=lambda l, m: l >= 1, default_points=_univariate(30),
    ),
    PositivityClaim(
        "PC-FDIAG", "f_l(l+1) > 0", lambda l, m: (FELL(l, l + 1),),
        domain=lambda l, m: l >= 1, default_points=_univariate(30),
    ),
    PositivityClaim(
        "PC-F0", "f_0(m) < 0 for m >= 1", lambda l, m: (FELL(0, m),),
        domain=lambda l, m: m >= 1, sign=-1,
        default_points=lambda: [(0, m) for m in range(1, 201)],
    ),
    PositivityClaim(
        "PC-OMEGA", "(2m+3) sqrt(omega) - (8m^4+36m^3+74m^2+73m+27) > 0",
        lambda l, m: ((2 * m + 3) * _sq(OMEGA(l, m)) - _DIAG_POLY(m),),
        domain=lambda l, m: m >= 1,
        default_points=lambda: [(m, m) for m in range(1, 201)],
    ),
    PositivityClaim(
        "PC-110", "(m-l+1)m^3/((m-l)(m+1)(m^2+1)) - (m^2+1)/m^2 > 0 for l >= 2",
        lambda l, m: (lb_transposed_bound(l, m) - Fraction(m * m + 1, m * m),),
        domain=lambda l, m: l >= 2 and m >= l + 1,
        default_points=lambda: lattice(2, 30, 1, 40),
    ),
]

CLAIMS: dict[str, PositivityClaim] = {c.id: c for c in _CLAIMS}


@dataclass
class PositivityReport:
    claim_id: str
    examined: int
    skipped: int
    violations: list[tuple[int, int, object]]
    label: str = "scanned domain"

    @property
    def ok(self) -> bool:
        return not self.violations and self.examined > 0


def _sign_of(x) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def positivity_scan(
    claim,
    points: Iterable[Point] | None = None,
    domain: Callable[[int, int], bool] | None = None,
) -> PositivityReport:
    """Exact sign of every claimed value at every in-domain point.

    ``domain`` overrides the claim's own hypothesis (to probe its edges).
    """
    if isinstance(claim, str):
        try:
            claim = CLAIMS[claim]
        except KeyError:
            raise KeyError(f"unknown claim {claim!r}") from None
    pts = list(points) if points is not None else claim.default_points()
    dom = domain or claim.domain
    examined = skipped = 0
    violations = []
    for l, m in pts:
        if not dom(l, m):
            skipped += 1
            continue
        examined += 1
        for value in claim.expression(l, m):
            s = _sign_of(value)
            good = s == claim.sign or (not claim.strict and s == 0)
            if not good:
                violations.append((l, m, value))
                break
    return PositivityReport(claim.id, examined, skipped, violations)
