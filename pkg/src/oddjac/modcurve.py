"""Closed-form invariants of X^R and of its Atkin-Lehner quotients X^(y).

All genus arithmetic is exact (``fractions.Fraction``); any non-integral or
negative result raises ``FormulaError``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .classnum import QuadDisc, class_number
from .errors import DomainError, FormulaError
from .ffpoly import INFINITY, InfinitePlace, Place, RamSet, nonsquare_xi, odd_indicator
from .symbols import legendre_fast

__all__ = [
    "EVEN",
    "ODD",
    "OUT_OF_SCOPE",
    "QuotientRecord",
    "CurveReport",
    "DivisorVerdict",
    "genus_xr",
    "fixed_points",
    "genus_quotient",
    "genus_quotient_expanded",
    "deficient_places_xr",
    "classify_quotient",
    "curve_report",
    "divisor_existence",
    "long_edge_count",
    "hyperelliptic_bound",
    "hyperelliptic_max_r",
    "hyperelliptic_window",
]

EVEN, ODD, OUT_OF_SCOPE = "even", "odd", "out-of-scope"


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise FormulaError(f"{what} = {x} is not a nonnegative integer")
    return int(x)


def _check_q(q: int, R: RamSet) -> None:
    if q != R.q:
        raise DomainError(f"q = {q} but R lives over F_{R.q}")


def genus_xr(q: int, R: RamSet | Sequence[int]) -> int:
    """Genus of X^R.  ``R`` may also be given as the list of its degrees."""
    if isinstance(R, RamSet):
        _check_q(q, R)
        degs = R.degrees
    else:
        degs = tuple(R)
        if len(degs) < 2 or len(degs) % 2 or min(degs) < 1:
            raise DomainError(f"#R must be even and >= 2 with positive degrees, got {degs}")
    odd = int(all(d % 2 for d in degs))
    g = 1 + Fraction(prod(q**d - 1 for d in degs), q * q - 1) - Fraction(q, q + 1) * 2 ** (len(degs) - 1) * odd
    return _as_int(g, "g(X^R)")


def _xi_symbols(R: RamSet, y: Place) -> tuple[int, dict[Place, int]]:
    F = R.field
    if not F.is_odd:
        raise DomainError("Atkin-Lehner fixed points need q odd")
    if y not in R:
        raise DomainError(f"{y} is not in R")
    xi = nonsquare_xi(F)
    d = y.poly.scale(xi)
    return xi, {x: legendre_fast(d, x) for x in R}


def fixed_points(q: int, R: RamSet, y: Place) -> int:
    """Fix(w_y) = h(xi p_y) * prod_{x in R} (1 - (xi p_y / p_x))."""
    _check_q(q, R)
    xi, syms = _xi_symbols(R, y)
    h = class_number(QuadDisc.from_place(y, xi))
    return h * prod(1 - s for s in syms.values())


def genus_quotient(q: int, R: RamSet, y: Place, fix: int | None = None) -> int:
    """g(X^(y)) by Hurwitz, cross-checked against the expanded closed form."""
    _check_q(q, R)
    if fix is None:
        fix = fixed_points(q, R, y)
    g = Fraction(genus_xr(q, R) + 1, 2) - Fraction(fix, 4)
    value = _as_int(g, f"g(X^(y)) for y = {y}")
    if value != genus_quotient_expanded(q, R, y):
        raise FormulaError(f"Hurwitz and expanded genus disagree for y = {y}")
    return value


def genus_quotient_expanded(q: int, R: RamSet, y: Place) -> Fraction:
    """1 + prod(q_x - 1) / (2(q^2-1)) - (h/4) prod(1 - symbol) - (q/(q+1)) 2^{#R-2} Odd(R).

    The last term vanishes under the standing even-degree hypothesis; it is
    kept so that the identity with the Hurwitz form holds for every R.
    """
    xi, syms = _xi_symbols(R, y)
    h = class_number(QuadDisc.from_place(y, xi))
    odd = odd_indicator(R)
    return (
        1
        + Fraction(prod(x.q_x - 1 for x in R), 2 * (q * q - 1))
        - Fraction(h, 4) * prod(1 - s for s in syms.values())
        - Fraction(q, q + 1) * 2 ** (len(R) - 2) * odd
    )


def deficient_places_xr(q: int, R: RamSet) -> tuple[frozenset[Place], str]:
    """Deficient places of X^R; the Jacobian of X^R is always even."""
    _check_q(q, R)
    if q % 2 == 0 or (len(R) == 2 and odd_indicator(R)):
        return frozenset(R), EVEN
    return frozenset(), EVEN


@dataclass(frozen=True)
class QuotientRecord:
    """Classification of X^(y) = X^R / w_y."""

    y: Place
    fix: int | None
    genus_quotient: int | None
    deficient: tuple[Place, ...]
    parity: str
    sha_certificate: bool
    conditions: dict[str, bool]
    extrapolated: bool = False
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CurveReport:
    q: int
    R: RamSet
    genus_XR: int
    records: tuple[QuotientRecord, ...] = field(default_factory=tuple)

    def to_json_rows(self) -> list[dict]:
        return [
            {
                "q": self.q,
                "R": [str(x) for x in self.R],
                "genus_XR": self.genus_XR,
                "y": str(r.y),
                "fix": r.fix,
                "genus_quotient": r.genus_quotient,
                "deficient": [str(x) for x in r.deficient],
                "parity": r.parity,
                "sha_certificate": r.sha_certificate,
                "conditions": dict(r.conditions),
            }
            for r in self.records
        ]


def classify_quotient(q: int, R: RamSet, y: Place) -> QuotientRecord:
    """Deficient places and Jacobian parity of X^(y).

    Verdicts are only issued for q odd with every place of R of even degree;
    elsewhere the record is ``out-of-scope`` (numbers are still reported when
    they can be computed, flagged ``extrapolated``).
    """
    _check_q(q, R)
    if y not in R:
        raise DomainError(f"{y} is not in R")
    others = [x for x in R if x != y]
    cond_card = len(R) == 2
    cond_deg = y.deg % 4 != 0
    notes: list[str] = []

    if q % 2 == 0:
        conds = {"cardinality": cond_card, "symbol": False, "degree_mod4": cond_deg}
        return QuotientRecord(y, None, None, (), OUT_OF_SCOPE, False, conds, notes=("q even: no symbol machinery",))

    sym = legendre_fast(y.poly, others[0]) if cond_card else None
    cond_sym = sym == -1
    conds = {"cardinality": cond_card, "symbol": cond_sym, "degree_mod4": cond_deg}
    fix = fixed_points(q, R, y)
    in_scope = all(x.deg % 2 == 0 for x in R)
    try:
        gq: int | None = genus_quotient(q, R, y, fix)
    except FormulaError as exc:
        if in_scope:
            raise
        gq = None
        notes.append(str(exc))

    if not in_scope:
        notes.append("odd-degree place in R: outside the proven range")
        return QuotientRecord(y, fix, gq, (), OUT_OF_SCOPE, False, conds, extrapolated=True, notes=tuple(notes))

    if cond_card and cond_sym and cond_deg:
        deficient, parity = (others[0],), ODD
    else:
        deficient, parity = (), EVEN
    assert gq is not None
    if (parity == ODD) != (gq % 2 == 0):
        raise FormulaError(f"parity verdict {parity} contradicts g(X^(y)) = {gq}")
    sha = parity == ODD and cond_card and others[0].deg == 2 and y.deg == 2
    if cond_card and others[0].deg == 2 and y.deg == 2 and not cond_sym:
        notes.append(f"symbol +1: dim J^(y) = {gq} = (q^2+1)/2, not (q^2-1)/2")
    return QuotientRecord(y, fix, gq, deficient, parity, sha, conds, notes=tuple(notes))


def curve_report(q: int, R: RamSet, ys: Sequence[Place] | None = None) -> CurveReport:
    _check_q(q, R)
    ys = list(R) if ys is None else list(ys)
    return CurveReport(q, R, genus_xr(q, R), tuple(classify_quotient(q, R, y) for y in ys))


NONEMPTY, EMPTY, UNDETERMINED = "nonempty", "empty", "undetermined"


@dataclass(frozen=True)
class DivisorVerdict:
    status: str
    reason: str


def divisor_existence(
    curve: str,
    x: Place | InfinitePlace,
    d: int,
    q: int,
    R: RamSet,
    y: Place | None = None,
) -> DivisorVerdict:
    """Is there an F_x-rational divisor of degree d on X^R (``"XR"``) or X^(y) (``"Xy"``)?"""
    _check_q(q, R)
    if x is not INFINITY and not isinstance(x, Place):
        raise DomainError(f"not a place: {x!r}")
    if curve == "XR":
        if x not in R:
            return DivisorVerdict(NONEMPTY, "x outside R: rational divisors in every degree")
        if d % 2 == 0:
            return DivisorVerdict(NONEMPTY, "x in R, even degree: trace of a quadratic point")
        return DivisorVerdict(EMPTY, "x in R, odd degree: no point over an odd-degree extension")
    if curve != "Xy":
        raise DomainError(f"curve must be 'XR' or 'Xy', got {curve!r}")
    if y is None or y not in R:
        raise DomainError("X^(y) needs y in R")
    if x not in R or x == y:
        return DivisorVerdict(NONEMPTY, "x outside R or x = y: rational divisors in every degree")
    if d % 2 == 0:
        return DivisorVerdict(NONEMPTY, "x in R - y, even degree: pushforward from X^R")
    assert isinstance(x, Place)
    if q % 2 and x.deg % 2 == 0 and y.deg % 2 == 0:
        return DivisorVerdict(EMPTY, "x, y of even degree, q odd: reciprocity obstruction")
    return DivisorVerdict(UNDETERMINED, "reduces to odd-degree rational point")


def long_edge_count(q: int, R: RamSet, x: Place) -> int:
    """Number of length-(q+1) edges in the dual graph of the Mumford curve at x."""
    _check_q(q, R)
    if x not in R:
        raise DomainError(f"{x} is not in R")
    rest = [z for z in R if z != x]
    return 2 ** (len(R) - 1) * odd_indicator(rest) * (1 - odd_indicator([x]))


def hyperelliptic_bound(q: int, R: RamSet, x: Place) -> tuple[bool, int, int]:
    """prod_{z in R + x} (q_z - 1) <= 4 (q_x^2 + 1)(q^2 - 1), exactly.

    ``holds = False`` certifies that no X^(y) for this R is hyperelliptic.
    """
    _check_q(q, R)
    if not isinstance(x, Place):
        raise DomainError("the witness place must be finite")
    if x in R:
        raise DomainError(f"witness {x} must lie outside R")
    lhs = prod(z.q_x - 1 for z in R) * (x.q_x - 1)
    rhs = 4 * (x.q_x**2 + 1) * (q * q - 1)
    return lhs <= rhs, lhs, rhs


def hyperelliptic_window(q: int, r: int) -> bool:
    """q^(r/2) < 32 q^3 r, compared as q^r < (32 q^3 r)^2."""
    return q**r < (32 * q**3 * r) ** 2


def hyperelliptic_max_r(q: int) -> int:
    """Largest r with q^(r/2) < 32 q^3 r."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    # r*log q - 2 log r increases for r >= 3, so the first failure past 3 is final
    r, best = 1, 0
    while True:
        if hyperelliptic_window(q, r):
            best = r
        elif r >= 3:
            return best
        r += 1

