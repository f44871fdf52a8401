"""Bounded searches: odd-Jacobian pairs, inert-place census, Dirichlet sanity
counts and the hyperelliptic finiteness window."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError, FormulaError
from .ffpoly import FieldSpec, Place, RamSet, count_irreducibles, monic_irreducibles
from .modcurve import ODD, QuotientRecord, classify_quotient, hyperelliptic_max_r, hyperelliptic_window
from .symbols import legendre_euler, legendre_fast

__all__ = [
    "SearchResult",
    "find_odd_pairs",
    "inert_degree2_census",
    "dirichlet_check",
    "hyperelliptic_survey",
]


@dataclass(frozen=True)
class SearchResult:
    q: int
    deg_x: int
    deg_y: int
    hits: tuple[tuple[Place, Place, QuotientRecord], ...]
    census: dict[str, int] = field(default_factory=dict)


def _scan(F: FieldSpec, xs: list[Place], ys: list[Place]) -> tuple[list[tuple[Place, Place, QuotientRecord]], int, int]:
    hits, pairs, minus = [], 0, 0
    for x in xs:
        for y in ys:
            if x == y:
                continue
            pairs += 1
            rec = classify_quotient(F.q, RamSet.of(x, y), y)
            minus += rec.conditions["symbol"]
            if rec.parity == ODD:
                hits.append((x, y, rec))
    return hits, pairs, minus


def find_odd_pairs(F: FieldSpec, deg_x: int, deg_y: int, jobs: int = 1) -> SearchResult:
    """All ordered pairs (x, y) of the given degrees with X^(y) odd for R = {x, y}.

    With ``jobs > 1`` the x-list is split across worker processes; the merged
    result is identical to the serial one.
    """
    if not F.is_odd:
        raise DomainError("odd-Jacobian search needs q odd")
    if deg_x % 2 or deg_y % 2 or deg_x < 2 or deg_y < 2:
        raise DomainError(f"degrees must be even and >= 2, got ({deg_x}, {deg_y})")
    xs, ys = monic_irreducibles(F, deg_x), monic_irreducibles(F, deg_y)
    if jobs <= 1 or len(xs) < 2:
        parts = [_scan(F, xs, ys)]
    else:
        chunks = [xs[k::jobs] for k in range(jobs) if xs[k::jobs]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_scan, [F] * len(chunks), chunks, [ys] * len(chunks)))
    hits = sorted(
        (h for part in parts for h in part[0]),
        key=lambda h: (h[0].poly.sort_key(), h[1].poly.sort_key()),
    )
    census = {
        "places_x": len(xs),
        "places_y": len(ys),
        "pairs": sum(p[1] for p in parts),
        "symbol_minus_one": sum(p[2] for p in parts),
        "odd": len(hits),
    }
    return SearchResult(F.q, deg_x, deg_y, tuple(hits), census)


def inert_degree2_census(x: Place) -> int:
    """Degree-2 places y != x at which p_x is a non-square; must equal (q^2-1)/4."""
    F = x.field
    if not F.is_odd:
        raise DomainError("inert census needs q odd")
    if x.deg != 2:
        raise DomainError(f"x must have degree 2, got {x.deg}")
    n = sum(1 for y in monic_irreducibles(F, 2) if y != x and legendre_euler(x.poly, y) == -1)
    q = F.q
    if n != (q * q - 1) // 4:
        raise FormulaError(f"inert census {n} != (q^2-1)/4 = {(q * q - 1) // 4} for x = {x}")
    return n


@dataclass(frozen=True)
class DirichletRow:
    degree: int
    places: int
    nonresidues: int
    heuristic: float
    reciprocity_ok: bool


def dirichlet_check(y: Place, dmax: int) -> list[DirichletRow]:
    """For each even d <= dmax: degree-d places x with (p_x / p_y) = -1.

    The heuristic column is half the number of degree-d places and is only
    reported.  When deg y is even, reciprocity forces (p_y / p_x) = -1 on every
    such x; ``reciprocity_ok`` records whether it did.
    """
    F = y.field
    if not F.is_odd:
        raise DomainError("Dirichlet census needs q odd")
    rows = []
    for d in range(2, dmax + 1, 2):
        places = [x for x in monic_irreducibles(F, d) if x != y]
        hits = [x for x in places if legendre_fast(x.poly, y) == -1]
        ok = y.deg % 2 == 1 or all(legendre_fast(y.poly, x) == -1 for x in hits)
        rows.append(DirichletRow(d, len(places), len(hits), count_irreducibles(F.q, d) / 2, ok))
    return rows


def hyperelliptic_survey(q: int) -> list[tuple[int, bool]]:
    """(r, q^(r/2) < 32 q^3 r) for r = 2 .. max_r + 2."""
    top = hyperelliptic_max_r(q) + 2
    return [(r, hyperelliptic_window(q, r)) for r in range(2, top + 1)]
