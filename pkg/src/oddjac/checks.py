"""Invariant suite (``selftest``) and the reproduction table (``table``).

Each check returns ``(name, ok, detail)``; nothing here raises on failure.
"""

from __future__ import annotations

import itertools
import time
from typing import Callable, Iterator

from .classnum import QuadDisc, class_number, class_number_bruteforce, cornelissen_parity, l_polynomial, point_count, RAMIFIED, INERT
from .ffpoly import FieldSpec, Poly, RamSet, all_polys, count_irreducibles, monic_irreducibles, places_up_to
from .modcurve import (
    ODD,
    classify_quotient,
    deficient_places_xr,
    genus_quotient,
    genus_xr,
    hyperelliptic_max_r,
)
from .search import find_odd_pairs, hyperelliptic_survey, inert_degree2_census
from .symbols import legendre_euler, legendre_fast, reciprocity_sign

Check = tuple[str, bool, str]

F3, F5, F7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)
F4 = FieldSpec(2, 2, (1, 1, 1))


def imaginary_discriminants(F: FieldSpec, max_deg: int) -> Iterator[QuadDisc]:
    """Every squarefree D with 1 <= deg D <= max_deg whose infinity is not split."""
    for f in all_polys(F, max_deg, include_zero=False):
        if f.degree < 1:
            continue
        try:
            D = QuadDisc(f)
        except ValueError:
            continue
        if D.infinity_type in (RAMIFIED, INERT):
            yield D


def check_irreducible_counts() -> Check:
    for F, d in itertools.product((F3, F5), range(1, 5)):
        pl = monic_irreducibles(F, d)
        if len(pl) != count_irreducibles(F.q, d):
            return "irreducible counts", False, f"q={F.q} d={d}"
        if sum(e * count_irreducibles(F.q, e) for e in range(1, d + 1) if d % e == 0) != F.q**d:
            return "irreducible counts", False, f"necklace identity q={F.q} d={d}"
    return "irreducible counts", True, "q in {3,5}, d <= 4"


def check_divmod() -> Check:
    for a in all_polys(F3, 3):
        for b in all_polys(F3, 2, include_zero=False):
            qt, r = divmod(a, b)
            if qt * b + r != a or r.degree >= b.degree:
                return "divmod round trip", False, f"{a} / {b}"
    return "divmod round trip", True, "q=3, deg a <= 3, deg b <= 2"


def check_symbol_agreement(fields=(F3, F5), max_deg: int = 3) -> Check:
    n = 0
    for F in fields:
        pl = places_up_to(F, max_deg)
        for a in all_polys(F, max_deg):
            for x in pl:
                n += 1
                if legendre_fast(a, x) != legendre_euler(a, x):
                    return "symbol agreement", False, f"q={F.q} a={a} x={x}"
    return "symbol agreement", True, f"{n} pairs"


def check_reciprocity(fields=(F3, F5, F7), max_deg: int = 3) -> Check:
    n = 0
    for F in fields:
        pl = places_up_to(F, max_deg)
        for x, y in itertools.combinations(pl, 2):
            n += 1
            if legendre_fast(y.poly, x) * legendre_fast(x.poly, y) != reciprocity_sign(F.q, x.deg, y.deg):
                return "reciprocity law", False, f"q={F.q} x={x} y={y}"
    return "reciprocity law", True, f"{n} unordered pairs"


def check_square_density() -> Check:
    for x in places_up_to(F3, 2):
        res = [Poly(F3, c) for c in itertools.product(range(3), repeat=x.deg)]
        plus = sum(1 for a in res if not a.is_zero() and legendre_euler(a, x) == 1)
        if plus != (x.q_x - 1) // 2:
            return "square density", False, str(x)
    return "square density", True, "q=3, deg <= 2"


def check_multiplicativity() -> Check:
    pl = places_up_to(F3, 2)
    polys = list(all_polys(F3, 2))
    for x in pl:
        for a, b in itertools.product(polys, repeat=2):
            if legendre_fast(a * b, x) != legendre_fast(a, x) * legendre_fast(b, x):
                return "multiplicativity", False, f"{a}, {b} mod {x}"
    return "multiplicativity", True, "q=3, deg <= 2"


def check_cornelissen() -> Check:
    cases = [(F3, 2), (F5, 2), (F3, 4)]
    for F, d in cases:
        for y in monic_irreducibles(F, d):
            h = class_number(QuadDisc.from_place(y))
            if h % 4 != cornelissen_parity(d):
                return "class number mod 4", False, f"q={F.q} y={y} h={h}"
    return "class number mod 4", True, "q=3 deg 2,4; q=5 deg 2"


def check_oracle(max_deg: int = 4) -> Check:
    n = 0
    for D in imaginary_discriminants(F3, max_deg):
        n += 1
        if class_number(D) != class_number_bruteforce(D):
            return "oracle agreement", False, str(D)
    return "oracle agreement", True, f"{n} discriminants, q=3, deg <= {max_deg}"


def check_lpoly_roundtrip() -> Check:
    for D in imaginary_discriminants(F3, 4):
        L = l_polynomial(D)
        for i in range(1, 2 * L.g + 1):
            if L.predicted_count(i) != point_count(D, i):
                return "L-polynomial round trip", False, f"{D} i={i}"
    return "L-polynomial round trip", True, "q=3, deg <= 4, i <= 2g"


def check_deficient_consistency() -> Check:
    for F, md in ((F3, 3), (F5, 3), (F4, 2)):
        for x, y in itertools.combinations(places_up_to(F, md), 2):
            R = RamSet.of(x, y)
            dset, _ = deficient_places_xr(F.q, R)
            if (dset == frozenset(R)) != (genus_xr(F.q, R) % 2 == 0):
                return "deficient <=> even genus", False, f"q={F.q} R={R}"
    return "deficient <=> even genus", True, "q in {3,5} deg <= 3; q=4 deg <= 2"


def check_parity_equivalence() -> Check:
    even = [x for x in places_up_to(F3, 4) if x.deg % 2 == 0]
    n = 0
    for x, y in itertools.permutations(even, 2):
        R = RamSet.of(x, y)
        rec = classify_quotient(3, R, y)
        n += 1
        if (rec.parity == ODD) != (genus_quotient(3, R, y) % 2 == 0):
            return "parity <=> even quotient genus", False, f"x={x} y={y}"
    return "parity <=> even quotient genus", True, f"{n} ordered pairs, q=3"


def check_inert_census() -> Check:
    for F in (F3, F5, F7):
        for x in monic_irreducibles(F, 2):
            inert_degree2_census(x)
    return "inert census", True, "q in {3,5,7}"


def check_survey_monotone() -> Check:
    for q in (2, 3, 4, 5, 7, 9):
        flags = [ok for _, ok in hyperelliptic_survey(q)]
        if flags != sorted(flags, reverse=True):
            return "hyperelliptic window", False, f"q={q}"
    maxes = [hyperelliptic_max_r(q) for q in (3, 4, 5, 7, 9)]
    if maxes != sorted(maxes, reverse=True):
        return "hyperelliptic window", False, str(maxes)
    return "hyperelliptic window", True, f"max r for q=3,4,5,7,9: {maxes}"


INVARIANTS: list[Callable[[], Check]] = [
    check_irreducible_counts,
    check_divmod,
    check_symbol_agreement,
    check_multiplicativity,
    check_reciprocity,
    check_square_density,
    check_cornelissen,
    check_oracle,
    check_lpoly_roundtrip,
    check_deficient_consistency,
    check_parity_equivalence,
    check_inert_census,
    check_survey_monotone,
]


def run_invariants() -> Iterator[Check]:
    for fn in INVARIANTS:
        try:
            yield fn()
        except Exception as exc:  # reported, not raised
            yield fn.__name__, False, f"{type(exc).__name__}: {exc}"


# -- reproduction table ----------------------------------------------------------


def acceptance_table(jobs: int = 4) -> Iterator[tuple[int, str, bool, str, float]]:
    """Rows (number, title, ok, measured, seconds)."""
    from .report import render_search

    def timed(fn):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return ok, detail, time.perf_counter() - t0

    def c1():
        two = {q: genus_xr(q, [2, 2]) for q in (3, 5)}
        one = {q: genus_xr(q, [1, 1]) for q in (3, 5, 7)}
        for F in (F3, F5):
            a, b = monic_irreducibles(F, 2)[:2]
            two[F.q] = genus_xr(F.q, RamSet.of(a, b))
        return all(two[q] == q * q for q in two) and all(v == 0 for v in one.values()), f"deg(2,2): {two}; deg(1,1): {one}"

    def c2():
        vals = []
        for x, y in itertools.permutations(monic_irreducibles(F3, 2), 2):
            if legendre_fast(y.poly, x) == -1:
                vals.append(genus_quotient(3, RamSet.of(x, y), y))
        return bool(vals) and all(v == 4 for v in vals), f"{len(vals)} pairs, genera {sorted(set(vals))}"

    def c3():
        res = find_odd_pairs(F3, 2, 2)
        ok = bool(res.hits) and all(rec.deficient == (x,) and rec.sha_certificate for x, _, rec in res.hits)
        return ok, f"{len(res.hits)} hits of {res.census['pairs']} pairs"

    def c4():
        counts = {F.q: sorted({inert_degree2_census(x) for x in monic_irreducibles(F, 2)}) for F in (F3, F5, F7)}
        return all(v == [(q * q - 1) // 4] for q, v in counts.items()), str(counts)

    def c5():
        _, ok, detail = check_reciprocity()
        return ok, detail

    def c6():
        _, ok, detail = check_symbol_agreement()
        return ok, detail

    def c7():
        _, ok, detail = check_cornelissen()
        return ok, detail

    def c8():
        _, ok, detail = check_oracle()
        return ok, detail

    def c9():
        _, ok, detail = check_parity_equivalence()
        return ok, detail

    def c10():
        r = hyperelliptic_max_r(3)
        return r == 17, f"max r = {r}"

    def c11():
        a = render_search(find_odd_pairs(F3, 2, 2, jobs=1), "tsv")
        b = render_search(find_odd_pairs(F3, 2, 2, jobs=jobs), "tsv")
        return a == b, f"jobs=1 vs jobs={jobs}: {'identical' if a == b else 'differ'}"

    rows = [
        (1, "genus table", c1),
        (2, "quotient dimension (q^2-1)/2", c2),
        (3, "odd-Jacobian existence", c3),
        (4, "inert census (q^2-1)/4", c4),
        (5, "reciprocity suite", c5),
        (6, "symbol oracle equivalence", c6),
        (7, "class-number parity", c7),
        (8, "oracle agreement", c8),
        (9, "parity-genus equivalence", c9),
        (10, "finiteness window", c10),
        (11, "determinism across --jobs", c11),
    ]
    for num, title, fn in rows:
        ok, detail, secs = timed(fn)
        yield num, title, ok, detail, secs
