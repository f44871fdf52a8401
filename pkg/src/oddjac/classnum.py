"""Class numbers of the orders F_q[T, sqrt(D)] for squarefree D, q odd.

The main route counts points on y^2 = D(T) over F_{q^i}, rebuilds the
L-polynomial of the smooth model and evaluates it at 1.  The oracle route
never counts points: it enumerates primitive ideals of small norm and sorts
them into classes by exhaustive search for generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import mpmath
import numpy as np
from sympy import factorint

from . import accel
from .errors import DomainError, FormulaError
from .ffpoly import FieldSpec, Place, Poly, _pdivmod, _pmul, all_polys, monic_irreducibles, monic_polys, nonsquare_xi, poly_gcd

__all__ = [
    "RAMIFIED",
    "INERT",
    "SPLIT",
    "QuadDisc",
    "LPolynomial",
    "affine_count",
    "infinite_points",
    "point_count",
    "l_polynomial",
    "class_number",
    "class_number_bruteforce",
    "cornelissen_parity",
]

RAMIFIED, INERT, SPLIT = "ramified", "inert", "split"


@dataclass(frozen=True)
class QuadDisc:
    """Squarefree D in F_q[T] (q odd) defining the order F_q[T, sqrt(D)]."""

    d: Poly

    def __post_init__(self) -> None:
        F = self.d.field
        if not F.is_odd:
            raise DomainError(f"quadratic discriminants need q odd (q = {F.q})")
        if self.d.is_zero() or self.d.degree < 1:
            raise DomainError("discriminant must have degree >= 1")
        if poly_gcd(self.d, self.d.derivative()).degree != 0:
            raise DomainError(f"discriminant {self.d} is not squarefree")

    @classmethod
    def from_place(cls, place: Place, xi: int | None = None) -> QuadDisc:
        """D = xi * p_y, with xi the canonical non-square by default."""
        F = place.field
        if xi is None:
            xi = nonsquare_xi(F)
        if xi == 0:
            raise DomainError("xi must be nonzero")
        return cls(place.poly.scale(xi))

    @property
    def field(self) -> FieldSpec:
        return self.d.field

    @property
    def degree(self) -> int:
        return len(self.d.coeffs) - 1

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2

    @property
    def infinity_type(self) -> str:
        if self.degree % 2:
            return RAMIFIED
        return SPLIT if self.field.chi(self.d.lc) == 1 else INERT

    def __str__(self) -> str:
        return str(self.d)


@dataclass(frozen=True)
class _ExtTables:
    exp: np.ndarray
    log: np.ndarray
    add_q: np.ndarray


def _decode(code: int, q: int, i: int) -> tuple[int, ...]:
    out = []
    for _ in range(i):
        code, r = divmod(code, q)
        out.append(r)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _encode(c: tuple[int, ...], q: int) -> int:
    return sum(x * q**j for j, x in enumerate(c))


@lru_cache(maxsize=None)
def _ext_tables(F: FieldSpec, i: int) -> _ExtTables:
    # F_{q^i} = F_q[S]/(m), m the first monic irreducible of degree i
    q = F.q
    order = q**i
    m = monic_irreducibles(F, i)[0].poly.coeffs
    primes = list(factorint(order - 1))

    def mulmod(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return _pdivmod(F, _pmul(F, a, b), m)[1]

    def power(a: tuple[int, ...], n: int) -> tuple[int, ...]:
        r: tuple[int, ...] = (1,)
        while n:
            if n & 1:
                r = mulmod(r, a)
            a = mulmod(a, a)
            n >>= 1
        return r

    for code in range(2 if order > 2 else 1, order):
        g = _decode(code, q, i)
        if all(power(g, (order - 1) // r) != (1,) for r in primes):
            break
    else:  # pragma: no cover
        raise FormulaError(f"no primitive element found in F_{order}")
    exp = np.zeros(order - 1, dtype=np.int64)
    log = np.full(order, -1, dtype=np.int64)
    cur: tuple[int, ...] = (1,)
    for k in range(order - 1):
        c = _encode(cur, q)
        exp[k] = c
        log[c] = k
        cur = mulmod(cur, g)
    if (log[1:] < 0).any():
        raise FormulaError(f"log table for F_{order} is incomplete")
    add_q = np.array(F.add_table, dtype=np.int64)
    return _ExtTables(exp, log, add_q)


def affine_count(D: QuadDisc, i: int = 1, kernel=None) -> int:
    """#{(t, y) in F_{q^i}^2 : y^2 = D(t)}."""
    if i < 1:
        raise DomainError(f"extension index must be >= 1, got {i}")
    F = D.field
    tabs = _ext_tables(F, i)
    kernel = kernel or accel.char_sum
    coeffs = np.array(D.d.coeffs, dtype=np.int64)
    s = kernel(coeffs, tabs.exp, tabs.log, tabs.add_q, F.q)
    return F.q**i + int(s)


def infinite_points(D: QuadDisc, i: int = 1) -> int:
    """Points above T = infinity on the smooth model, over F_{q^i}."""
    if D.infinity_type == RAMIFIED:
        return 1
    if D.field.chi(D.d.lc) == 1 or i % 2 == 0:
        return 2
    return 0


def point_count(D: QuadDisc, i: int = 1) -> int:
    return affine_count(D, i) + infinite_points(D, i)


@dataclass(frozen=True)
class LPolynomial:
    """Numerator a_0 + a_1 u + ... + a_{2g} u^{2g} of the zeta function."""

    coeffs: tuple[int, ...]
    g: int
    q: int

    def __call__(self, u: int) -> int:
        return sum(a * u**k for k, a in enumerate(self.coeffs))

    def inverse_roots(self, dps: int = 50) -> list:
        if self.g == 0:
            return []
        with mpmath.workdps(dps):
            roots = mpmath.polyroots(list(reversed(self.coeffs)), maxsteps=200, extraprec=2 * dps)
            return [1 / r for r in roots]

    def predicted_count(self, i: int) -> int:
        """q^i + 1 - sum(alpha^i), via Newton's identities on the coefficients."""
        e = [Fraction(1)] + [Fraction((-1) ** k * a) for k, a in enumerate(self.coeffs) if k]
        e += [Fraction(0)] * (i + 1)
        p: list[Fraction] = [Fraction(0)]
        for k in range(1, i + 1):
            s = (-1) ** (k - 1) * k * e[k]
            for j in range(1, k):
                s += (-1) ** (k - 1 - j) * e[k - j] * p[j]
            p.append(s)
        return self.q**i + 1 - int(p[i])

    def check(self, rel_tol: float = 1e-9) -> None:
        """Raise FormulaError unless normalisation, symmetry and Weil bound hold."""
        a, g, q = self.coeffs, self.g, self.q
        if len(a) != 2 * g + 1 or a[0] != 1 or a[-1] != q**g:
            raise FormulaError(f"bad L-polynomial normalisation {a}")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise FormulaError(f"functional equation fails at u^{i}: {a}")
        sq = mpmath.sqrt(q)
        for alpha in self.inverse_roots():
            if abs(abs(alpha) - sq) > rel_tol * sq:
                raise FormulaError(f"inverse root {alpha} violates the Weil bound")


def l_polynomial(D: QuadDisc) -> LPolynomial:
    q, g = D.field.q, D.genus
    if g == 0:
        return LPolynomial((1,), 0, q)
    # power sums s_k = sum alpha^k = q^k + 1 - N_k; Newton for elementary e_k
    s = [0] + [q**k + 1 - point_count(D, k) for k in range(1, g + 1)]
    e = [Fraction(1)]
    for k in range(1, g + 1):
        acc = sum((-1) ** (j - 1) * e[k - j] * s[j] for j in range(1, k + 1))
        e.append(acc / k)
    if any(x.denominator != 1 for x in e):
        raise FormulaError(f"non-integral L-polynomial coefficients {e}")
    low = [int((-1) ** k * e[k]) for k in range(g + 1)]
    high = [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    L = LPolynomial(tuple(low + high), g, q)
    L.check()
    return L


def class_number(D: QuadDisc) -> int:
    """Ideal class number of F_q[T, sqrt(D)] (imaginary case only).

    h = L(1) when infinity ramifies; when infinity is inert the single
    infinite place has degree 2 and h = 2 * L(1).
    """
    kind = D.infinity_type
    if kind == SPLIT:
        raise DomainError(f"{D}: infinity splits (real quadratic order, regulator needed)")
    h_k = l_polynomial(D)(1)
    return h_k if kind == RAMIFIED else 2 * h_k


def cornelissen_parity(deg_y: int) -> int:
    """Residue of h(xi * p_y) mod 4 for even deg_y: 0 if 4 | deg_y, else 2."""
    if deg_y % 2:
        raise DomainError(f"the mod-4 law is stated for even degree only, got {deg_y}")
    return 0 if deg_y % 4 == 0 else 2


# -- oracle: ideal classes by exhaustive search ---------------------------------

_Vec = tuple[Poly, Poly]  # a + b*sqrt(D)


def _hnf(gens: list[_Vec]) -> tuple[Poly, Poly, Poly]:
    """Basis (s, 0), (t, w) of the F_q[T]-module spanned by ``gens``."""
    vecs = [v for v in gens if not (v[0].is_zero() and v[1].is_zero())]
    while True:
        nz = [k for k, v in enumerate(vecs) if not v[1].is_zero()]
        if len(nz) <= 1:
            break
        kp = min(nz, key=lambda k: vecs[k][1].degree)
        pa, pb = vecs[kp]
        out = [vecs[kp]]
        for k, (a, b) in enumerate(vecs):
            if k == kp:
                continue
            if not b.is_zero():
                qt = b // pb
                a, b = a - qt * pa, b - qt * pb
            if not (a.is_zero() and b.is_zero()):
                out.append((a, b))
        vecs = out
    (k,) = [k for k, v in enumerate(vecs) if not v[1].is_zero()]
    t, w = vecs[k]
    F = w.field
    s = Poly(F)
    for j, (a, _) in enumerate(vecs):
        if j != k:
            s = poly_gcd(s, a)
    if s.is_zero():
        raise FormulaError("ideal lattice is not of full rank")
    inv = F.inv(w.lc)
    t, w = t.scale(inv) % s, w.scale(inv)
    return s, t, w


def _mul(x: _Vec, y: _Vec, D: Poly) -> _Vec:
    return x[0] * y[0] + x[1] * y[1] * D, x[0] * y[1] + x[1] * y[0]


def _polys_upto(F: FieldSpec, m: float) -> Iterator[Poly]:
    if m < 0:
        yield Poly(F)
        return
    yield from all_polys(F, int(m))


def _is_principal(s: Poly, t: Poly, w: Poly, D: Poly) -> bool:
    """Search the lattice s*A + (t + w sqrt D)*A for an element of norm ~ s*w."""
    k = s.degree + w.degree
    dD = D.degree
    for y in _polys_upto(s.field, (k - dD) / 2 - w.degree):
        base = (y * t) % s
        yw = y * w
        for x in _polys_upto(s.field, k / 2 - s.degree):
            a = base + x * s
            if a.is_zero() and y.is_zero():
                continue
            if 2 * a.degree > k:
                continue
            if (a * a - D * yw * yw).degree == k:
                return True
    return False


def _primitive_ideals(D: Poly, bound: int) -> list[tuple[Poly, Poly]]:
    F = D.field
    out = []
    for du in range(bound + 1):
        for u in monic_polys(F, du):
            for v in _polys_upto(F, du - 1):
                if ((v * v - D) % u).is_zero():
                    out.append((u, v))
    return out


def class_number_bruteforce(D: QuadDisc) -> int:
    """Ideal class number by enumeration (genus <= 2, q <= 5).

    Every class contains a primitive ideal (u, v + sqrt D) with deg u <= g + 1
    by Riemann-Roch; two such ideals I, J are equivalent iff I * conj(J) has
    a generator, which is searched for among all lattice elements whose norm
    could have the right degree.
    """
    F = D.field
    if D.genus > 2 or F.q > 5:
        raise DomainError(f"oracle limited to genus <= 2 and q <= 5 (genus {D.genus}, q {F.q})")
    if D.infinity_type == SPLIT:
        raise DomainError(f"{D}: infinity splits (real quadratic order)")
    d = D.d
    one, zero = Poly.const(F, 1), Poly(F)
    reps: list[tuple[Poly, Poly]] = []
    for u, v in _primitive_ideals(d, D.genus + 1):
        basis = [(u, zero), (v, one)]
        for ru, rv in reps:
            conj = [(ru, zero), (-rv, one)]
            s, t, w = _hnf([_mul(x, y, d) for x in basis for y in conj])
            if _is_principal(s, t, w, d):
                break
        else:
            reps.append((u, v))
    return len(reps)
