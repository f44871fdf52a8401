"""Legendre symbols (a / p) over F_q[T], q odd.

Two independent routes: the Euler criterion (one modular exponentiation) and
a Euclid-style evaluation driven by quadratic reciprocity.
"""

from __future__ import annotations

from .errors import DomainError, FormulaError
from .ffpoly import FieldSpec, Place, Poly, _pdivmod, _pmonic, _ppowmod

__all__ = ["legendre_euler", "legendre_fast", "constant_symbol", "reciprocity_sign", "legendre"]


def _require_odd(F: FieldSpec) -> None:
    if not F.is_odd:
        raise DomainError(f"Legendre symbols need q odd (q = {F.q})")


def reciprocity_sign(q: int, deg_a: int, deg_b: int) -> int:
    """(-1)^{(q-1)/2 * deg_a * deg_b}."""
    return -1 if ((q - 1) // 2 * deg_a * deg_b) % 2 else 1


def legendre_euler(a: Poly, x: Place) -> int:
    """Euler criterion: a^((q_x - 1)/2) mod p_x, read as +1 / -1."""
    F = x.field
    _require_odd(F)
    a._check(x.poly)
    r = _pdivmod(F, a.coeffs, x.poly.coeffs)[1]
    if not r:
        return 0
    s = _ppowmod(F, r, (x.q_x - 1) // 2, x.poly.coeffs)
    if s == (1,):
        return 1
    if s == (F.neg_one,):
        return -1
    raise FormulaError(f"Euler criterion produced {s} for {a} mod {x}")


def constant_symbol(c: int, x: Place) -> int:
    """(c / p_x) for a nonzero constant c.

    Every element of F_q is a square in F_{q^2}, so the answer is +1 for
    even-degree places and chi_q(c) otherwise.
    """
    F = x.field
    _require_odd(F)
    if c == 0:
        raise DomainError("constant symbol of 0")
    return F.chi(c) ** (x.deg % 2)


def _jacobi(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    # b monic; multiplicative extension of the symbol to composite b
    q = F.q
    sign = 1
    while len(b) > 1:
        a = _pdivmod(F, a, b)[1]
        if not a:
            return 0
        c = a[-1]
        if c != 1:
            sign *= F.chi(c) ** ((len(b) - 1) % 2)
            a = _pmonic(F, a)
        if len(a) == 1:
            return sign
        sign *= reciprocity_sign(q, len(a) - 1, len(b) - 1)
        a, b = b, a
    return sign


def legendre_fast(a: Poly, x: Place) -> int:
    """Legendre symbol by reduction, constant extraction and reciprocity flips."""
    F = x.field
    _require_odd(F)
    a._check(x.poly)
    return _jacobi(F, a.coeffs, x.poly.coeffs)


legendre = legendre_fast
