"""Exact arithmetic in F_q and F_q[T]; places of F_q(T).

Elements of F_q are plain integer codes in ``range(q)``.  For ``q = p`` the code
is the residue itself; for ``q = p^e`` the code of ``c0 + c1*a + ... `` (``a`` a
root of the field modulus) is ``c0 + c1*p + c2*p^2 + ...``.  Integer order on
codes is the canonical order of F_q used for every "first"/"sorted" choice.

Polynomials are immutable, dense, degree-ascending tuples of codes with no
trailing zeros.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from sympy import factorint, isprime, mobius

from .errors import DomainError, FieldMismatchError, ParseError

__all__ = [
    "FieldSpec",
    "Poly",
    "Place",
    "InfinitePlace",
    "INFINITY",
    "RamSet",
    "poly_op",
    "poly_gcd",
    "powmod",
    "is_irreducible",
    "monic_polys",
    "all_polys",
    "monic_irreducibles",
    "places_up_to",
    "count_irreducibles",
    "nonsquare_xi",
    "odd_indicator",
    "parse_poly",
    "format_poly",
    "split_poly_list",
]


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field F_q, q = p^e.

    ``modulus`` holds the degree-ascending F_p coefficients of a monic
    irreducible of degree ``e``; it is required iff ``e > 1``.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isprime(self.p):
            raise DomainError(f"characteristic {self.p!r} is not prime")
        if self.e < 1:
            raise DomainError(f"extension degree must be >= 1, got {self.e}")
        if self.e == 1:
            if self.modulus is not None:
                raise DomainError("a prime field takes no modulus")
            return
        if self.modulus is None:
            raise DomainError(f"q = {self.p}^{self.e} needs an explicit field modulus")
        mod = _trim(tuple(int(c) % self.p for c in self.modulus))
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise DomainError(f"field modulus must be monic of degree {self.e}")
        object.__setattr__(self, "modulus", mod)
        base = FieldSpec(self.p)
        if not is_irreducible(Poly(base, mod)):
            raise DomainError("field modulus is reducible over F_p")

    @classmethod
    def from_q(cls, q: int, modulus: str | Sequence[int] | None = None) -> FieldSpec:
        """Build F_q from its order; ``modulus`` may be polynomial text over F_p."""
        if q < 2:
            raise DomainError(f"q must be a prime power >= 2, got {q}")
        fac = factorint(q)
        if len(fac) != 1:
            raise DomainError(f"q = {q} is not a prime power")
        ((p, e),) = fac.items()
        if e == 1:
            if modulus is not None:
                base = FieldSpec(p)
                m = parse_poly(base, modulus) if isinstance(modulus, str) else Poly(base, tuple(modulus))
                if m.degree != 1:
                    raise DomainError("a prime field takes no modulus")
            return cls(p)
        if modulus is None:
            raise DomainError(f"q = {q} = {p}^{e} needs --modulus (degree {e} over F_{p})")
        if isinstance(modulus, str):
            modulus = parse_poly(FieldSpec(p), modulus).coeffs
        return cls(p, e, tuple(modulus))

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_odd(self) -> bool:
        return self.p != 2

    # -- element codes -----------------------------------------------------

    def vector(self, c: int) -> tuple[int, ...]:
        """F_p coordinates of code ``c`` (degree-ascending, length e)."""
        out = []
        for _ in range(self.e):
            c, r = divmod(c, self.p)
            out.append(r)
        return tuple(out)

    def from_vector(self, vec: Sequence[int]) -> int:
        if len(vec) > self.e or any(not 0 <= v < self.p for v in vec):
            raise DomainError(f"bad coefficient vector {list(vec)} for F_{self.q}")
        return sum(v * self.p**i for i, v in enumerate(vec))

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    @cached_property
    def _tables(self) -> tuple[list[list[int]], list[list[int]], list[int], list[int]]:
        q, p = self.q, self.p
        if self.e == 1:
            add = [[(a + b) % p for b in range(p)] for a in range(p)]
            mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            vecs = [self.vector(c) for c in range(q)]
            add = [[self.from_vector([(x + y) % p for x, y in zip(va, vb)]) for vb in vecs] for va in vecs]
            mod = self.modulus
            assert mod is not None
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(a, q):
                    prod = [0] * (2 * self.e - 1)
                    for i, x in enumerate(vecs[a]):
                        if x:
                            for j, y in enumerate(vecs[b]):
                                prod[i + j] = (prod[i + j] + x * y) % p
                    for k in range(len(prod) - 1, self.e - 1, -1):
                        c = prod[k]
                        if c:
                            for j in range(self.e + 1):
                                prod[k - self.e + j] = (prod[k - self.e + j] - c * mod[j]) % p
                    mul[a][b] = mul[b][a] = self.from_vector(prod[: self.e])
        neg = [row.index(0) for row in add]
        inv = [0] + [mul[a].index(1) for a in range(1, q)]
        return add, mul, neg, inv

    @property
    def add_table(self) -> list[list[int]]:
        return self._tables[0]

    @property
    def mul_table(self) -> list[list[int]]:
        return self._tables[1]

    def add(self, a: int, b: int) -> int:
        return self._tables[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._tables[0][a][self._tables[2][b]]

    def mul(self, a: int, b: int) -> int:
        return self._tables[1][a][b]

    def neg(self, a: int) -> int:
        return self._tables[2][a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self._tables[3][a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        mul = self._tables[1]
        r = 1
        while n:
            if n & 1:
                r = mul[r][a]
            a = mul[a][a]
            n >>= 1
        return r

    @property
    def neg_one(self) -> int:
        return self.neg(1)

    @cached_property
    def squares(self) -> frozenset[int]:
        """Nonzero squares of F_q."""
        mul = self.mul_table
        return frozenset(mul[a][a] for a in range(1, self.q))

    def chi(self, a: int) -> int:
        """Quadratic character of F_q (q odd): 0, +1 or -1."""
        if not self.is_odd:
            raise DomainError("quadratic character needs q odd")
        if a == 0:
            return 0
        return 1 if a in self.squares else -1

    def __str__(self) -> str:
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = F_{self.p}[a]/({format_poly(Poly(FieldSpec(self.p), self.modulus or ()), var='a')})"


# -- polynomial kernels on raw coefficient tuples ----------------------------


def _padd(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    add = F.add_table
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add[out[i]][c]
    return _trim(out)


def _pneg(F: FieldSpec, a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(F.neg(c) for c in a)


def _pscale(F: FieldSpec, a: tuple[int, ...], c: int) -> tuple[int, ...]:
    if c == 0:
        return ()
    row = F.mul_table[c]
    return tuple(row[x] for x in a)


def _pmul(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    add, mul = F.add_table, F.mul_table
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return _trim(out)


def _pdivmod(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    add, mul, neg = F.add_table, F.mul_table, F._tables[2]
    inv_lc = F.inv(b[-1])
    rem = list(a)
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c:
            f = mul[c][inv_lc]
            quot[k - db] = f
            nf = neg[f]
            for j in range(db + 1):
                if b[j]:
                    rem[k - db + j] = add[rem[k - db + j]][mul[nf][b[j]]]
    return _trim(quot), _trim(rem[:db])


def _pmod(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return _pdivmod(F, a, b)[1]


def _pmonic(F: FieldSpec, a: tuple[int, ...]) -> tuple[int, ...]:
    if not a or a[-1] == 1:
        return a
    return _pscale(F, a, F.inv(a[-1]))


def _pgcd(F: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    while b:
        a, b = b, _pmod(F, a, b)
    return _pmonic(F, a)


def _ppowmod(F: FieldSpec, a: tuple[int, ...], n: int, m: tuple[int, ...]) -> tuple[int, ...]:
    if n < 0:
        raise DomainError("negative exponent")
    result: tuple[int, ...] = _pmod(F, (1,), m)
    base = _pmod(F, a, m)
    while n:
        if n & 1:
            result = _pmod(F, _pmul(F, result, base), m)
        n >>= 1
        if n:
            base = _pmod(F, _pmul(F, base, base), m)
    return result


@dataclass(frozen=True)
class Poly:
    """An element of F_q[T]."""

    field: FieldSpec
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        q = self.field.q
        c = tuple(int(x) for x in self.coeffs)
        if any(not 0 <= x < q for x in c):
            raise DomainError(f"coefficient out of range for F_{q}: {c}")
        object.__setattr__(self, "coeffs", _trim(c))

    @classmethod
    def const(cls, field: FieldSpec, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def t(cls, field: FieldSpec) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> Poly:
        return parse_poly(field, text)

    @property
    def degree(self) -> float | int:
        """Degree; ``-math.inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Poly:
        return Poly(self.field, _pmonic(self.field, self.coeffs))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.coeffs), tuple(reversed(self.coeffs))

    def _check(self, other: Poly) -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        return Poly(self.field, _padd(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        self._check(other)
        return Poly(self.field, _padd(self.field, self.coeffs, _pneg(self.field, other.coeffs)))

    def __neg__(self) -> Poly:
        return Poly(self.field, _pneg(self.field, self.coeffs))

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        return Poly(self.field, _pmul(self.field, self.coeffs, other.coeffs))

    def scale(self, c: int) -> Poly:
        return Poly(self.field, _pscale(self.field, self.coeffs, c))

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        qt, r = _pdivmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, qt), Poly(self.field, r)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, t: int) -> int:
        """Evaluate at ``t`` in F_q."""
        add, mul = self.field.add_table, self.field.mul_table
        acc = 0
        for c in reversed(self.coeffs):
            acc = add[mul[acc][t]][c]
        return acc

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.mul(F.from_int(k), c) for k, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, q={self.field.q})"


def poly_op(a: Poly, b: Poly, kind: str, exponent: int | None = None, modulus: Poly | None = None):
    """Dispatch one ring operation by name.

    ``kind`` is one of add, sub, mul, divmod, gcd, powmod; powmod raises ``a``
    to ``exponent`` modulo ``modulus`` and ignores ``b``.
    """
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "divmod":
        return divmod(a, b)
    if kind == "gcd":
        return poly_gcd(a, b)
    if kind == "powmod":
        if exponent is None or modulus is None:
            raise DomainError("powmod needs exponent and modulus")
        return powmod(a, exponent, modulus)
    raise DomainError(f"unknown polynomial operation {kind!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero iff both inputs are zero)."""
    a._check(b)
    return Poly(a.field, _pgcd(a.field, a.coeffs, b.coeffs))


def powmod(a: Poly, n: int, m: Poly) -> Poly:
    a._check(m)
    return Poly(a.field, _ppowmod(a.field, a.coeffs, n, m.coeffs))


@lru_cache(maxsize=None)
def _irreducible(F: FieldSpec, f: tuple[int, ...]) -> bool:
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    f = _pmonic(F, f)
    x = (0, 1)
    frob = [x]
    for _ in range(n):
        frob.append(_ppowmod(F, frob[-1], F.q, f))
    if frob[n] != x:
        return False
    for r in factorint(n):
        h = _padd(F, frob[n // r], _pneg(F, x))
        if len(_pgcd(F, f, h)) != 1:
            return False
    return True


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over F_q."""
    if f.is_zero():
        raise DomainError("irreducibility of the zero polynomial")
    return _irreducible(f.field, f.coeffs)


def monic_polys(F: FieldSpec, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree ``d`` in canonical order."""
    for low in itertools.product(range(F.q), repeat=d):
        yield Poly(F, tuple(reversed(low)) + (1,))


def all_polys(F: FieldSpec, max_deg: int, include_zero: bool = True) -> Iterator[Poly]:
    """Every polynomial of degree <= max_deg (zero first, then by degree)."""
    if include_zero:
        yield Poly(F)
    for d in range(max_deg + 1):
        for lead in range(1, F.q):
            for low in itertools.product(range(F.q), repeat=d):
                yield Poly(F, tuple(reversed(low)) + (lead,))


@dataclass(frozen=True)
class Place:
    """A finite place of F_q(T), identified with its monic irreducible generator."""

    poly: Poly

    def __post_init__(self) -> None:
        if not self.poly.is_monic() or not is_irreducible(self.poly):
            raise DomainError(f"{self.poly} is not monic irreducible")

    @property
    def field(self) -> FieldSpec:
        return self.poly.field

    @property
    def deg(self) -> int:
        return len(self.poly.coeffs) - 1

    @property
    def q_x(self) -> int:
        return self.field.q**self.deg

    def __lt__(self, other: Place) -> bool:
        return self.poly.sort_key() < other.poly.sort_key()

    def __str__(self) -> str:
        return str(self.poly)


class InfinitePlace:
    """The place 1/T.  Never represented by a polynomial."""

    _instance: InfinitePlace | None = None
    deg = 1

    def __new__(cls) -> InfinitePlace:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = lambda self: "inf"  # noqa: E731

    def __reduce__(self):
        return (InfinitePlace, ())


INFINITY = InfinitePlace()


@dataclass(frozen=True)
class RamSet:
    """Ramification set: an even number (>= 2) of distinct finite places, sorted."""

    places: tuple[Place, ...]

    def __post_init__(self) -> None:
        pl = tuple(self.places)
        if any(not isinstance(x, Place) for x in pl):
            raise DomainError("ramification set holds finite places only")
        if len(pl) < 2 or len(pl) % 2:
            raise DomainError(f"#R must be even and >= 2, got {len(pl)}")
        if len(set(pl)) != len(pl):
            raise DomainError("ramification places must be distinct")
        if len({x.field for x in pl}) != 1:
            raise FieldMismatchError("ramification places over different fields")
        object.__setattr__(self, "places", tuple(sorted(pl)))

    @classmethod
    def of(cls, *places: Place) -> RamSet:
        return cls(tuple(places))

    @property
    def field(self) -> FieldSpec:
        return self.places[0].field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(x.deg for x in self.places)

    def __iter__(self) -> Iterator[Place]:
        return iter(self.places)

    def __len__(self) -> int:
        return len(self.places)

    def __contains__(self, x: object) -> bool:
        return x in self.places

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.places)) + "}"


@lru_cache(maxsize=None)
def _monic_irreducibles(F: FieldSpec, d: int) -> tuple[Place, ...]:
    return tuple(Place(f) for f in monic_polys(F, d) if _irreducible(F, f.coeffs))


def monic_irreducibles(F: FieldSpec, d: int) -> list[Place]:
    """All places of degree ``d``, canonical order."""
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    return list(_monic_irreducibles(F, d))


def places_up_to(F: FieldSpec, max_deg: int) -> list[Place]:
    return [x for d in range(1, max_deg + 1) for x in _monic_irreducibles(F, d)]


def count_irreducibles(q: int, d: int) -> int:
    """Number of monic irreducibles of degree ``d`` over F_q (necklace formula)."""
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    total = sum(int(mobius(k)) * q ** (d // k) for k in range(1, d + 1) if d % k == 0)
    return total // d


def nonsquare_xi(F: FieldSpec) -> int:
    """The least non-square of F_q^x in code order."""
    if not F.is_odd:
        raise DomainError("every element of F_q is a square when q is even")
    sq = F.squares
    return next(c for c in range(1, F.q) if c not in sq)


def odd_indicator(places: Iterable[Place | InfinitePlace]) -> int:
    """1 if every place has odd degree, else 0 (1 for the empty set)."""
    return int(all(x.deg % 2 for x in places))


# -- text format ---------------------------------------------------------------


def _format_coeff(F: FieldSpec, c: int) -> str:
    if F.e == 1:
        return str(c)
    return "[" + ",".join(map(str, F.vector(c))) + "]"


def format_poly(f: Poly, var: str = "T") -> str:
    """Emit the canonical term form, e.g. ``T^2+2*T+2``."""
    if f.is_zero():
        return "0" if f.field.e == 1 else _format_coeff(f.field, 0)
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            terms.append(_format_coeff(f.field, c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{_format_coeff(f.field, c)}*{mono}")
    return "+".join(terms)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.text, self.pos)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def coefficient(self, F: FieldSpec) -> int:
        start = self.pos
        if self.take("["):
            vec = [self.integer()]
            while self.take(","):
                vec.append(self.integer())
            if not self.take("]"):
                raise self.error("expected ']'")
            if len(vec) > F.e or any(v >= F.p for v in vec):
                self.pos = start
                raise self.error(f"coefficient vector not in F_{F.q}")
            return F.from_vector(vec)
        pos = self.pos
        n = self.integer()
        if n >= F.p:
            self.pos = pos
            raise self.error(f"coefficient {n} not in 0..{F.p - 1}")
        return n


def parse_poly(F: FieldSpec, text: str) -> Poly:
    """Parse term form (``T^2+2*T+2``) or ``coeffs:`` form (``coeffs:2,2,1``)."""
    sc = _Scanner(text)
    sc.skip()
    if text[sc.pos :].startswith("coeffs:"):
        sc.pos += len("coeffs:")
        vals = [sc.coefficient(F)]
        while sc.take(","):
            vals.append(sc.coefficient(F))
        if sc.peek():
            raise sc.error("unexpected character")
        return Poly(F, vals)
    acc: list[int] = []
    sign = 1
    if sc.take("-"):
        sign = -1
    elif sc.peek() == "+":
        raise sc.error("leading '+'")
    while True:
        ch = sc.peek()
        if not ch:
            raise sc.error("expected term")
        c = 1
        if ch != "T":
            c = sc.coefficient(F)
            if sc.take("*"):
                if sc.peek() != "T":
                    raise sc.error("expected 'T' after '*'")
        k = 0
        if sc.take("T"):
            k = 1
            if sc.take("^"):
                k = sc.integer()
        if sign < 0:
            c = F.neg(c)
        if len(acc) <= k:
            acc.extend([0] * (k + 1 - len(acc)))
        acc[k] = F.add(acc[k], c)
        nxt = sc.peek()
        if not nxt:
            break
        if nxt == "+":
            sign = 1
        elif nxt == "-":
            sign = -1
        else:
            raise sc.error(f"unexpected {nxt!r}")
        sc.pos += 1
    return Poly(F, acc)


def split_poly_list(text: str) -> list[str]:
    """Split ``"T^2+1,T^2+T+2"`` at top-level commas.

    Bracketed coefficient vectors are kept whole, and bare coefficients that
    follow a ``coeffs:`` item continue that item.  ``;`` always separates.
    """
    items: list[str] = []
    for chunk in text.split(";"):
        depth, cur, parts = 0, [], []
        for ch in chunk:
            depth += (ch == "[") - (ch == "]")
            if ch == "," and depth == 0:
                parts.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        parts.append("".join(cur))
        local: list[str] = []
        for part in parts:
            s = part.strip()
            if local and local[-1].startswith("coeffs:") and re.fullmatch(r"\d+|\[[\d,\s]*\]", s):
                local[-1] += "," + s
            else:
                local.append(s)
        items.extend(local)
    return [s for s in items if s]
