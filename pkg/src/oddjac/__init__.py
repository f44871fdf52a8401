"""Genus, Atkin-Lehner fixed points and Jacobian parity for modular curves of
D-elliptic sheaves over F_q(T), computed exactly at desk scale."""

from .classnum import QuadDisc, class_number, class_number_bruteforce, l_polynomial
from .errors import DomainError, FieldMismatchError, FormulaError, ParseError
from .ffpoly import INFINITY, FieldSpec, Place, Poly, RamSet, monic_irreducibles, parse_poly
from .modcurve import classify_quotient, curve_report, fixed_points, genus_quotient, genus_xr
from .symbols import legendre_euler, legendre_fast

__version__ = "0.1.0"
