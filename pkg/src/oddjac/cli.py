"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import accel
from .checks import acceptance_table, run_invariants
from .classnum import QuadDisc, class_number, class_number_bruteforce
from .errors import DomainError, FormulaError, ParseError
from .ffpoly import FieldSpec, Place, RamSet, _Scanner, nonsquare_xi, parse_poly, split_poly_list
from .modcurve import curve_report, genus_xr
from .report import render_curve_report, render_dirichlet, render_search
from .search import dirichlet_check, find_odd_pairs, hyperelliptic_survey, inert_degree2_census
from .symbols import legendre_euler, legendre_fast


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--modulus", help="monic irreducible over F_p defining F_q when q = p^e, e > 1")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--tsv", action="store_true", help="TSV output")
    p.add_argument("--verify", action="store_true", help="also run oracle cross-checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps (default 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="oddjac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("symbol", parents=[common], help="Legendre symbol (a / p)")
    p.add_argument("--a", required=True, help="numerator polynomial")
    p.add_argument("--p", required=True, help="monic irreducible modulus")

    p = sub.add_parser("classnum", parents=[common], help="class number h(xi * p)")
    p.add_argument("--p", required=True, help="squarefree polynomial p (D = xi * p)")
    p.add_argument("--xi", help="constant multiplier (default: least non-square)")
    p.add_argument("--oracle", action="store_true", help="compare with the brute-force oracle")

    p = sub.add_parser("genus", parents=[common], help="genus of X^R")
    p.add_argument("--R", required=True, help="comma-separated places")

    p = sub.add_parser("classify", parents=[common], help="classify X^R / w_y")
    p.add_argument("--R", required=True, help="comma-separated places")
    p.add_argument("--y", help="place of R (default: every place of R)")

    p = sub.add_parser("search", parents=[common], help="odd-Jacobian pair search")
    p.add_argument("--deg-x", type=int, required=True)
    p.add_argument("--deg-y", type=int, required=True)

    p = sub.add_parser("census", help="place censuses")
    csub = p.add_subparsers(dest="census_kind", required=True, metavar="KIND")
    c = csub.add_parser("inert", parents=[common], help="degree-2 places inert in F(sqrt p_x)")
    c.add_argument("--x", required=True, help="degree-2 place")
    c = csub.add_parser("dirichlet", parents=[common], help="non-residue counts by even degree")
    c.add_argument("--y", required=True, help="place")
    c.add_argument("--dmax", type=int, default=4)

    p = sub.add_parser("survey", help="finiteness surveys")
    ssub = p.add_subparsers(dest="survey_kind", required=True, metavar="KIND")
    ssub.add_parser("hyperelliptic", parents=[common], help="window q^(r/2) < 32 q^3 r")

    sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    sub.add_parser("table", parents=[common], help="reproduce the acceptance table")
    return parser


def _field(args) -> FieldSpec:
    if args.q is None:
        raise DomainError("--q is required")
    return FieldSpec.from_q(args.q, args.modulus)


def _place(F: FieldSpec, text: str) -> Place:
    return Place(parse_poly(F, text))


def _ramset(F: FieldSpec, text: str) -> RamSet:
    return RamSet(tuple(_place(F, t) for t in split_poly_list(text)))


def _fmt(args) -> str:
    return "json" if args.json else "tsv" if args.tsv else "text"


def _const(F: FieldSpec, text: str) -> int:
    sc = _Scanner(text)
    c = sc.coefficient(F)
    if sc.peek():
        raise sc.error("unexpected character")
    return c


def _run(args) -> int:
    out = sys.stdout
    cmd = args.command
    if cmd == "selftest":
        ok_all = True
        for name, ok, detail in run_invariants():
            ok_all &= ok
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}", file=out)
        print(f"backend: {accel.BACKEND}", file=out)
        return 0 if ok_all else 3
    if cmd == "table":
        ok_all = True
        for num, title, ok, detail, secs in acceptance_table(jobs=max(args.jobs, 4)):
            ok_all &= ok
            print(f"{num:>2}  {'PASS' if ok else 'FAIL'}  {title}: {detail}  [{secs:.2f} s]", file=out)
        return 0 if ok_all else 3
    if cmd == "survey":
        if args.q is None:
            raise DomainError("--q is required")
        rows = hyperelliptic_survey(args.q)
        if args.json:
            print(json.dumps([{"r": r, "feasible": ok} for r, ok in rows]), file=out)
        else:
            for r, ok in rows:
                print(f"{r}\t{'true' if ok else 'false'}", file=out)
        return 0

    F = _field(args)
    if cmd == "symbol":
        a, x = parse_poly(F, args.a), _place(F, args.p)
        fast = legendre_fast(a, x)
        print(fast, file=out)
        if args.verify:
            euler = legendre_euler(a, x)
            print(f"euler = {euler}\nfast = {fast}\nagree = {'true' if euler == fast else 'false'}", file=out)
            if euler != fast:
                return 3
        return 0
    if cmd == "classnum":
        p = parse_poly(F, args.p)
        xi = _const(F, args.xi) if args.xi else nonsquare_xi(F)
        if xi == 0:
            raise DomainError("--xi must be nonzero")
        D = QuadDisc(p.scale(xi))
        h = class_number(D)
        print(h, file=out)
        if args.oracle or args.verify:
            hb = class_number_bruteforce(D)
            print(f"D = {D} ({D.infinity_type} at infinity)\nl_polynomial = {h}\noracle = {hb}\nagree = {'true' if h == hb else 'false'}", file=out)
            if h != hb:
                return 3
        return 0
    if cmd == "genus":
        print(genus_xr(F.q, _ramset(F, args.R)), file=out)
        return 0
    if cmd == "classify":
        R = _ramset(F, args.R)
        ys = None
        if args.y:
            y = _place(F, args.y)
            if y not in R:
                raise DomainError(f"y = {y} is not in R")
            ys = [y]
        print(render_curve_report(curve_report(F.q, R, ys), "json" if args.json else "text"), file=out)
        return 0
    if cmd == "search":
        res = find_odd_pairs(F, args.deg_x, args.deg_y, jobs=args.jobs)
        print(render_search(res, _fmt(args)), file=out)
        return 0
    if cmd == "census":
        if args.census_kind == "inert":
            print(inert_degree2_census(_place(F, args.x)), file=out)
        else:
            print(render_dirichlet(dirichlet_check(_place(F, args.y), args.dmax), "json" if args.json else "text"), file=out)
        return 0
    raise DomainError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"error: malformed polynomial: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormulaError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
