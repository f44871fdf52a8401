"""Text, JSON and TSV renderings of reports (all integers exact)."""

from __future__ import annotations

import json

from .ffpoly import RamSet
from .modcurve import CurveReport, QuotientRecord, genus_xr
from .search import DirichletRow, SearchResult

TSV_COLUMNS = ("x", "y", "fix", "genus_quotient", "parity", "sha_certificate")


def _b(v: bool) -> str:
    return "true" if v else "false"


def _opt(v) -> str:
    return "n/a" if v is None else str(v)


def record_lines(rec: QuotientRecord) -> list[str]:
    deficient = "{" + ", ".join(map(str, rec.deficient)) + "}"
    lines = [
        f"y = {rec.y}: fix = {_opt(rec.fix)}, genus_quotient = {_opt(rec.genus_quotient)}, "
        f"parity = {rec.parity}, deficient = {deficient}, sha_certificate = {_b(rec.sha_certificate)}",
        "  conditions: " + " ".join(f"{k}={_b(v)}" for k, v in rec.conditions.items()),
    ]
    if rec.extrapolated:
        lines.append("  extrapolated: true")
    lines += [f"  note: {n}" for n in rec.notes]
    return lines


def render_curve_report(rep: CurveReport, fmt: str = "text") -> str:
    if fmt == "json":
        rows = rep.to_json_rows()
        return json.dumps(rows[0] if len(rows) == 1 else rows, indent=2)
    out = [f"q = {rep.q}", f"R = {rep.R}", f"genus_XR = {rep.genus_XR}"]
    for rec in rep.records:
        out += record_lines(rec)
    return "\n".join(out)


def render_search(res: SearchResult, fmt: str = "text") -> str:
    if fmt == "tsv":
        rows = ["\t".join(TSV_COLUMNS)]
        for x, y, rec in res.hits:
            rows.append("\t".join([str(x), str(y), _opt(rec.fix), _opt(rec.genus_quotient), rec.parity, _b(rec.sha_certificate)]))
        return "\n".join(rows)
    if fmt == "json":
        hits = []
        for x, y, rec in res.hits:
            (row,) = CurveReport(res.q, RamSet.of(x, y), genus_xr(res.q, [x.deg, y.deg]), (rec,)).to_json_rows()
            hits.append(row)
        doc = {"q": res.q, "deg_x": res.deg_x, "deg_y": res.deg_y, "census": res.census, "hits": hits}
        return json.dumps(doc, indent=2)
    out = [f"q = {res.q}, deg x = {res.deg_x}, deg y = {res.deg_y}"]
    out += [f"{k} = {v}" for k, v in res.census.items()]
    for x, y, rec in res.hits:
        out.append(
            f"x = {x}, y = {y}: fix = {_opt(rec.fix)}, genus_quotient = {_opt(rec.genus_quotient)}, "
            f"parity = {rec.parity}, sha_certificate = {_b(rec.sha_certificate)}"
        )
    return "\n".join(out)


def render_dirichlet(rows: list[DirichletRow], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(
            [
                {"degree": r.degree, "places": r.places, "nonresidues": r.nonresidues,
                 "heuristic": round(r.heuristic, 1), "reciprocity_ok": r.reciprocity_ok}
                for r in rows
            ],
            indent=2,
        )
    out = ["degree\tplaces\tnonresidues\theuristic\treciprocity_ok"]
    out += [f"{r.degree}\t{r.places}\t{r.nonresidues}\t{r.heuristic:.1f}\t{_b(r.reciprocity_ok)}" for r in rows]
    return "\n".join(out)
