"""Serialization of analysis reports: a JSON document and plain-text tables."""

from __future__ import annotations

import json

from .analysis import AnalysisReport, _divisor_place_labels
from .freiman import FreimanReport


def report_dict(r: AnalysisReport) -> dict:
    F = r.field
    prof, gp = r.profile, r.growth
    places = _divisor_place_labels(gp.divisors)
    divisors = {P.label(F): [D[P] for D in gp.divisors] for P in places}
    return {
        "field": F.spec(),
        "dim": prof.n,
        "gamma": prof.gamma,
        "gamma_seq": prof.gamma_seq,
        "t": prof.t,
        "t1": prof.t1,
        "delta": prof.delta,
        "degrees": prof.degrees,
        "degree_table": r.table,
        "basis": [e.to_str() for e in r.basis.elements],
        "normalizer": r.basis.normalizer.to_str(),
        "divisor": r.divisor.to_str(),
        "divisors": divisors,
        "conjecture": r.conjecture,
        "needed_column": r.needed_col,
        "needed": [
            {"i": e.i, "j": e.j, "degree": e.degree, "needed": e.needed,
             "degree_forced": e.degree_forced, "count": list(e.count),
             "exact": e.count[0] == e.count[1]}
            for e in r.needed
        ],
        "tower": {
            "indices": r.tower_indices,
            "index": r.tower_indices[-1],
            "generator": None if r.generator is None else r.generator.to_str(),
            "reduced": r.reduced,
            "reduced_indices": r.reduced_indices,
        },
        "growth": {
            "M": gp.M,
            "mu": gp.mu,
            "degree_jumps": gp.degree_jumps,
            "delta_max": gp.delta_max,
            "divisor_degrees": gp.divisor_degrees(),
            "pole_floor": {F.to_str(a): m for a, m in gp.basis.pole_floor.items()},
            "shifts": [F.to_str(a) for a in gp.basis.shifts],
        },
        "findings": [f.to_dict() for f in r.findings],
    }


def report_json(r: AnalysisReport) -> str:
    return json.dumps(report_dict(r), indent=2, sort_keys=False) + "\n"


def render_degree_table(table) -> str:
    """Upper-triangular table with row and column headers e_1 .. e_k."""
    k = len(table)
    width = max([len(str(v)) for row in table for v in row if v is not None] + [3])
    head = " " * 5 + " ".join(f"e{j + 1}".rjust(width) for j in range(k))
    lines = [head]
    for i, row in enumerate(table):
        cells = [(str(v) if v is not None else "").rjust(width) for v in row]
        lines.append(f"e{i + 1}".ljust(5) + " ".join(cells))
    return "\n".join(lines)


def report_text(r: AnalysisReport, *, table: bool = False) -> str:
    d = report_dict(r)
    out = []
    if r.source:
        out.append(f"instance: {r.source}")
    out.append(f"field: {d['field']}    dim: {d['dim']}    gamma: {d['gamma']}")
    if r.reduced:
        out.append(f"generated subfield has index {r.tower_indices[-1]}; "
                   f"analyzed in the coordinate y = {d['tower']['generator']}")
    out.append("filtered basis: " + ", ".join(d["basis"]))
    out.append(f"degrees: {d['degrees']}")
    out.append(f"gamma_i: {d['gamma_seq']}    t = {d['t']}    t1 = {d['t1']}    delta = {d['delta']}")
    out.append("minimal divisors D_i:")
    for k, D in enumerate(r.growth.divisors, start=1):
        out.append(f"  D_{k} = {D.to_str()}")
    g = d["growth"]
    out.append(f"M: {g['M']}    mu: {g['mu']}    Delta: {g['degree_jumps']}    Delta_Max: {g['delta_max']}")
    out.append(f"subfield indices: {d['tower']['indices']}")
    c = d["conjecture"]
    verdict = "holds" if c["holds"] else "VIOLATED"
    out.append(f"D = {d['divisor']}    dim L(D) = {c['dim_LD']}    bound n + gamma = {c['bound']}    "
               f"({'hypothesis gamma <= n-3 met' if c['hypothesis'] else 'outside gamma <= n-3'}; {verdict})")
    if r.needed:
        out.append(f"neededness for column {r.needed_col} (relative to S_{r.needed_col - 1}^2):")
        for e in d["needed"]:
            tag = "needed" if e["needed"] else "not needed"
            if e["degree_forced"]:
                tag += " (forced by degree)"
            if not e["exact"]:
                tag += f" (count ranges over {e['count']})"
            out.append(f"  e{e['i']}e{e['j']}  deg {e['degree']:>3}  {tag}")
    if table:
        out.append("degree table:")
        out.append(render_degree_table(r.table))
    out.append("findings:")
    for f in r.findings:
        line = f"  {f.lemma:<8} {f.status}"
        if f.witness and f.status == "fail":
            line += f"  {json.dumps(f.witness, sort_keys=True)}"
        out.append(line)
    return "\n".join(out) + "\n"


def freiman_dict(fr: FreimanReport) -> dict:
    return {
        "set": list(fr.A.elems),
        "sumset": list(fr.sumset.elems),
        "sumset_size": len(fr.sumset),
        "hypothesis": fr.hypothesis_holds,
        "hull": {"start": fr.hull.start, "step": fr.hull.step, "length": fr.hull.length},
        "bound": fr.bound,
        "conclusion": fr.conclusion_holds,
        "gamma": fr.gamma,
    }


def freiman_text(fr: FreimanReport) -> str:
    k, s = len(fr.A), len(fr.sumset)
    lines = [
        f"A = {fr.A}    |A| = {k}",
        f"A + A = {fr.sumset}    |A+A| = {s}",
        f"hypothesis |A+A| <= 3|A| - 4 = {3 * k - 4}: {'yes' if fr.hypothesis_holds else 'no'}",
        f"shortest progression: start {fr.hull.start}, step {fr.hull.step}, length {fr.hull.length}",
        f"bound |A+A| - |A| + 1 = {fr.bound}: {'within' if fr.conclusion_holds else 'exceeded'}"
        + ("" if fr.hypothesis_holds else " (informational)"),
        f"genus of the monomial space: {fr.gamma}",
    ]
    return "\n".join(lines) + "\n"
