"""Deterministic rendering of an analysis: JSON, text, DOT.

Identical analyses render to identical bytes.  Every exact quantity is
written through its canonical string form (rationals and field elements
as exact strings, never floats); JSON objects are emitted with sorted
keys and a trailing newline.  Timing and progress belong to logging,
never to the rendered report.
"""

from __future__ import annotations

import json

from .verdict import Analysis, StabilityVerdict
from .tree import to_dot


def _opt(v) -> str | None:
    return None if v is None else str(v)


def _fraction_str(f) -> str | None:
    return None if f is None else str(f)


def _point_dict(p) -> dict:
    cls = p.classification
    out = {
        "label": p.label,
        "on_components": {ax: cid for ax, cid in sorted(p.point.on_components.items())},
        "chart": [[c, str(v)] for c, v in p.point.chart_path],
        "germ": {"A": str(p.point.germ.A), "B": str(p.point.germ.B)},
        "kind": cls.kind.value,
        "ratio": None,
        "ratio_class": None,
        "domain": None,
        "eigenvalues": None,
        "saddle": None,
        "linearize": None,
        "notes": list(cls.notes),
    }
    if cls.ratio is not None:
        if cls.ratio.value is not None:
            out["ratio"] = str(cls.ratio.value)
        else:
            B, C = cls.ratio.quad
            out["ratio"] = {"quad": [str(B), str(C)]}
    if cls.ratio_info is not None:
        out["ratio_class"] = cls.ratio_info.ratio_class.value
        out["domain"] = cls.ratio_info.domain
        if cls.ratio_info.as_fraction is not None:
            out["ratio_fraction"] = _fraction_str(cls.ratio_info.as_fraction)
    if cls.eigenvalues is not None:
        out["eigenvalues"] = [str(e) for e in cls.eigenvalues]
    if cls.kind.value == "saddle-node":
        out["saddle"] = {"p": cls.saddle_p, "weak_index": _opt(cls.saddle_lambda)}
    if p.linearize is not None:
        lin = {"status": p.linearize.status, "jet_order": p.linearize.jet_order}
        if p.linearize.status == "obstructed":
            lin["obstruction_order"] = p.linearize.obstruction_order
            lin["obstruction_monomial"] = list(p.linearize.obstruction_monomial)
        out["linearize"] = lin
    return out


def group_to_dict(g) -> dict:
    out = {
        "classification": g.classification.value,
        "order": g.order,
        "element_count": g.element_count,
        "compositions": g.compositions,
        "witness": None,
        "reason": g.reason,
        "notes": list(g.notes),
    }
    if g.witness is not None:
        word, wcls = g.witness
        out["witness"] = {
            "word": word,
            "class": wcls.kind.value,
            "through_order": wcls.through_order,
            "flat_order": wcls.flat_order,
            "obstruction_order": wcls.obstruction_order,
        }
    return out


def _verdict_dict(v: StabilityVerdict) -> dict:
    return {
        "kind": v.kind,
        "conditional": v.conditional,
        "reasons": list(v.reasons),
        "caveats": list(v.caveats),
        "witness": v.witness,
        "first_integral": _opt(v.first_integral),
        "integral_mode": v.integral_mode,
        "certification_order": v.certification_order,
        "residues": None if v.residues is None else [str(r) for r in v.residues],
        "siegel_points": list(v.siegel_points),
        "contradiction": v.contradiction,
        "notes": list(v.notes),
    }


def analysis_to_dict(an: Analysis) -> dict:
    tree = an.tree
    out = {
        "field": {"sqrt": an.germ.d},
        "input": {
            "A": str(an.germ.A),
            "B": str(an.germ.B),
            "removed_factor": _opt(an.germ.removed_factor),
        },
        "reduction": {
            "blowups": tree.blowups,
            "components": [
                {
                    "label": c.label,
                    "born_step": c.born_step,
                    "self_intersection": c.self_intersection,
                    "adjacent": sorted(c.adjacent),
                }
                for c in tree.components
            ],
        },
        "points": [_point_dict(p) for p in an.points],
        "separatrices": None,
        "logarithmic_model": None,
        "first_integral": None,
        "component_holonomy": [
            {
                "component": f"D{ch.cid}",
                "indices": {lbl: str(v) for lbl, v in sorted(ch.indices.items())},
                "index_sum": str(ch.index_sum),
                "self_intersection": ch.self_intersection,
                "index_theorem_ok": ch.index_theorem_ok,
                "group": group_to_dict(ch.group),
            }
            for ch in an.components
        ],
        "verdict": _verdict_dict(an.verdict),
    }
    if an.separatrices is not None:
        out["separatrices"] = {
            "complete": an.separatrices.complete,
            "members": [
                {
                    "poly": str(s.poly),
                    "cofactor": str(s.cofactor),
                    "source": s.source,
                }
                for s in an.separatrices.members
            ],
            "notes": list(an.separatrices.notes),
        }
    if an.model is not None:
        out["logarithmic_model"] = {
            "residues": [str(r) for r in an.model.residues],
            "real": an.model.residues_real(),
            "rational": an.model.residues_rational(),
        }
    if an.integral is not None:
        out["first_integral"] = {
            "status": an.integral.status,
            "integral": _opt(an.integral.integral),
            "exponents": an.integral.exponents,
            "notes": list(an.integral.notes),
        }
    return out


def render_json(an: Analysis) -> str:
    return json.dumps(analysis_to_dict(an), indent=2, sort_keys=True) + "\n"


def _field_name(d: int) -> str:
    return "Q(i)" if d == 1 else f"Q(i, sqrt({d}))"


def render_text(an: Analysis) -> str:
    tree = an.tree
    lines = []
    lines.append(f"field: {_field_name(an.germ.d)}")
    lines.append(f"input: omega = ({an.germ.A}) dx + ({an.germ.B}) dy")
    if an.germ.removed_factor is not None:
        lines.append(f"saturation removed the factor {an.germ.removed_factor}")
    lines.append(
        f"reduction: {tree.blowups} blow-ups, {len(tree.components)} components, "
        f"{len(tree.reduced_points)} reduced points"
    )
    for c in tree.components:
        adj = ", ".join(f"D{a}" for a in sorted(c.adjacent)) or "none"
        lines.append(f"  {c.label}: self-intersection {c.self_intersection}, adjacent {adj}")
    for p in an.points:
        cls = p.classification
        where = (
            "origin"
            if not p.point.on_components
            else ", ".join(f"D{c}" for c in sorted(set(p.point.on_components.values())))
        )
        if cls.kind.value == "saddle-node":
            desc = f"saddle-node (p = {cls.saddle_p}, weak index {cls.saddle_lambda})"
        else:
            r = cls.ratio.value
            rs = str(r) if r is not None else "quadratic over K"
            desc = f"ratio {rs} ({cls.ratio_info.ratio_class.value}, {cls.ratio_info.domain})"
        if p.linearize is not None:
            desc += f"; linearize: {p.linearize.status}"
        lines.append(f"  {p.label} on {where}: {desc}")
    if an.separatrices is not None:
        flag = "complete" if an.separatrices.complete else "incomplete"
        lines.append(f"separatrices ({flag}):")
        for s in an.separatrices.members:
            lines.append(f"  {s.poly}  [cofactor {s.cofactor}, from {s.source}]")
        for n in an.separatrices.notes:
            lines.append(f"  note: {n}")
    if an.model is not None:
        lines.append(
            "logarithmic model residues: "
            + ", ".join(str(r) for r in an.model.residues)
        )
    if an.integral is not None and an.integral.integral is not None:
        exps = ", ".join(str(e) for e in an.integral.exponents)
        lines.append(
            f"first integral ({an.integral.status}): {an.integral.integral}"
            f"  [exponents {exps}]"
        )
    for ch in an.components:
        check = "matches" if ch.index_theorem_ok else "DOES NOT match"
        lines.append(
            f"holonomy of D{ch.cid}: index sum {ch.index_sum} {check} "
            f"self-intersection {ch.self_intersection}; "
            f"group {ch.group.classification.value}"
        )
    v = an.verdict
    head = f"VERDICT: {v.kind}"
    if v.conditional:
        head += " (conditional)"
    lines.append(head)
    for r in v.reasons:
        lines.append(f"  reason: {r}")
    for c in v.caveats:
        lines.append(f"  caveat: {c}")
    if v.witness is not None:
        w = ", ".join(f"{k}={v.witness[k]}" for k in sorted(v.witness))
        lines.append(f"  witness: {w}")
    if v.first_integral is not None:
        lines.append(f"  first integral: {v.first_integral} [{v.integral_mode}]")
    elif v.integral_mode is not None:
        lines.append(f"  first integral evidence: {v.integral_mode}")
    if v.contradiction:
        lines.append("  CONTRADICTION: evidence streams disagree; see notes")
    for n in v.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def render_dot(an: Analysis) -> str:
    notes = {}
    for p in an.points:
        cls = p.classification
        if cls.kind.value == "saddle-node":
            notes[p.point.pid] = f"saddle-node p={cls.saddle_p}"
        elif cls.ratio is not None and cls.ratio.value is not None:
            notes[p.point.pid] = f"ratio {cls.ratio.value}"
        else:
            notes[p.point.pid] = "ratio quadratic over K"
    return to_dot(an.tree, notes)
