"""Command-line front end.

Three subcommands over JSON requests:

  analyze   full pipeline on a 1-form or vector-field germ; report as
            json (default), text, or dot.
  group     classify a holonomy pseudogroup given by generator germs.
  orbit     floating-point pseudo-orbit walk for generator maps.

The analyze report is deterministic: identical request bytes produce
identical report bytes, exact values rendered as exact strings.  The
orbit simulator is the one deliberately floating-point corner.  Stage
timings go to stderr via logging and never into the report.

Exit codes: 0 for any completed verdict (NotLStable included), 2 for
request parse errors, 3 for structured analysis failures (dicritical
reduction, point outside the field, budget exhaustion, ambiguity), 1
for anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import traceback
from fractions import Fraction

from .errors import FolstabError, ParseError
from .field import KElement, check_field_parameter
from .germs import FormalGerm, Multiplier, classify_group, closed_orbit_criterion
from .orbit import NumericGerm, simulate_pseudo_orbit
from .poly import OneFormGerm, SparsePoly
from .report import group_to_dict, render_dot, render_json, render_text
from .verdict import decide_l_stability

DEFAULTS = {"jet_order": 20, "max_blowups": 64, "degree_bound": 6}


# -- request parsing ---------------------------------------------------


def _expect_object(v, path):
    if not isinstance(v, dict):
        raise ParseError(path, "expected an object")
    return v


def _expect_list(v, path):
    if not isinstance(v, list):
        raise ParseError(path, "expected an array")
    return v


def _reject_unknown(obj: dict, allowed, path):
    for k in obj:
        if k not in allowed:
            raise ParseError(path, f"unknown field {k!r}")


def _parse_fraction(s, path) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(path, "expected a rational as a string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(path, f"not a rational number: {s!r}")


def _parse_kelement(v, d, path) -> KElement:
    arr = _expect_list(v, path)
    if len(arr) != 4:
        raise ParseError(path, f"expected 4 components (1, sqrt, i, i*sqrt), got {len(arr)}")
    qs = [_parse_fraction(x, f"{path}/{i}") for i, x in enumerate(arr)]
    return KElement(d, *qs)


def _parse_field(obj, path) -> int:
    f = _expect_object(obj, path)
    _reject_unknown(f, ("sqrt",), path)
    if "sqrt" not in f:
        raise ParseError(path, "missing 'sqrt'")
    d = f["sqrt"]
    try:
        return check_field_parameter(d)
    except ValueError as e:
        raise ParseError(f"{path}/sqrt", str(e))


def _parse_poly(v, d, path) -> SparsePoly:
    arr = _expect_list(v, path)
    out = SparsePoly.zero(d)
    for i, m in enumerate(arr):
        mp = f"{path}/{i}"
        mo = _expect_object(m, mp)
        _reject_unknown(mo, ("ex", "ey", "c"), mp)
        for k in ("ex", "ey", "c"):
            if k not in mo:
                raise ParseError(mp, f"missing '{k}'")
        ex, ey = mo["ex"], mo["ey"]
        for name, e in (("ex", ex), ("ey", ey)):
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ParseError(f"{mp}/{name}", "expected a non-negative integer")
        c = _parse_kelement(mo["c"], d, f"{mp}/c")
        out = out + SparsePoly.monomial(d, ex, ey, c)
    return out


def _parse_options(obj, path) -> dict:
    o = _expect_object(obj, path)
    _reject_unknown(o, tuple(DEFAULTS), path)
    out = {}
    for k, v in o.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ParseError(f"{path}/{k}", "expected a positive integer")
        out[k] = v
    return out


def parse_analyze_request(data: dict) -> tuple[OneFormGerm, dict]:
    top = _expect_object(data, "/")
    _reject_unknown(top, ("field", "one_form", "vector_field", "options"), "/")
    if "field" not in top:
        raise ParseError("/", "missing 'field'")
    d = _parse_field(top["field"], "/field")
    has_form = "one_form" in top
    has_vf = "vector_field" in top
    if has_form == has_vf:
        raise ParseError("/", "exactly one of vector_field|one_form")
    if has_form:
        f = _expect_object(top["one_form"], "/one_form")
        _reject_unknown(f, ("A", "B"), "/one_form")
        for k in ("A", "B"):
            if k not in f:
                raise ParseError("/one_form", f"missing '{k}'")
        A = _parse_poly(f["A"], d, "/one_form/A")
        B = _parse_poly(f["B"], d, "/one_form/B")
        try:
            germ = OneFormGerm(A, B)
        except ValueError as e:
            raise ParseError("/one_form", str(e))
    else:
        f = _expect_object(top["vector_field"], "/vector_field")
        _reject_unknown(f, ("P", "Q"), "/vector_field")
        for k in ("P", "Q"):
            if k not in f:
                raise ParseError("/vector_field", f"missing '{k}'")
        P = _parse_poly(f["P"], d, "/vector_field/P")
        Q = _parse_poly(f["Q"], d, "/vector_field/Q")
        try:
            germ = OneFormGerm.from_vector_field(P, Q)
        except ValueError as e:
            raise ParseError("/vector_field", str(e))
    options = _parse_options(top.get("options", {}), "/options")
    return germ, options


def _parse_multiplier(v, d, path) -> Multiplier:
    m = _expect_object(v, path)
    _reject_unknown(m, ("value", "exp"), path)
    if ("value" in m) == ("exp" in m):
        raise ParseError(path, "exactly one of value|exp")
    if "value" in m:
        k = _parse_kelement(m["value"], d, f"{path}/value")
        try:
            return Multiplier.of(k)
        except ValueError as e:
            raise ParseError(f"{path}/value", str(e))
    e = m["exp"]
    if isinstance(e, (str, int)):
        return Multiplier.exp2pi_i(_parse_fraction(e, f"{path}/exp"))
    return Multiplier.exp2pi_i(_parse_kelement(e, d, f"{path}/exp"))


def parse_group_request(data: dict, jet_order: int) -> list[FormalGerm]:
    top = _expect_object(data, "/")
    _reject_unknown(top, ("field", "generators"), "/")
    if "field" not in top:
        raise ParseError("/", "missing 'field'")
    d = _parse_field(top["field"], "/field")
    if "generators" not in top:
        raise ParseError("/", "missing 'generators'")
    gens = _expect_list(top["generators"], "/generators")
    out = []
    for i, g in enumerate(gens):
        gp = f"/generators/{i}"
        go = _expect_object(g, gp)
        _reject_unknown(go, ("multiplier", "jets"), gp)
        if "multiplier" not in go:
            raise ParseError(gp, "missing 'multiplier'")
        mult = _parse_multiplier(go["multiplier"], d, f"{gp}/multiplier")
        jets = {}
        for ks, v in _expect_object(go.get("jets", {}), f"{gp}/jets").items():
            try:
                k = int(ks)
            except ValueError:
                raise ParseError(f"{gp}/jets", f"jet exponent must be an integer, got {ks!r}")
            jets[k] = _parse_kelement(v, d, f"{gp}/jets/{ks}")
        try:
            out.append(FormalGerm(d, mult, jets, order=jet_order))
        except ValueError as e:
            raise ParseError(gp, str(e))
    return out


def _parse_float(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise ParseError(path, "expected a number")
    try:
        return float(v)
    except ValueError:
        raise ParseError(path, f"not a number: {v!r}")


def _parse_complex(v, path) -> complex:
    arr = _expect_list(v, path)
    if len(arr) != 2:
        raise ParseError(path, "expected [re, im]")
    return complex(_parse_float(arr[0], f"{path}/0"), _parse_float(arr[1], f"{path}/1"))


def parse_orbit_request(data: dict, default_radius: float) -> tuple[list[NumericGerm], complex]:
    top = _expect_object(data, "/")
    _reject_unknown(top, ("generators", "seed"), "/")
    for k in ("generators", "seed"):
        if k not in top:
            raise ParseError("/", f"missing '{k}'")
    gens = _expect_list(top["generators"], "/generators")
    maps = []
    for i, g in enumerate(gens):
        gp = f"/generators/{i}"
        go = _expect_object(g, gp)
        _reject_unknown(go, ("multiplier", "coefficients", "radius"), gp)
        if "multiplier" not in go:
            raise ParseError(gp, "missing 'multiplier'")
        mult = _parse_complex(go["multiplier"], f"{gp}/multiplier")
        coeffs = [mult]
        for j, c in enumerate(_expect_list(go.get("coefficients", []), f"{gp}/coefficients")):
            coeffs.append(_parse_complex(c, f"{gp}/coefficients/{j}"))
        radius = _parse_float(go.get("radius", default_radius), f"{gp}/radius")
        if radius <= 0:
            raise ParseError(f"{gp}/radius", "radius must be positive")
        maps.append(NumericGerm(tuple(coeffs), radius))
    seed = _parse_complex(top["seed"], "/seed")
    return maps, seed


# -- subcommands -------------------------------------------------------


def _load(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ParseError("/", f"cannot read {path}: {e.strerror}")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError("/", f"invalid JSON: {e}")


def cmd_analyze(args) -> int:
    germ, options = parse_analyze_request(_load(args.input))
    eff = dict(DEFAULTS)
    eff.update(options)
    for k in DEFAULTS:
        v = getattr(args, k)
        if v is not None:
            eff[k] = v
    analysis = decide_l_stability(
        germ,
        jet_order=eff["jet_order"],
        max_blowups=eff["max_blowups"],
        degree_bound=eff["degree_bound"],
    )
    render = {"json": render_json, "text": render_text, "dot": render_dot}[args.format]
    sys.stdout.write(render(analysis))
    return 0


def cmd_group(args) -> int:
    germs = parse_group_request(_load(args.input), args.jet_order)
    result = classify_group(germs, word_budget=args.word_budget)
    out = group_to_dict(result)
    out["closed_orbits"] = closed_orbit_criterion(result)
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_orbit(args) -> int:
    maps, seed = parse_orbit_request(_load(args.input), args.v_radius)
    result = simulate_pseudo_orbit(maps, seed, args.u_radius, budget=args.steps)
    out = {
        "escaped": result.escaped,
        "escape_step": result.escape_step,
        "escape_point": None
        if result.escape_point is None
        else [result.escape_point.real, result.escape_point.imag],
        "expansions": result.expansions,
        "visited": result.visited,
        "max_drift": result.max_drift,
        "notes": list(result.notes),
    }
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="folstab",
        description="Exact analyzer for singular holomorphic foliation germs in C^2.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="resolve, classify, and decide L-stability")
    pa.add_argument("--input", required=True, help="JSON request file")
    pa.add_argument("--jet-order", type=int, default=None, dest="jet_order")
    pa.add_argument("--max-blowups", type=int, default=None, dest="max_blowups")
    pa.add_argument("--degree-bound", type=int, default=None, dest="degree_bound")
    pa.add_argument("--format", choices=("json", "text", "dot"), default="json")
    pa.set_defaults(func=cmd_analyze)

    pg = sub.add_parser("group", help="classify a holonomy pseudogroup")
    pg.add_argument("--input", required=True, help="JSON request file")
    pg.add_argument("--word-budget", type=int, default=200, dest="word_budget")
    pg.add_argument("--jet-order", type=int, default=12, dest="jet_order")
    pg.set_defaults(func=cmd_group)

    po = sub.add_parser("orbit", help="walk a floating-point pseudo-orbit")
    po.add_argument("--input", required=True, help="JSON request file")
    po.add_argument("--u-radius", type=float, default=1.0, dest="u_radius")
    po.add_argument("--v-radius", type=float, default=0.8, dest="v_radius")
    po.add_argument("--steps", type=int, default=10000)
    po.set_defaults(func=cmd_orbit)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(name)s: %(message)s"
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error at {e.path}: {e.detail}", file=sys.stderr)
        return 2
    except FolstabError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
