"""Command line interface. Every subcommand prints one JSON report.

Exit status: 0 success, 2 inconclusive certificate, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .catalog import (FAMILIES, NormalFormSpec, SideConditionError, build, frobenius,
                      jouanolou_bounds, represent)
from .certificates import Inconclusive, PointNotRepresentable, certify_absence, verify_certificate
from .forms import InvalidForm, basis_fol, chart_restrict, contract_radial, euler_sequence_count, reduce_weights
from .foliation import (Foliation, NotZeroDimensional, ProjPoint, ShearExhausted, is_invariant,
                        milnor_local, riccati_report, singular_points, singular_points_chart)
from .hirzebruch import hircurve_predicate, intersection_table
from .parsing import ParseError, parse_gaussrat, parse_point, parse_polynomial
from .poly import NotHomogeneous, WeightVector

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def _text(value: str) -> str:
    """Resolve @file indirection."""
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8").strip()
    return value


def _weights(args) -> WeightVector:
    return WeightVector.parse(args.weights)


def _foliation(args) -> Foliation:
    return Foliation.parse(_text(args.form), _weights(args))


def _point_json(p) -> List[str]:
    return [str(c) for c in p]


# -- subcommands --------------------------------------------------------------


def cmd_basis(args):
    w = _weights(args)
    B = basis_fol(w, args.degree)
    return {"dimension": len(B), "euler_count": euler_sequence_count(w, args.degree),
            "forms": [str(b) for b in B]}


def cmd_check(args):
    F = _foliation(args)
    C = parse_polynomial(_text(args.curve), _weights(args).as_tuple())
    res = is_invariant(F, C)
    out = {"invariant": res.invariant, "degree": F.d, "curve_degree": C.weighted_degree()}
    if res.invariant:
        out["cofactor"] = str(res.cofactor)
        out["cofactor_degree"] = res.cofactor_degree
    return out


def cmd_sing(args):
    F = _foliation(args)
    charts = []
    for i in range(3):
        sol = singular_points_chart(F, i)
        charts.append({"chart": i, "points": [_point_json(p) for p in sol.points],
                       "residual": [list(r) for r in sol.residual]})
    s = singular_points(F)
    return {"points": [str(p) for p in s.points], "complete": s.complete,
            "residual": [list(r) for r in s.residual], "charts": charts}


def cmd_milnor(args):
    return milnor_local(_foliation(args)).to_json()


def cmd_multiplicity(args):
    F = _foliation(args)
    cf = chart_restrict(F.omega, args.vertex)
    return {"vertex": args.vertex, "r": cf.r, "degrees": cf.term_degrees(),
            "chart_form": str(cf)}


def cmd_riccati(args):
    return riccati_report(_foliation(args)).to_json()


def cmd_certify(args):
    F = _foliation(args)
    coords = parse_point(args.point)
    p = ProjPoint(coords, F.weights)
    certs, inconclusive = [], []
    for n in range(1, args.max_degree + 1):
        try:
            c = certify_absence(F, p, n)
            certs.append(c.to_json())
        except Inconclusive as exc:
            inconclusive.append({"n": n, "reason": exc.reason,
                                 "data": {k: str(v) for k, v in exc.data.items()}})
    if args.out:
        Path(args.out).write_text(json.dumps(certs, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return {"point": str(p), "certificates": certs, "inconclusive": inconclusive,
            "_status": "inconclusive" if inconclusive else "ok"}


def cmd_verify(args):
    data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    items = data if isinstance(data, list) else [data]
    results = [verify_certificate(c) for c in items]
    return {"verified": results, "_status": "ok" if all(results) else "error"}


def _param(value: str):
    try:
        return int(value)
    except ValueError:
        return parse_gaussrat(value)


def cmd_example(args):
    params = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        params[key.strip()] = _param(value.strip())
    weights = tuple(WeightVector.parse(args.weights).as_tuple()) if args.weights else None
    F = build(NormalFormSpec(args.family, weights, params))
    return {"family": args.family, "weights": list(F.weights.as_tuple()), "degree": F.d,
            "form": str(F.omega), "saturated": F.saturated, "contraction_zero": not contract_radial(F.omega),
            "hash": F.hash()}


def cmd_bounds(args):
    return jouanolou_bounds(_weights(args)).to_json()


def cmd_frobenius(args):
    out = {"a": args.a, "b": args.b, "g": frobenius(args.a, args.b)}
    if args.n is not None:
        r = represent(args.a, args.b, args.n)
        out["n"] = args.n
        out["representation"] = None if r is None else list(r)
    return out


def cmd_hirzebruch(args):
    pred = hircurve_predicate(args.a, args.b, args.k)
    return {"k": args.k, "a": args.a, "b": args.b, "intersections": intersection_table(args.k, args.a, args.b),
            "forced_curve": None if pred is None else pred.to_json(),
            "generic_bound_satisfied": pred is None}


def cmd_reduce(args):
    w = WeightVector.parse(args.weights)
    return reduce_weights(*w.as_tuple()).to_json()


# -- wiring -----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wpfol", description="Foliations on weighted projective planes")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, form=False, weights=True, help=None):
        sp = sub.add_parser(name, help=help)
        if weights:
            sp.add_argument("--weights", required=True, help="l0,l1,l2")
        if form:
            sp.add_argument("--form", required=True, help="1-form text or @file")
        sp.set_defaults(func=fn)
        return sp

    add("basis", cmd_basis, help="basis of 1-forms of a normal degree").add_argument("--degree", type=int, required=True)
    add("check", cmd_check, form=True, help="test curve invariance").add_argument("--curve", required=True)
    add("sing", cmd_sing, form=True, help="singular points")
    add("milnor", cmd_milnor, form=True, help="local and global Milnor numbers")
    add("multiplicity", cmd_multiplicity, form=True, help="algebraic multiplicity at a vertex").add_argument(
        "--vertex", type=int, choices=(0, 1, 2), required=True)
    add("riccati", cmd_riccati, form=True, help="Riccati test on P(1,1,k)")
    sp = add("certify", cmd_certify, form=True, help="certify absence of invariant curves through a point")
    sp.add_argument("--point", required=True, help="x0:x1:x2")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--out", help="write certificates to this file")
    add("verify", cmd_verify, weights=False, help="re-verify certificates").add_argument("--certificate", required=True)
    sp = add("example", cmd_example, weights=False, help="build a catalog foliation")
    sp.add_argument("--family", required=True, choices=sorted(FAMILIES))
    sp.add_argument("--weights")
    sp.add_argument("--param", action="append", help="name=value, repeatable")
    add("bounds", cmd_bounds, help="degree thresholds")
    sp = add("frobenius", cmd_frobenius, weights=False, help="Frobenius number of two coprime integers")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp = add("hirzebruch", cmd_hirzebruch, weights=False, help="lattice data on F_k")
    for flag in ("--k", "--a", "--b"):
        sp.add_argument(flag, type=int, required=True)
    add("reduce", cmd_reduce, help="reduce to pairwise coprime weights")
    return p


_ERRORS = (
    (ParseError, "parse_error"),
    (InvalidForm, "invalid_form"),
    (NotHomogeneous, "not_homogeneous"),
    (SideConditionError, "side_condition"),
    (NotZeroDimensional, "not_zero_dimensional"),
    (ShearExhausted, "shear_exhausted"),
    (PointNotRepresentable, "point_not_representable"),
    (OSError, "io_error"),
    (ValueError, "value_error"),
    (ArithmeticError, "arithmetic_error"),
)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _parser().parse_args(argv)
    report = {"command": argv, "tool_version": __version__, "exact": True,
              "weights": getattr(args, "weights", None)}
    code = EXIT_OK
    try:
        results = args.func(args)
        status = results.pop("_status", "ok")
        report["results"] = results
        report["status"] = status
        code = {"ok": EXIT_OK, "inconclusive": EXIT_INCONCLUSIVE}.get(status, EXIT_ERROR)
    except Exception as exc:
        kind = next((name for cls, name in _ERRORS if isinstance(exc, cls)), None)
        if kind is None:
            raise
        report["status"] = "error"
        report["error"] = {"code": kind, "message": str(exc)}
        residual = getattr(exc, "residual", None)
        if residual is not None:
            report["error"]["residual"] = str(residual)
        code = EXIT_ERROR
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
