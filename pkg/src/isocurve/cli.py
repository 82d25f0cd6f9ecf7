"""Command-line entry point.

Exit status: 0 success, 1 negative answer, 2 invalid input, 3 environment
failure (for example a missing solver).  Results go to stdout as JSON unless
the subcommand produces text (``emit``, ``render-svg``); diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from isocurve.codes import InvalidCode, SignedCrossingCode, equivalent_codes, validate
from isocurve.exact_geom import rational

OK, NEGATIVE, INVALID, ENVIRONMENT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _curve(path: str) -> SignedCrossingCode:
    return SignedCrossingCode.from_dict(_load_json(path))


def _polygon(path: str):
    from isocurve.polyscan import Polygon

    return Polygon.from_dict(_load_json(path))


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if not out:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".isocurve-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def _json(args, obj) -> None:
    _emit(args, json.dumps(obj) + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_validate_code(args) -> int:
    code = _curve(args.curve)
    rep = validate(code)
    _json(args, rep.to_dict())
    return OK if rep.valid else NEGATIVE


def cmd_equiv_codes(args) -> int:
    codes = sorted(equivalent_codes(_curve(args.curve)))
    _json(args, {"count": len(codes), "codes": [c.to_dict() for c in codes]})
    return OK


def cmd_check_generic(args) -> int:
    from isocurve.polyscan import check_generic

    rep = check_generic(_polygon(args.polygon))
    _json(args, rep.to_dict())
    return OK if rep.generic else NEGATIVE


def cmd_extract_codes(args) -> int:
    from isocurve.polyscan import extract_codes

    exs = extract_codes(_polygon(args.polygon))
    _json(
        args,
        {
            "extractions": [
                {
                    "basepoint": ex.basepoint,
                    "reversed": ex.reversed,
                    "code": ex.code.to_dict(),
                    "edge": list(ex.edge.entries),
                }
                for ex in exs
            ]
        },
    )
    return OK


def cmd_isotopic(args) -> int:
    from isocurve.polyscan import is_isotopic

    ans = is_isotopic(_polygon(args.polygon), _curve(args.curve))
    _json(args, {"isotopic": ans})
    return OK if ans else NEGATIVE


def _sentence(args):
    from isocurve.etrc import isotopic_to_polygon

    if args.m < 3:
        raise InputError("--m must be at least 3")
    return isotopic_to_polygon(_curve(args.curve), args.m, prune=not args.no_prune)


def cmd_emit(args) -> int:
    from isocurve.etrc import serialize

    _emit(args, serialize(_sentence(args), args.dialect))
    return OK


def cmd_stats(args) -> int:
    from isocurve.etrc import stats

    _json(args, stats(_sentence(args)).to_dict())
    return OK


def _wiring(args):
    from isocurve.reduce import WiringDiagram, ringel

    if args.ringel:
        return ringel()
    if not args.wiring:
        raise InputError("give --wiring FILE or --ringel")
    return WiringDiagram.from_dict(_load_json(args.wiring))


def cmd_reduce(args) -> int:
    from isocurve.reduce import curve_from_arrangement, pad_to_odd

    w = _wiring(args)
    if args.pad:
        w = pad_to_odd(w)
    _json(args, curve_from_arrangement(w).to_dict())
    return OK


def cmd_staple(args) -> int:
    from isocurve.reduce import LineArrangement, stapled

    L = LineArrangement.from_dict(_load_json(args.lines))
    res = stapled(L, rational(args.epsilon), seed=args.seed)
    _json(args, {"epsilon": str(res.epsilon), "polygon": res.polygon.to_dict(), "code": res.code.to_dict()})
    return OK


def cmd_straighten(args) -> int:
    from isocurve.straighten import straighten_upperbound

    res = straighten_upperbound(_curve(args.curve), seed=args.seed)
    _json(args, res.to_dict())
    return OK if res.verified else NEGATIVE


def cmd_min_search(args) -> int:
    from isocurve.straighten import min_polygon_search

    rep = min_polygon_search(_curve(args.curve), args.m_max, m_min=args.m_min, timeout=args.timeout, cmd=args.solver)
    _json(args, rep.to_dict())
    if not rep.solver_available:
        print("solver unavailable; reported the constructive upper bound only", file=sys.stderr)
        return ENVIRONMENT
    return OK if any(o.status == "sat" for o in rep.outcomes) else NEGATIVE


def cmd_render_svg(args) -> int:
    from isocurve.reduce import curve_from_arrangement
    from isocurve.svg import render_svg

    given = [a for a in (args.polygon, args.curve, args.wiring) if a] + (["ringel"] if args.ringel else [])
    if len(given) != 1:
        raise InputError("give exactly one of --polygon, --curve, --wiring, --ringel")
    if args.polygon:
        obj = _polygon(args.polygon)
    elif args.curve:
        obj = _curve(args.curve)
    else:
        obj = curve_from_arrangement(_wiring(args))
    _emit(args, render_svg(obj, seed=args.seed))
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isocurve", description="Plane curves, polygons and their isotopy.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write the result here instead of stdout")
        return p

    p = add("validate-code", cmd_validate_code, "check a signed crossing code")
    p.add_argument("--curve", required=True)
    p = add("equiv-codes", cmd_equiv_codes, "all codes of the same plane curve")
    p.add_argument("--curve", required=True)
    p = add("check-generic", cmd_check_generic, "general-position report for a polygon")
    p.add_argument("--polygon", required=True)
    p = add("extract-codes", cmd_extract_codes, "codes read from every convex hull vertex")
    p.add_argument("--polygon", required=True)
    p = add("isotopic", cmd_isotopic, "is the polygon isotopic to the curve?")
    p.add_argument("--polygon", required=True)
    p.add_argument("--curve", required=True)
    for name, func, help_ in (
        ("emit", cmd_emit, "write the m-gon sentence for a curve"),
        ("stats", cmd_stats, "size statistics of the m-gon sentence"),
    ):
        p = add(name, func, help_)
        p.add_argument("--curve", required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--no-prune", action="store_true", help="literal construction, no pruning")
        if name == "emit":
            p.add_argument("--dialect", choices=("smt2", "infix"), default="smt2")
    p = add("reduce", cmd_reduce, "curve of a wiring diagram")
    p.add_argument("--wiring")
    p.add_argument("--ringel", action="store_true", help="use the built-in 9-wire diagram")
    p.add_argument("--pad", action="store_true", help="add a wire first when n is even")
    p = add("staple", cmd_staple, "4n-gon for a line arrangement")
    p.add_argument("--lines", required=True)
    p.add_argument("--epsilon", default="1/8")
    p.add_argument("--seed", type=int, default=0)
    p = add("straighten", cmd_straighten, "polygon with at most 6n vertices for a curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--seed", type=int, default=0)
    p = add("min-search", cmd_min_search, "solver search for the fewest polygon vertices")
    p.add_argument("--curve", required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--timeout", type=float, default=60)
    p.add_argument("--solver", help="solver command (default: $SOLVER_CMD or z3)")
    p = add("render-svg", cmd_render_svg, "SVG picture of a polygon or curve")
    p.add_argument("--polygon")
    p.add_argument("--curve")
    p.add_argument("--wiring")
    p.add_argument("--ringel", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    from isocurve.polyscan import NotGeneric
    from isocurve.reduce import BadArrangement, EvenN, InvalidWiring, StapleFailed
    from isocurve.straighten import PerturbationFailed, SolverUnavailable

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidCode, NotGeneric, InvalidWiring, EvenN, BadArrangement, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except SolverUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ENVIRONMENT
    except (StapleFailed, PerturbationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ENVIRONMENT


if __name__ == "__main__":
    sys.exit(main())
