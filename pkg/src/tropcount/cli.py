"""Command line front end: ``tropcount <subcommand> FILE``.

Errors go to stderr as ``error[<code>]: <message>`` and set the exit status:
0 ok, 2 parse, 3 invariant, 4 dimension, 5 generality, 6 field extension,
7 precision, 8 lifting stalled.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .deformation import sign_from_coefficients
from .enumerator import enumerate_curves, check_dimension
from .errors import GeneralityError, ParseError, TropError
from .io import curves_from_result, dumps, load_json, problem_from_dict, result_to_dict, PROBLEM_SCHEMA, RESULT_SCHEMA
from .lifting import LiftingSystem
from .svg import render_svg


def _parse_sign(text: str):
    if text in ("positive", "coefficients"):
        return text
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"--sign must be 'positive', 'coefficients' or a comma list of +1/-1, got {text!r}") from None
    if any(v not in (1, -1) for v in vals):
        raise ParseError("--sign entries must be +1 or -1")
    return vals


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _enumerate(args):
    problem = problem_from_dict(load_json(args.problem))
    result = enumerate_curves(problem, workers=args.workers)
    return problem, result


def _require_general(result, strict: bool):
    if not result.general and strict:
        raise GeneralityError("constraints are not tropically general: some type solves with a zero-length edge")


def _resolve_sign(sign, result, problem):
    if sign == "coefficients":
        if not result.curves:
            return "positive"
        return sign_from_coefficients(result.curves[0].theta, problem)
    if sign is None:
        return tuple(problem.signs) if problem.signs is not None else "positive"
    return sign


def cmd_validate(args) -> int:
    problem = problem_from_dict(load_json(args.problem))
    defect = problem.dimension_defect()
    if args.dimension:
        check_dimension(problem)
    print(f"ok: r={problem.r} s={problem.s} rank={problem.rank} dimension-defect={defect}")
    return 0


def cmd_enumerate(args) -> int:
    problem, result = _enumerate(args)
    signs = None
    if args.sign:
        sign = _resolve_sign(_parse_sign(args.sign), result, problem)
        label = sign if isinstance(sign, str) else ",".join(map(str, sign))
        signs = {label: result.real_multiplicities(sign)}
    _write(dumps(result_to_dict(result, signs=signs)), args.output)
    _require_general(result, args.strict)
    return 0


def cmd_count(args) -> int:
    _, result = _enumerate(args)
    print(result.total_complex)
    _require_general(result, args.strict)
    return 0


def cmd_real_count(args) -> int:
    problem, result = _enumerate(args)
    sign = _resolve_sign(_parse_sign(args.sign) if args.sign else None, result, problem)
    print(result.real_count(sign))
    _require_general(result, args.strict)
    return 0


def cmd_lift(args) -> int:
    problem, result = _enumerate(args)
    order = args.order if args.order is not None else problem.lift_order
    if order is None:
        raise ParseError("lift needs --order or a lift_order entry in the problem file")
    lifts = {k: LiftingSystem(c.curve, problem).lift(order) for k, c in enumerate(result.curves)}
    _write(dumps(result_to_dict(result, lifts=lifts)), args.output)
    total = sum(len(v) for v in lifts.values())
    print(f"lifted {total} map(s) from {len(result.curves)} curve(s) to order {order}", file=sys.stderr)
    _require_general(result, args.strict)
    return 0


def cmd_render(args) -> int:
    doc = load_json(args.input)
    if doc.get("schema") == RESULT_SCHEMA:
        curves = curves_from_result(doc)
    elif doc.get("schema") == PROBLEM_SCHEMA:
        curves = [c.curve for c in enumerate_curves(problem_from_dict(doc)).curves]
    else:
        raise ParseError(f"render expects a problem or result file, got schema {doc.get('schema')!r}")
    projection = None
    if args.projection:
        try:
            projection = [[Fraction(x) for x in row.split(",")] for row in args.projection.split(";")]
        except ValueError:
            raise ParseError("--projection must look like 'a,b,c;d,e,f'") from None
    bbox = tuple(Fraction(x) for x in args.bbox) if args.bbox else None
    os.makedirs(args.out_dir, exist_ok=True)
    for k, curve in enumerate(curves):
        path = os.path.join(args.out_dir, f"curve_{k}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(curve, bbox, projection=projection))
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropcount", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tropcount {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=True):
        sp.add_argument("problem", help="problem JSON file")
        if workers:
            sp.add_argument("--workers", type=int, default=None, help="process pool size for the type sweep")
            sp.add_argument("--strict", action="store_true", help="exit 5 when the constraints are not tropically general")

    sp = sub.add_parser("validate", help="parse and check a problem file")
    common(sp, workers=False)
    sp.add_argument("--dimension", action="store_true", help="also require the dimension condition")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("enumerate", help="write the result file for a problem")
    common(sp)
    sp.add_argument("-o", "--output", default=None, help="result path (default stdout)")
    sp.add_argument("--sign", default=None, help="also record real multiplicities for this sign")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("count", help="print the total complex count")
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("real-count", help="print the total real count")
    common(sp)
    sp.add_argument("--sign", default=None, help="'positive', 'coefficients' or a comma list of +1/-1")
    sp.set_defaults(func=cmd_real_count)

    sp = sub.add_parser("lift", help="lift every curve to truncated series")
    common(sp)
    sp.add_argument("--order", type=int, default=None, help="truncation order T")
    sp.add_argument("-o", "--output", default=None, help="result path (default stdout)")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("render", help="one SVG per curve")
    sp.add_argument("input", help="problem or result JSON file")
    sp.add_argument("--bbox", nargs=4, metavar=("XMIN", "YMIN", "XMAX", "YMAX"), help="drawing window")
    sp.add_argument("--projection", default=None, help="2-row projection 'a,b,..;c,d,..' for rank > 2")
    sp.add_argument("--out-dir", default=".", help="directory for curve_<k>.svg")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TropError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
