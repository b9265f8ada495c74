"""JSON problem and result files.

Rationals are written as ``"p/q"`` strings (integers as ``"p"``); input
also accepts JSON integers but never floats. Both file kinds carry a
``schema`` field; output is key-sorted and deterministic.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from . import __version__
from .curves import TropicalCurve
from .errors import ParseError
from .problem import Constraint, ProblemSpec
from .series import TSeries
from .trees import MarkedTree

PROBLEM_SCHEMA = "tropcount/problem@1"
RESULT_SCHEMA = "tropcount/result@1"


# --- scalars -------------------------------------------------------------------

def rat(x: Any, where: str = "value") -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"{where}: cannot read {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list")
    return x


def series_json(s: TSeries) -> dict:
    return {
        "text": str(s),
        "ramification": s.e,
        "precision": None if s.prec == float("inf") else int(s.prec),
        "coefficients": [[k, rat_str(c)] for k, c in sorted(s.coeffs.items())],
    }


def edge_name(edge) -> str:
    return f"{edge[0]}{edge[1]}"


# --- problems ------------------------------------------------------------------

def problem_from_dict(doc: dict) -> ProblemSpec:
    if not isinstance(doc, dict):
        raise ParseError("problem file must hold a JSON object")
    schema = doc.get("schema")
    if schema != PROBLEM_SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}; expected {PROBLEM_SCHEMA!r}")
    degrees = [[_int(x, "degrees") for x in _list(d, "degrees")] for d in _list(doc.get("degrees"), "degrees")]
    if not degrees:
        raise ParseError("degrees: at least one end is required")
    n = len(degrees[0])
    if "rank" in doc and _int(doc["rank"], "rank") != n:
        raise ParseError("rank does not match the length of the degree vectors")
    cons: dict[int, tuple] = {}
    for k, c in enumerate(_list(doc.get("constraints", []), "constraints")):
        where = f"constraints[{k}]"
        if not isinstance(c, dict):
            raise ParseError(f"{where}: expected an object")
        i = _int(c.get("end"), f"{where}.end")
        if i in cons:
            raise ParseError(f"{where}: end {i} constrained twice")
        lattice = [[_int(x, f"{where}.lattice") for x in _list(row, f"{where}.lattice")] for row in _list(c.get("lattice", []), f"{where}.lattice")]
        point = [rat(x, f"{where}.point") for x in _list(c.get("point"), f"{where}.point")]
        coeff = c.get("coefficients")
        coeff = [rat(x, f"{where}.coefficients") for x in _list(coeff, f"{where}.coefficients")] if coeff is not None else None
        cons[i] = (lattice, point, coeff)
    J, lam, lam_c = [], [], []
    any_coeff = False
    for k, row in enumerate(_list(doc.get("cross_ratios", []), "cross_ratios")):
        where = f"cross_ratios[{k}]"
        if not isinstance(row, dict):
            raise ParseError(f"{where}: expected an object")
        J.append([_int(x, f"{where}.ends") for x in _list(row.get("ends"), f"{where}.ends")])
        lam.append(rat(row.get("lambda_trop"), f"{where}.lambda_trop"))
        if "coefficient" in row:
            any_coeff = True
        lam_c.append(rat(row.get("coefficient", 1), f"{where}.coefficient"))
    kw: dict[str, Any] = {}
    if doc.get("signs") is not None:
        kw["signs"] = tuple(_int(x, "signs") for x in _list(doc["signs"], "signs"))
    if doc.get("lift_order") is not None:
        kw["lift_order"] = _int(doc["lift_order"], "lift_order")
    if doc.get("beta") is not None:
        if not isinstance(doc["beta"], dict):
            raise ParseError("beta: expected an object mapping end splits to rationals")
        kw["beta"] = {str(k): rat(v, f"beta[{k}]") for k, v in sorted(doc["beta"].items())}
    for i in cons:
        if not 1 <= i <= len(degrees):
            raise ParseError(f"constraint on end {i}, but there are {len(degrees)} ends")
    return ProblemSpec.build(degrees, cons, J, lam, lam_c if any_coeff else None, **kw)


def problem_to_dict(p: ProblemSpec) -> dict:
    doc: dict[str, Any] = {
        "schema": PROBLEM_SCHEMA,
        "rank": p.rank,
        "degrees": [list(d) for d in p.degrees],
        "constraints": [],
        "cross_ratios": [],
    }
    for i, c in enumerate(p.constraints, 1):
        entry: dict[str, Any] = {
            "end": i,
            "lattice": [list(row) for row in c.lattice],
            "point": [rat_str(x) for x in c.point],
        }
        if c.coefficients is not None:
            entry["coefficients"] = [rat_str(x) for x in c.coefficients]
        doc["constraints"].append(entry)
    for k, row in enumerate(p.cross_ratios):
        entry = {"ends": list(row), "lambda_trop": rat_str(p.lambda_trop[k])}
        if p.lambda_coefficients is not None:
            entry["coefficient"] = rat_str(p.lambda_coefficients[k])
        doc["cross_ratios"].append(entry)
    if p.signs is not None:
        doc["signs"] = list(p.signs)
    if p.lift_order is not None:
        doc["lift_order"] = p.lift_order
    if p.beta:
        doc["beta"] = {str(k): rat_str(v) for k, v in sorted(p.beta.items(), key=lambda kv: str(kv[0]))}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def load_problem(path: str) -> ProblemSpec:
    return problem_from_dict(load_json(path))


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def problem_hash(p: ProblemSpec) -> str:
    canon = json.dumps(problem_to_dict(p), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# --- curves and results --------------------------------------------------------

def curve_to_dict(curve: TropicalCurve) -> dict:
    t = curve.tree
    return {
        "tree": {
            "n_finite": t.n_finite,
            "end_vertex": list(t.end_vertex),
            "bounded": [list(ab) for ab in t.bounded],
            "splits": [sorted(s) for s in t.canonical_key],
        },
        "slopes": {edge_name(e): list(v) for e, v in sorted(curve.slopes.items())},
        "lengths": {edge_name(e): rat_str(x) for e, x in sorted(curve.lengths.items())},
        "positions": {str(w): [rat_str(x) for x in p] for w, p in sorted(curve.positions.items())},
    }


def curve_from_dict(doc: dict) -> TropicalCurve:
    try:
        t = doc["tree"]
        tree = MarkedTree(t["n_finite"], tuple(t["end_vertex"]), tuple(tuple(ab) for ab in t["bounded"]))

        def edge(name: str):
            return (name[0], int(name[1:]))

        slopes = {edge(k): tuple(v) for k, v in doc["slopes"].items()}
        lengths = {edge(k): rat(v, "lengths") for k, v in doc["lengths"].items()}
        positions = {int(k): tuple(rat(x, "positions") for x in v) for k, v in doc["positions"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed curve entry: {exc}") from None
    return TropicalCurve(tree, slopes, lengths, positions)


def lift_to_dict(lm) -> dict:
    tree = lm.system.tree
    return {
        "order": lm.order,
        "ramification": lm.e,
        "iterations": lm.iterations,
        "residual_orders": [None if x == float("inf") else int(x) for x in lm.residual_orders],
        "alpha": {edge_name(e): series_json(s) for e, s in sorted(lm.alpha.items())},
        "beta": {edge_name(e): rat_str(b) for e, b in sorted(lm.beta.items())},
        "chi": {str(w): [series_json(s) for s in lm.chi(w)] for w in range(tree.n_finite)},
        "marked_points": {str(i): series_json(s) for i, s in sorted(lm.marked_points().items())},
    }


def result_to_dict(result, lifts: dict | None = None, signs: dict | None = None) -> dict:
    """Serialize an enumeration result.

    ``lifts`` maps a curve index to its list of lifted maps; ``signs`` maps
    a sign label to the per-curve real multiplicities.
    """
    counts: dict[str, int] = {}
    for d in result.diagnostics:
        counts[d.reason] = counts.get(d.reason, 0) + 1
    curves = []
    for k, c in enumerate(result.curves):
        entry = curve_to_dict(c.curve)
        entry.update(
            divisors=list(c.report.divisors),
            m_complex=c.report.m_complex,
            epsilon_even=c.report.epsilon_even,
            e1_rank=c.report.e1_rank,
        )
        if signs:
            entry["m_real"] = {label: vals[k] for label, vals in sorted(signs.items())}
        if lifts is not None and k in lifts:
            entry["lifts"] = [lift_to_dict(lm) for lm in lifts[k]]
        curves.append(entry)
    doc = {
        "schema": RESULT_SCHEMA,
        "tool_version": __version__,
        "problem_sha256": problem_hash(result.problem),
        "problem": problem_to_dict(result.problem),
        "types_visited": result.types_visited,
        "general": result.general,
        "diagnostics": dict(sorted(counts.items())),
        "total_complex": result.total_complex,
        "curves": curves,
    }
    if signs:
        doc["total_real"] = {label: sum(vals) for label, vals in sorted(signs.items())}
    return doc


def curves_from_result(doc: dict) -> list[TropicalCurve]:
    if doc.get("schema") != RESULT_SCHEMA:
        raise ParseError(f"unsupported schema {doc.get('schema')!r}; expected {RESULT_SCHEMA!r}")
    return [curve_from_dict(c) for c in _list(doc.get("curves"), "curves")]
