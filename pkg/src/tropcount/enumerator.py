"""Enumerate the tropical curves satisfying a problem's constraints.

Each trivalent type is handled independently: slopes from balancing, then
the rational linear system ``theta x = (0, zeta, lambda)``; a type yields a
curve when that system has a unique solution with positive lengths.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .curves import CombinatorialType, TropicalCurve, _add, _scale
from .deformation import MultiplicityReport, ThetaComplex, build_theta, multiplicity_report, real_multiplicity
from .errors import DimensionError
from .linalg import solve_rational
from .problem import ProblemSpec
from .trees import MarkedTree, enumerate_trivalent_trees, geodesic, is_end

log = logging.getLogger(__name__)

NO_SOLUTION = "no-solution"
NONPOSITIVE = "nonpositive-length"
SINGULAR = "singular-system"
GENERALITY = "generality-violation"


@dataclass
class AcceptedCurve:
    curve: TropicalCurve
    report: MultiplicityReport
    theta: ThetaComplex = field(repr=False)

    @property
    def key(self) -> tuple:
        return self.curve.tree.canonical_key


@dataclass
class Rejection:
    key: tuple
    reason: str


@dataclass
class EnumerationResult:
    problem: ProblemSpec
    curves: list[AcceptedCurve]
    diagnostics: list[Rejection]
    types_visited: int
    total_real: dict[str, int] = field(default_factory=dict)

    @property
    def total_complex(self) -> int:
        return sum(c.report.m_complex for c in self.curves)

    @property
    def general(self) -> bool:
        return not any(d.reason == GENERALITY for d in self.diagnostics)

    def real_multiplicities(self, sign: Sequence[int] | str = "positive") -> list[int]:
        return [real_multiplicity(c.curve, self.problem, sign, theta=c.theta) for c in self.curves]

    def real_count(self, sign: Sequence[int] | str = "positive") -> int:
        return sum(self.real_multiplicities(sign))


def solve_type(ctype: CombinatorialType, problem: ProblemSpec) -> AcceptedCurve | Rejection:
    """Try to equip one combinatorial type with lengths and positions."""
    tree = ctype.tree
    theta = build_theta(ctype, problem)
    sol = solve_rational(theta.matrix, theta.rhs(problem), len(theta.cols))
    if sol is None:
        return Rejection(tree.canonical_key, NO_SOLUTION)
    if not sol.unique:
        return Rejection(tree.canonical_key, SINGULAR)
    x = sol.particular
    lengths = {e: x[theta.col_index[("length", e)]] for e in tree.bounded_edges}
    if any(v < 0 for v in lengths.values()):
        return Rejection(tree.canonical_key, NONPOSITIVE)
    if any(v == 0 for v in lengths.values()):
        return Rejection(tree.canonical_key, GENERALITY)
    n = problem.rank
    positions = {w: tuple(x[theta.col_index[("vertex", w, k)]] for k in range(n)) for w in range(tree.n_finite)}
    curve = TropicalCurve(tree, ctype.slopes, lengths, positions)
    return AcceptedCurve(curve, multiplicity_report(curve, theta=theta), theta)


def _solve_tree(args):
    tree, problem = args
    return solve_type(CombinatorialType.from_degrees(tree, problem.degrees), problem)


def check_dimension(problem: ProblemSpec):
    defect = problem.dimension_defect()
    if defect:
        raise DimensionError(
            f"dimension condition fails: s + sum rank(N/L_i) - (r - 1) = {defect}, expected 0"
        )


def enumerate_curves(
    problem: ProblemSpec,
    trees: Iterable[MarkedTree] | None = None,
    workers: int | None = None,
) -> EnumerationResult:
    check_dimension(problem)
    trees = list(trees if trees is not None else enumerate_trivalent_trees(problem.r))
    jobs = [(t, problem) for t in trees]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_solve_tree, jobs, chunksize=16))
    else:
        outcomes = [_solve_tree(j) for j in jobs]
    curves = sorted((o for o in outcomes if isinstance(o, AcceptedCurve)), key=lambda c: c.key)
    diags = sorted((o for o in outcomes if isinstance(o, Rejection)), key=lambda d: d.key)
    result = EnumerationResult(problem, curves, diags, len(trees))
    if not result.general:
        log.warning("constraints not tropically general: a type has a zero-length solution")
    return result


# --- genericity checks -------------------------------------------------------

COINCIDENT = "coincident-vertices"
NOT_STRAIGHT = "vertex-on-edge-not-straight"
CONTRACTED_VALENCE = "contracted-valence"


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple


def _on_segment(p, a, direction, ray: bool) -> bool:
    """Whether ``p`` lies on ``a + t*direction`` with ``t`` in [0, 1] (or [0, inf) for rays)."""
    d = _add(p, _scale(-1, a))
    if not any(direction):
        return not any(d)
    t = None
    for dk, vk in zip(d, direction):
        if vk:
            t = Fraction(dk) / vk
            break
    if _scale(t, direction) != d:
        return False
    return t >= 0 and (ray or t <= 1)


def _straight(vectors) -> bool:
    """Nonzero vectors all positive multiples of one direction."""
    nz = [v for v in vectors if any(v)]
    if not nz:
        return True
    base = nz[0]
    return all(_on_segment(v, (0,) * len(v), base, ray=True) for v in nz)


def _path_vectors(curve: TropicalCurve, path) -> list:
    return [curve.displacement(edge, sign) for edge, sign in path]


def validate_curve(curve: TropicalCurve) -> list[Violation]:
    tree = curve.tree
    out: list[Violation] = []
    finite = list(range(tree.n_finite))
    for a, b in combinations(finite, 2):
        if curve.positions[a] == curve.positions[b]:
            if any(any(curve.slopes[e]) for e, _ in geodesic(tree, a, b)):
                out.append(Violation(COINCIDENT, (a, b)))
    for w in finite:
        p = curve.positions[w]
        for edge in tree.edges:
            a, b = tree.endpoints(edge)
            if w in (a, b):
                continue
            if is_end(edge):
                if not _on_segment(p, curve.positions[a], curve.slopes[edge], ray=True):
                    continue
                vecs = _path_vectors(curve, geodesic(tree, w, a)) + [curve.slopes[edge]]
            else:
                if not _on_segment(p, curve.positions[a], _add(curve.positions[b], _scale(-1, curve.positions[a])), ray=False):
                    continue
                to_a, to_b = geodesic(tree, w, a), geodesic(tree, w, b)
                vecs = _path_vectors(curve, to_a if len(to_a) > len(to_b) else to_b)
            if not _straight(vecs):
                out.append(Violation(NOT_STRAIGHT, (w, edge)))
        contracted = sum(1 for _, e in tree.incident(w) if not any(curve.slopes[e]))
        if contracted not in (0, 1, 3):
            out.append(Violation(CONTRACTED_VALENCE, (w, contracted)))
    return out


def validate_genericity(result: EnumerationResult | Iterable[TropicalCurve]) -> list[Violation]:
    curves = [c.curve for c in result.curves] if isinstance(result, EnumerationResult) else list(result)
    out = []
    for c in curves:
        out.extend(validate_curve(c))
    return out
