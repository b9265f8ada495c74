"""The integer deformation complex of a constrained tropical curve.

Columns: one ``Z^n`` block per finite vertex, then one column per bounded
edge (its length). Rows: one ``Z^n`` block per bounded edge, then the
quotient coordinates of each nontrivial toric constraint, then one row per
cross-ratio.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .curves import CombinatorialType, TropicalCurve
from .errors import InvariantError
from .linalg import INFINITE, Matrix, SmithDecomposition, determinant, smith_normal_form
from .problem import ProblemSpec
from .trees import epsilon

ColLabel = tuple
RowLabel = tuple


@dataclass(frozen=True)
class ThetaComplex:
    matrix: Matrix
    cols: tuple[ColLabel, ...]
    rows: tuple[RowLabel, ...]

    @cached_property
    def col_index(self) -> dict[ColLabel, int]:
        return {c: k for k, c in enumerate(self.cols)}

    @cached_property
    def row_index(self) -> dict[RowLabel, int]:
        return {r: k for k, r in enumerate(self.rows)}

    @cached_property
    def smith(self) -> SmithDecomposition:
        return smith_normal_form(self.matrix, len(self.cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def n_edge_rows(self) -> int:
        return sum(1 for r in self.rows if r[0] == "edge")

    def rhs(self, problem: ProblemSpec) -> tuple[Fraction, ...]:
        """The target ``(0, zeta, lambda)`` in row order."""
        out = []
        for label in self.rows:
            kind = label[0]
            if kind == "edge":
                out.append(Fraction(0))
            elif kind == "constraint":
                out.append(problem.target(label[1])[label[2]])
            else:
                out.append(problem.lambda_trop[label[1]])
        return tuple(out)


def _as_type(curve) -> CombinatorialType:
    return curve.ctype if isinstance(curve, TropicalCurve) else curve


def build_theta(curve: TropicalCurve | CombinatorialType, problem: ProblemSpec) -> ThetaComplex:
    ctype = _as_type(curve)
    tree = ctype.tree
    rs = tree.rooted
    n = problem.rank
    edges = tree.bounded_edges
    cols = [("vertex", w, k) for w in range(tree.n_finite) for k in range(n)]
    cols += [("length", e) for e in edges]
    rows = [("edge", e, k) for e in edges for k in range(n)]
    for i in range(1, problem.r + 1):
        rows += [("constraint", i, l) for l in range(problem.quotient_rank(i))]
    rows += [("cross", i) for i in range(problem.s)]
    ci = {c: k for k, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in rows]
    for k_row, label in enumerate(rows):
        kind = label[0]
        row = M[k_row]
        if kind == "edge":
            _, e, k = label
            row[ci[("vertex", rs.tail[e], k)]] += 1
            row[ci[("vertex", rs.head[e], k)]] -= 1
            row[ci[("length", e)]] = ctype.slopes[e][k]
        elif kind == "constraint":
            _, i, l = label
            w = tree.end_vertex[i - 1]
            P = problem.projection(i)
            for k in range(n):
                row[ci[("vertex", w, k)]] = P[l][k]
        else:
            quad = problem.cross_ratios[label[1]]
            for e in edges:
                row[ci[("length", e)]] = epsilon(tree, e, quad)
    return ThetaComplex(tuple(map(tuple, M)), tuple(cols), tuple(rows))


@dataclass(frozen=True)
class MultiplicityReport:
    e1_rank: int
    divisors: tuple[int, ...]
    m_complex: int | str
    regular_over_Q: bool
    epsilon_even: int

    @property
    def finite(self) -> bool:
        return self.m_complex != INFINITE


def multiplicity_report(curve, problem: ProblemSpec | None = None, theta: ThetaComplex | None = None) -> MultiplicityReport:
    if theta is None:
        theta = build_theta(curve, problem)
    snf = theta.smith
    nrows, ncols = theta.shape
    rk = snf.rank
    regular = rk == nrows
    m: int | str = INFINITE
    if regular:
        m = 1
        for d in snf.divisors:
            if d:
                m *= d
    even = sum(1 for d in snf.divisors if d and d % 2 == 0)
    return MultiplicityReport(
        e1_rank=ncols - rk,
        divisors=snf.divisors,
        m_complex=m,
        regular_over_Q=regular,
        epsilon_even=even,
    )


def constraint_row_count(theta: ThetaComplex) -> int:
    return len(theta.rows) - theta.n_edge_rows


def real_multiplicity(curve, problem: ProblemSpec, sign: Sequence[int] | str, theta: ThetaComplex | None = None) -> int:
    """``2**epsilon`` if the sign class vanishes in the mod-2 cokernel, else 0.

    ``sign`` lists ``+1``/``-1`` for each constraint and cross-ratio row in
    row order, or is the string ``"positive"``.
    """
    if theta is None:
        theta = build_theta(curve, problem)
    report = multiplicity_report(curve, theta=theta)
    if not report.finite:
        raise InvariantError("real multiplicity needs a finite complex multiplicity")
    k = constraint_row_count(theta)
    if sign == "positive":
        sign = (1,) * k
    sign = tuple(sign)
    if len(sign) != k:
        raise InvariantError(f"sign vector has length {len(sign)}, expected {k}")
    if any(s not in (1, -1) for s in sign):
        raise InvariantError("sign entries must be +1 or -1")
    # additive Z/2 form of the full target sign, edge block is +1
    bits = [0] * theta.n_edge_rows + [0 if s == 1 else 1 for s in sign]
    snf = theta.smith
    for j, d in enumerate(snf.divisors):
        if d and d % 2 == 0:
            if sum(u * b for u, b in zip(snf.U[j], bits)) % 2:
                return 0
    return 2**report.epsilon_even


def sign_from_coefficients(theta: ThetaComplex, problem: ProblemSpec) -> tuple[int, ...]:
    """Signs of the leading coefficients of the constraint data, in row order."""
    out = []
    lam = problem.lambda_leading()
    for label in theta.rows:
        if label[0] == "constraint":
            out.append(1 if problem.leading_coefficients(label[1])[label[2]] > 0 else -1)
        elif label[0] == "cross":
            out.append(1 if lam[label[1]] > 0 else -1)
    return tuple(out)


def theta_determinant(theta: ThetaComplex) -> int:
    nrows, ncols = theta.shape
    if nrows != ncols:
        raise InvariantError("determinant of a non-square complex")
    return determinant(theta.matrix)
