"""Lift a constrained tropical curve to algebraic maps over truncated series.

Coordinates on the curve: for each finite vertex ``w`` a coordinate ``y_w``
with ``y_w(q_r) = inf``; consecutive coordinates are related by
``y_tail = beta + pi^(e|gamma|) alpha y_head``. A map is then fixed by one
character ``chi_w`` per vertex (stored on the standard basis of ``M``).
The unknowns ``(chi, alpha)`` are found order by order: the reduction mod
``pi`` is a multiplicative system solved through the Smith form, and each
later order is a rational linear solve with the deformation matrix.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from sympy import integer_nthroot

from .curves import TropicalCurve
from .deformation import ThetaComplex, build_theta, multiplicity_report
from .errors import FieldExtensionRequired, InvariantError, LiftingStalled, PrecisionError
from .linalg import inverse_rational, matvec
from .problem import ProblemSpec
from .series import INF, TSeries
from .trees import Edge, end, geodesic, is_end, path_vertices

log = logging.getLogger(__name__)

MAX_RETRIES = 4


def ramification_index(curve: TropicalCurve) -> int:
    """Least ``e`` with every length and vertex coordinate in ``(1/e)Z``."""
    e = 1
    for x in curve.lengths.values():
        e = math.lcm(e, x.denominator)
    for p in curve.positions.values():
        for x in p:
            e = math.lcm(e, x.denominator)
    return e


def _int_exponent(x: Fraction, e: int) -> int:
    y = x * e
    if y.denominator != 1:
        raise InvariantError(f"{x} is not in (1/{e})Z")
    return int(y)


def _pow(s: TSeries, k: int, cap: int) -> TSeries:
    if k >= 0:
        return s**k
    return s.invert(prec=cap) ** (-k)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def split_key(tree, edge: Edge) -> tuple[int, ...]:
    """Stable name of an edge: the ends beyond it, away from the root."""
    return tuple(sorted(tree.rooted.subtree_ends(tree.rooted.head[edge])))


def forced_beta(tree, given: Mapping | None = None) -> dict[Edge, Fraction]:
    """``beta`` for every edge with a tail: 0 on the first, 1 on the last of each ``E_w^+``.

    Middle (essential) edges take their value from ``given``, keyed by the
    edge itself, by its end split tuple, or by the split as a
    comma-separated string.
    """
    given = dict(given or {})
    rs = tree.rooted
    out: dict[Edge, Fraction] = {}
    for w, edges in rs.out_edges.items():
        for k, edge in enumerate(edges):
            if k == 0:
                out[edge] = Fraction(0)
            elif k == len(edges) - 1:
                out[edge] = Fraction(1)
            else:
                key = split_key(tree, edge)
                for cand in (edge, key, ",".join(map(str, key))):
                    if cand in given:
                        out[edge] = Fraction(given[cand])
                        break
                else:
                    raise InvariantError(f"essential edge with ends {key} needs a beta value")
        vals = [out[e] for e in edges]
        if len(set(vals)) != len(vals):
            raise InvariantError(f"beta values at vertex {w} must be pairwise distinct")
    return out


class CurveCoordinates:
    """Marked points of the curve determined by ``(alpha, beta)``.

    ``alpha`` maps bounded edges to unit series; ``beta`` maps edges to
    rationals. ``y(w, i)`` is ``y_w(q_i)`` (``None`` stands for infinity).
    """

    def __init__(self, curve: TropicalCurve, alpha: Mapping[Edge, TSeries], beta: Mapping[Edge, Fraction], e: int, cap: int):
        self.curve = curve
        self.tree = curve.tree
        self.alpha = dict(alpha)
        self.beta = dict(beta)
        self.e = e
        self.cap = cap
        self._y: dict = {}
        self._scale: dict = {}
        self._scale_inv: dict = {}

    def scale(self, edge: Edge) -> TSeries:
        """``pi^(e|gamma|) alpha_gamma``."""
        if edge not in self._scale:
            k = _int_exponent(self.curve.lengths[edge], self.e)
            self._scale[edge] = self.alpha[edge].shift(k)
        return self._scale[edge]

    def scale_inv(self, edge: Edge) -> TSeries:
        if edge not in self._scale_inv:
            self._scale_inv[edge] = self.scale(edge).invert(prec=self.cap)
        return self._scale_inv[edge]

    def psi(self, edge: Edge, y: TSeries, direction: int = 1) -> TSeries:
        if direction == 1:
            return self.beta[edge] + self.scale(edge) * y
        return (y - self.beta[edge]) * self.scale_inv(edge)

    def y(self, w: int, i: int) -> TSeries | None:
        if i == self.tree.r:
            return None
        key = (w, i)
        if key not in self._y:
            v = self.tree.end_vertex[i - 1]
            val = TSeries.const(self.beta[end(i)], self.e)
            for edge, sign in reversed(geodesic(self.tree, w, v)):
                val = self.psi(edge, val, sign)
            self._y[key] = val
        return self._y[key]

    def marked_points(self) -> dict[int, TSeries]:
        """``y_{v_r}(q_i)`` for ``i < r``."""
        v = self.tree.rooted.v_root
        return {i: self.y(v, i) for i in range(1, self.tree.r)}


def _require_unit(s: TSeries, what: str):
    if s.is_zero():
        raise PrecisionError(f"{what} vanishes to the known precision")
    if s.order != 0:
        raise InvariantError(f"{what} has valuation {s.valuation()}, expected a unit")


class LiftingSystem:
    """The map ``Theta`` for one curve, plus its targets and linearization."""

    def __init__(self, curve: TropicalCurve, problem: ProblemSpec, beta: Mapping | None = None):
        self.curve = curve
        self.problem = problem.reduced()
        self.tree = curve.tree
        self.theta: ThetaComplex = build_theta(curve, self.problem)
        self.e = ramification_index(curve)
        self.beta = forced_beta(self.tree, beta if beta is not None else problem.beta)
        self.n = self.problem.rank
        report = multiplicity_report(curve, theta=self.theta)
        if not report.finite:
            raise InvariantError("lifting needs a finite complex multiplicity")
        rows, cols = self.theta.shape
        if rows != cols:
            raise InvariantError(f"deformation matrix is {rows}x{cols}; lifting needs the rigid square case")
        self.report = report

    # combinatorial data ------------------------------------------------------

    @cached_property
    def targets(self) -> dict[tuple, Fraction]:
        """``(1, zeta^Gamma, lambda^Gamma)`` as constants, by row label."""
        out = {}
        lam = self.problem.lambda_leading()
        for label in self.theta.rows:
            if label[0] == "edge":
                out[label] = Fraction(1)
            elif label[0] == "constraint":
                out[label] = self.problem.leading_coefficients(label[1])[label[2]]
            else:
                out[label] = lam[label[1]]
        return out

    @cached_property
    def cross_vertices(self) -> list[tuple[int, int, int, list[Edge]]]:
        """``(w, w', w'', overlap edges)`` for each cross-ratio row."""
        tree, rs = self.tree, self.tree.rooted
        out = []
        for quad in self.problem.cross_ratios:
            i1, i2, i3, i4 = quad
            over = [e for e, s in geodesic(tree, ("u", i1), ("u", i2)) if not is_end(e)]
            over = [e for e in over if e in dict(geodesic(tree, ("u", i3), ("u", i4)))]
            if not over:
                raise InvariantError(f"cross-ratio {quad} has an empty overlap on this curve")
            # walk from the i1 side to the i2 side
            path = path_vertices(tree, tree.end_vertex[i1 - 1], tree.end_vertex[i2 - 1])
            on = [v for v in path if any(v in (rs.tail[e], rs.head[e]) for e in over)]
            w, w2 = on[0], on[-1]
            low = min(on, key=lambda v: rs.depth[v])
            out.append((w, w2, low, over))
        return out

    # evaluation ----------------------------------------------------------------

    def coordinates(self, alpha: Mapping[Edge, TSeries], cap: int) -> CurveCoordinates:
        return CurveCoordinates(self.curve, alpha, self.beta, self.e, cap)

    def phi(self, cc: CurveCoordinates, edge: Edge, k: int) -> TSeries:
        """``phi_gamma(e_k)``."""
        rs, r, cap = self.tree.rooted, self.tree.r, cc.cap
        t, h = rs.tail[edge], rs.head[edge]
        above_t, above_h = rs.subtree_ends(t), rs.subtree_ends(h)
        b = self.beta[edge]
        out = TSeries.const(1, self.e)
        for i in range(1, r):
            x = self.problem.degrees[i - 1][k]
            if not x:
                continue
            y = cc.y(t, i)
            if i in above_t and i not in above_h:
                out = out * _pow(y - b, x, cap)
            elif i not in above_t:
                out = out * _pow(y * (y - b).invert(prec=cap), -x, cap)
        return out

    def varphi(self, cc: CurveCoordinates, j: int, m: Sequence[int]) -> TSeries:
        """``varphi_j(m)``; identically 1 for the root end."""
        tree, rs, r, cap = self.tree, self.tree.rooted, self.tree.r, cc.cap
        if j == r:
            return TSeries.const(1, self.e)
        v = tree.end_vertex[j - 1]
        above = rs.subtree_ends(v)
        b = self.beta[end(j)]
        out = TSeries.const(1, self.e)
        for i in range(1, r + 1):
            x = _dot(self.problem.degrees[i - 1], m)
            if not x or i == j:
                continue
            if i == r:
                out = out * (-1) ** x
                continue
            y = cc.y(v, i)
            if i in above:
                out = out * _pow(b - y, x, cap)
            else:
                out = out * _pow(b * y.invert(prec=cap) - 1, x, cap)
        return out

    def psi(self, cc: CurveCoordinates, idx: int) -> TSeries:
        """``psi_i``; factors through ``q_r = inf`` cancel in pairs."""
        i1, i2, i3, i4 = self.problem.cross_ratios[idx]
        w, w2, low, _ = self.cross_vertices[idx]
        r, cap = self.tree.r, cc.cap
        # D1 = y_w(q3)-y_w(q1), D2 = y_w'(q4)-y_w'(q2), D3 = y_w''(q4)-y_w''(q1), D4 = y_w''(q3)-y_w''(q2)
        pairs = {1: (w, i3, i1), 2: (w2, i4, i2), 3: (low, i4, i1), 4: (low, i3, i2)}
        drop = set()
        for i, (a, b), vert in ((i1, (1, 3), w), (i3, (1, 4), w), (i2, (2, 4), w2), (i4, (2, 3), w2)):
            if i == r:
                if vert != low:
                    raise InvariantError("root end in a cross-ratio away from the minimal vertex")
                drop.update((a, b))
        val = {}
        for key, (x, a, b) in pairs.items():
            if key not in drop:
                val[key] = cc.y(x, a) - cc.y(x, b)
        num = den = TSeries.const(1, self.e)
        for key, x in val.items():
            if key <= 2:
                num = num * x
            else:
                den = den * x
        return num * den.invert(prec=cap)

    def character(self, chi: Mapping[tuple, TSeries], w: int, m: Sequence[int], cap: int) -> TSeries:
        out = TSeries.const(1, self.e)
        for k, x in enumerate(m):
            if x:
                out = out * _pow(chi[("vertex", w, k)], x, cap)
        return out

    def fixed_parts(self, cc: CurveCoordinates) -> dict[tuple, TSeries]:
        """``phi``, ``varphi``, ``psi`` per row label, each checked to be a unit."""
        out = {}
        for label in self.theta.rows:
            kind = label[0]
            if kind == "edge":
                _, edge, k = label
                val = self.phi(cc, edge, k)
            elif kind == "constraint":
                _, j, l = label
                val = self.varphi(cc, j, self.problem.projection(j)[l])
            else:
                val = self.psi(cc, label[1])
            _require_unit(val, f"{kind} factor {label[1:]}")
            out[label] = val
        return out

    def evaluate(self, unknowns: Mapping[tuple, TSeries], cap: int) -> dict[tuple, TSeries]:
        """``Theta(chi, alpha, beta)`` by row label."""
        alpha = {e: unknowns[("length", e)] for e in self.tree.bounded_edges}
        cc = self.coordinates(alpha, cap)
        fixed = self.fixed_parts(cc)
        rs = self.tree.rooted
        out = {}
        for label in self.theta.rows:
            kind = label[0]
            val = fixed[label]
            if kind == "edge":
                _, edge, k = label
                unit = [int(x == k) for x in range(self.n)]
                val = val * self.character(unknowns, rs.tail[edge], unit, cap)
                val = val * _pow(unknowns[("vertex", rs.head[edge], k)], -1, cap)
                val = val * _pow(alpha[edge], self.curve.slopes[edge][k], cap)
            elif kind == "constraint":
                _, j, l = label
                v = self.tree.end_vertex[j - 1]
                val = val * self.character(unknowns, v, self.problem.projection(j)[l], cap)
            else:
                for edge in self.cross_vertices[label[1]][3]:
                    val = val * alpha[edge]
            out[label] = val
        return out

    # solving -------------------------------------------------------------------

    def initial_solutions(self, complete: bool = True) -> list[dict[tuple, Fraction]]:
        """All rational ``(chi_0, alpha_0)`` solving the system mod ``pi``."""
        ones = {e: TSeries.const(1, self.e) for e in self.tree.bounded_edges}
        fixed = self.fixed_parts(self.coordinates(ones, cap=self.default_margin))
        rows, cols = self.theta.rows, self.theta.cols
        b = [self.targets[label] / fixed[label].coefficient(0) for label in rows]
        snf = self.theta.smith
        roots, obstructions = [], []
        for s, d in enumerate(snf.divisors):
            c = Fraction(1)
            for u, x in zip(snf.U[s], b):
                c *= x**u
            rr = rational_roots(c, d)
            if len(rr) < d:
                obstructions.append((s, d, c))
            roots.append(rr)
        if obstructions and complete:
            desc = "; ".join(f"w_{s}^{d} = {c}" for s, d, c in obstructions)
            raise FieldExtensionRequired(f"initial solution needs irrational roots: {desc}")
        out = []
        for choice in product(*roots):
            z = {}
            for c, label in enumerate(cols):
                v = Fraction(1)
                for j, wj in enumerate(choice):
                    v *= wj ** snf.V[c][j]
                z[label] = v
            out.append(z)
        return out

    @property
    def default_margin(self) -> int:
        total = sum(_int_exponent(x, self.e) for x in self.curve.lengths.values())
        return 2 * total + 4

    @cached_property
    def theta_inverse(self):
        return inverse_rational(self.theta.matrix)

    def lift_from(self, start: Mapping[tuple, Fraction | TSeries], order: int, margin: int | None = None) -> "LiftedMap":
        margin = margin if margin is not None else self.default_margin
        for _ in range(MAX_RETRIES):
            try:
                return self._lift(start, order, order + margin)
            except PrecisionError as exc:
                log.info("precision exhausted (%s); retrying with a wider margin", exc)
                margin *= 2
        raise PrecisionError(f"could not reach order {order} within working precision {order + margin}")

    def _lift(self, start, order: int, cap: int) -> "LiftedMap":
        cols, rows = self.theta.cols, self.theta.rows
        xi = {
            label: (v if isinstance(v, TSeries) else TSeries.const(v, self.e)).truncate(cap).with_prec(INF)
            for label, v in start.items()
        }
        history: list[float] = []
        while True:
            values = self.evaluate(xi, cap)
            rho = {label: self.targets[label] * values[label].invert(prec=cap) - 1 for label in rows}
            o = min(rho[label].order for label in rows)
            history.append(o)
            if len(history) > 1 and o <= history[-2]:
                raise LiftingStalled(f"residual order stuck at {o} after {len(history) - 1} iterations")
            if o >= order:
                break
            if o < 1:
                raise InvariantError("starting point does not solve the system modulo pi")
            k = int(o)
            u = [rho[label].coefficient(k) for label in rows]
            x = matvec(self.theta_inverse, u)
            for label, xc in zip(cols, x):
                if xc:
                    xi[label] = (xi[label] * TSeries({0: 1, k: xc}, INF, self.e)).truncate(cap).with_prec(INF)
        return LiftedMap(self, {c: xi[c].truncate(order) for c in cols}, order, history)

    def lift(self, order: int, margin: int | None = None, complete: bool = True) -> list["LiftedMap"]:
        return [self.lift_from(z, order, margin) for z in self.initial_solutions(complete)]


def rational_roots(c: Fraction, d: int) -> list[Fraction]:
    """Rational solutions of ``w^d = c``."""
    if d == 1:
        return [c]
    if d == 0:
        return [Fraction(1)] if c == 1 else []
    if c < 0 and d % 2 == 0:
        return []
    a, ea = integer_nthroot(abs(c.numerator), d)
    b, eb = integer_nthroot(c.denominator, d)
    if not (ea and eb):
        return []
    w = Fraction(int(a), int(b))
    if d % 2 == 0:
        return [w, -w]
    return [-w if c < 0 else w]


@dataclass
class LiftedMap:
    """One algebraic map tropicalizing to the given curve, to a finite order."""

    system: LiftingSystem = field(repr=False)
    unknowns: dict[tuple, TSeries]
    order: int
    residual_orders: list[float]

    @property
    def e(self) -> int:
        return self.system.e

    @property
    def iterations(self) -> int:
        return len(self.residual_orders) - 1

    @property
    def alpha(self) -> dict[Edge, TSeries]:
        return {e: self.unknowns[("length", e)] for e in self.system.tree.bounded_edges}

    @property
    def beta(self) -> dict[Edge, Fraction]:
        return self.system.beta

    def chi(self, w: int) -> tuple[TSeries, ...]:
        """Values of ``chi_w`` on the standard basis of ``M``."""
        return tuple(self.unknowns[("vertex", w, k)] for k in range(self.system.n))

    @cached_property
    def coordinates(self) -> CurveCoordinates:
        return self.system.coordinates(self.alpha, cap=self.order)

    def marked_points(self) -> dict[int, TSeries]:
        return self.coordinates.marked_points()

    def height(self, w: int, m: Sequence[int]) -> int:
        """``e h(w)(m)``, the exponent of ``pi`` in front of ``f*(x^m)`` in ``y_w``."""
        return _int_exponent(_dot(self.system.curve.positions[w], m), self.e)

    def pullback(self, m: Sequence[int], y: TSeries) -> TSeries:
        """``f*(x^m)`` at the point with coordinate ``y_{v_r} = y``."""
        sysm = self.system
        v = sysm.tree.rooted.v_root
        out = sysm.character(self.unknowns, v, m, self.order).shift(self.height(v, m))
        pts = self.marked_points()
        for i in range(1, sysm.tree.r):
            x = _dot(sysm.problem.degrees[i - 1], m)
            if x:
                out = out * _pow(y - pts[i], x, self.order)
        if _dot(sysm.problem.degrees[-1], m) % 2:
            out = -out
        return out


def lift_curve(curve: TropicalCurve, problem: ProblemSpec, order: int, beta: Mapping | None = None, complete: bool = True) -> list[LiftedMap]:
    return LiftingSystem(curve, problem, beta).lift(order, complete=complete)


def marked_points(curve: TropicalCurve, alpha: Mapping[Edge, TSeries], beta: Mapping | None = None, cap: int = 20) -> dict[int, TSeries]:
    e = ramification_index(curve)
    return CurveCoordinates(curve, alpha, forced_beta(curve.tree, beta), e, cap).marked_points()


def theta_map(curve: TropicalCurve, problem: ProblemSpec, unknowns: Mapping[tuple, TSeries], cap: int = 20, beta: Mapping | None = None) -> dict[tuple, TSeries]:
    return LiftingSystem(curve, problem, beta).evaluate(unknowns, cap)


def initial_solution(curve: TropicalCurve, problem: ProblemSpec, beta: Mapping | None = None, complete: bool = True):
    return LiftingSystem(curve, problem, beta).initial_solutions(complete)
