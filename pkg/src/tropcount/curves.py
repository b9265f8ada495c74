"""Parameterized rational tropical curves over the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvariantError
from .linalg import matvec
from .problem import ProblemSpec
from .trees import Edge, MarkedTree, Vertex, end, epsilon, geodesic, infinite, is_end

Vec = tuple


def _add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def propagate_slopes(tree: MarkedTree, degrees: Sequence[Sequence[int]]) -> dict[Edge, tuple[int, ...]]:
    """Slopes of every edge forced by balancing, oriented away from the root.

    Works leaf to root: the slope of a bounded edge is the sum of the end
    slopes beyond its head.
    """
    n = len(degrees[0])
    if any(sum(d[k] for d in degrees) for k in range(n)):
        raise InvariantError("degrees do not balance: sum of n_i is not zero")
    rs = tree.rooted
    slopes: dict[Edge, tuple[int, ...]] = {end(i): tuple(degrees[i - 1]) for i in range(1, tree.r + 1)}
    outflow: dict[Vertex, tuple[int, ...]] = {}
    for x in reversed(rs.order):
        if isinstance(x, tuple):
            continue
        total = (0,) * n
        for y, edge in tree.incident(x):
            if rs.parent.get(y) == x:
                total = _add(total, slopes[edge] if is_end(edge) else outflow[y])
        outflow[x] = total
        edge = rs.parent_edge[x]
        if not is_end(edge):
            slopes[edge] = total
    return slopes


@dataclass(frozen=True)
class CombinatorialType:
    """A tree with slopes on every edge; lengths not yet chosen."""

    tree: MarkedTree
    slopes: Mapping[Edge, tuple[int, ...]]

    @classmethod
    def from_degrees(cls, tree: MarkedTree, degrees) -> "CombinatorialType":
        return cls(tree, propagate_slopes(tree, degrees))

    @property
    def rank(self) -> int:
        return len(self.slopes[end(1)])

    def __hash__(self):
        return hash(self.tree.canonical_key)


class TropicalCurve:
    """A metric marked tree mapped to ``Q^n``.

    ``slopes[edge]`` is the primitive-times-multiplicity direction from tail
    to head in the rooted orientation, ``lengths`` are the bounded edge
    lengths and ``positions`` the images of the finite vertices. Positions
    are recomputed from ``positions[anchor]`` and compared, so inconsistent
    data is rejected.
    """

    def __init__(
        self,
        tree: MarkedTree,
        slopes: Mapping[Edge, Sequence[int]],
        lengths: Mapping[Edge, Fraction] | Sequence[Fraction],
        positions: Mapping[int, Sequence[Fraction]] | Sequence[Sequence[Fraction]],
    ):
        self.tree = tree
        self.slopes = {e: tuple(int(x) for x in v) for e, v in slopes.items()}
        if not isinstance(lengths, Mapping):
            lengths = {("g", j): x for j, x in enumerate(lengths)}
        self.lengths = {e: Fraction(x) for e, x in lengths.items()}
        if not isinstance(positions, Mapping):
            positions = dict(enumerate(positions))
        self.positions = {w: tuple(Fraction(x) for x in p) for w, p in positions.items()}
        self._check()

    @classmethod
    def from_lengths(
        cls,
        ctype: CombinatorialType,
        lengths: Mapping[Edge, Fraction] | Sequence[Fraction],
        anchor: int = 0,
        anchor_position: Sequence[Fraction] | None = None,
    ) -> "TropicalCurve":
        tree = ctype.tree
        if not isinstance(lengths, Mapping):
            lengths = {("g", j): Fraction(x) for j, x in enumerate(lengths)}
        n = ctype.rank
        pos = {anchor: tuple(Fraction(x) for x in (anchor_position or (0,) * n))}
        rs = tree.rooted
        todo = [anchor]
        while todo:
            w = todo.pop()
            for x, edge in tree.incident(w):
                if is_end(edge) or x in pos:
                    continue
                step = _scale(lengths[edge], ctype.slopes[edge])
                pos[x] = _add(pos[w], step) if rs.tail[edge] == w else _add(pos[w], _scale(-1, step))
                todo.append(x)
        return cls(tree, ctype.slopes, lengths, pos)

    @property
    def rank(self) -> int:
        return len(self.slopes[end(1)])

    @property
    def ctype(self) -> CombinatorialType:
        return CombinatorialType(self.tree, self.slopes)

    def _check(self):
        tree = self.tree
        rs = tree.rooted
        n = self.rank
        if set(self.positions) != set(range(tree.n_finite)):
            raise InvariantError("positions must be given for every finite vertex")
        for edge in tree.bounded_edges:
            if self.lengths.get(edge, 0) <= 0:
                raise InvariantError(f"edge {edge} must have positive length")
            t, h = rs.tail[edge], rs.head[edge]
            disp = _add(self.positions[h], _scale(-1, self.positions[t]))
            if disp != _scale(self.lengths[edge], self.slopes[edge]):
                raise InvariantError(f"edge {edge}: positions disagree with length times slope")
        for w in range(tree.n_finite):
            total = (0,) * n
            for _, edge in tree.incident(w):
                # ends always point away from their finite vertex, e_r included
                sign = 1 if is_end(edge) or rs.tail[edge] == w else -1
                total = _add(total, _scale(sign, self.slopes[edge]))
            if any(total):
                raise InvariantError(f"vertex {w} is not balanced")

    def position(self, w: Vertex) -> tuple[Fraction, ...]:
        return self.positions[w]

    def attach_position(self, i: int) -> tuple[Fraction, ...]:
        """Image of ``v_i``."""
        return self.positions[self.tree.end_vertex[i - 1]]

    def displacement(self, edge: Edge, direction: int = 1) -> tuple[Fraction, ...]:
        """Image vector of a bounded edge traversed tail-to-head (``direction=1``)."""
        return _scale(direction * self.lengths[edge], self.slopes[edge])

    def __repr__(self):
        lens = ", ".join(f"{e[1]}:{self.lengths[e]}" for e in self.tree.bounded_edges)
        return f"TropicalCurve(ends={self.tree.end_vertex}, bounded={self.tree.bounded}, lengths={{{lens}}})"


def cross_ratio_formula(curve: TropicalCurve, quad: Sequence[int]) -> Fraction:
    """Tropical cross-ratio as the signed sum of separating edge lengths."""
    tree = curve.tree
    q = tuple(quad)
    return sum((epsilon(tree, e, q) * curve.lengths[e] for e in tree.bounded_edges), Fraction(0))


def cross_ratio_geodesic(curve: TropicalCurve, quad: Sequence[int]) -> Fraction:
    """Signed length of the overlap of the paths ``e_i1 -> e_i2`` and ``e_i3 -> e_i4``."""
    i1, i2, i3, i4 = quad
    if len({i1, i2, i3, i4}) != 4:
        raise ValueError("the four ends must be distinct")
    tree = curve.tree
    first = dict(geodesic(tree, infinite(i1), infinite(i2)))
    total = Fraction(0)
    for edge, sign in geodesic(tree, infinite(i3), infinite(i4)):
        if edge in first and not is_end(edge):
            total += curve.lengths[edge] * (1 if first[edge] == sign else -1)
    return total


def check_affine_constraint(curve: TropicalCurve, problem: ProblemSpec, i: int) -> bool:
    return matvec(problem.projection(i), curve.attach_position(i)) == problem.target(i)


def satisfies(curve: TropicalCurve, problem: ProblemSpec) -> bool:
    """Degree, affine and cross-ratio conditions together."""
    if any(curve.slopes[end(i)] != tuple(problem.degrees[i - 1]) for i in range(1, problem.r + 1)):
        return False
    if not all(check_affine_constraint(curve, problem, i) for i in range(1, problem.r + 1)):
        return False
    return all(
        cross_ratio_formula(curve, row) == lt for row, lt in zip(problem.cross_ratios, problem.lambda_trop)
    )
