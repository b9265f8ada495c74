"""Trees with ordered ends and their rooted-tree combinatorics.

Naming used throughout the package:

* finite vertices are ``0 .. n_finite - 1``;
* the infinite vertex of end ``i`` is ``("u", i)`` with ``1 <= i <= r``;
* bounded edge ``j`` is ``("g", j)`` and the end ``i`` is ``("e", i)``.

Every end ``e_i`` joins ``u_i`` to the finite vertex ``v_i``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Union

Vertex = Union[int, tuple[str, int]]
Edge = tuple[str, int]


def end(i: int) -> Edge:
    return ("e", i)


def bedge(j: int) -> Edge:
    return ("g", j)


def infinite(i: int) -> Vertex:
    return ("u", i)


def is_end(edge: Edge) -> bool:
    return edge[0] == "e"


@dataclass(frozen=True)
class MarkedTree:
    """A stable tree with ``r`` ordered ends.

    ``end_vertex[i - 1]`` is the finite vertex carrying end ``i`` and
    ``bounded[j]`` is the pair of finite vertices joined by bounded edge ``j``.
    """

    n_finite: int
    end_vertex: tuple[int, ...]
    bounded: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "end_vertex", tuple(self.end_vertex))
        object.__setattr__(self, "bounded", tuple(tuple(e) for e in self.bounded))
        self._validate()

    def _validate(self):
        nv = self.n_finite
        if self.r < 3:
            raise ValueError("a stable marked tree needs at least 3 ends")
        for v in self.end_vertex:
            if not 0 <= v < nv:
                raise ValueError(f"end attached to unknown vertex {v}")
        for a, b in self.bounded:
            if not (0 <= a < nv and 0 <= b < nv) or a == b:
                raise ValueError(f"bad bounded edge {(a, b)}")
        if len(self.bounded) != nv - 1:
            raise ValueError("a tree on V finite vertices has V - 1 bounded edges")
        seen = {0}
        todo = [0]
        while todo:
            w = todo.pop()
            for x in self.neighbours(w):
                if isinstance(x, int) and x not in seen:
                    seen.add(x)
                    todo.append(x)
        if len(seen) != nv:
            raise ValueError("tree is not connected")
        for w in range(nv):
            if self.degree(w) < 3:
                raise ValueError(f"finite vertex {w} has degree {self.degree(w)} < 3")

    @property
    def r(self) -> int:
        return len(self.end_vertex)

    @property
    def edges(self) -> list[Edge]:
        return [end(i) for i in range(1, self.r + 1)] + [bedge(j) for j in range(len(self.bounded))]

    @property
    def bounded_edges(self) -> list[Edge]:
        return [bedge(j) for j in range(len(self.bounded))]

    def endpoints(self, edge: Edge) -> tuple[Vertex, Vertex]:
        kind, k = edge
        if kind == "e":
            return self.end_vertex[k - 1], infinite(k)
        return self.bounded[k]

    @cached_property
    def _adjacency(self) -> dict[Vertex, list[tuple[Vertex, Edge]]]:
        adj: dict[Vertex, list[tuple[Vertex, Edge]]] = {w: [] for w in range(self.n_finite)}
        for edge in self.edges:
            a, b = self.endpoints(edge)
            adj.setdefault(a, []).append((b, edge))
            adj.setdefault(b, []).append((a, edge))
        return adj

    def incident(self, w: Vertex) -> list[tuple[Vertex, Edge]]:
        return self._adjacency[w]

    def neighbours(self, w: Vertex) -> list[Vertex]:
        return [x for x, _ in self._adjacency[w]]

    def degree(self, w: Vertex) -> int:
        return len(self._adjacency[w])

    def vertices(self) -> list[Vertex]:
        return list(range(self.n_finite)) + [infinite(i) for i in range(1, self.r + 1)]

    def split(self, edge: Edge) -> frozenset[int]:
        """Ends on the side of ``edge`` away from the end ``r``."""
        return self.rooted.subtree_ends(self.rooted.head[edge])

    @cached_property
    def canonical_key(self) -> tuple:
        """Isomorphism invariant fixing end labels: the sorted set of splits."""
        return tuple(sorted(tuple(sorted(self.split(e))) for e in self.bounded_edges))

    def is_trivalent(self) -> bool:
        return all(self.degree(w) == 3 for w in range(self.n_finite))

    @cached_property
    def rooted(self) -> "RootedStructure":
        return RootedStructure(self)


def star(r: int) -> MarkedTree:
    return MarkedTree(1, (0,) * r, ())


def insert_end(tree: MarkedTree, edge: Edge) -> MarkedTree:
    """Subdivide ``edge`` by a new vertex and attach a new last end there."""
    w = tree.n_finite
    ends = list(tree.end_vertex) + [w]
    bounded = list(tree.bounded)
    kind, k = edge
    if kind == "e":
        old = tree.end_vertex[k - 1]
        ends[k - 1] = w
        bounded.append((old, w))
    else:
        a, b = bounded[k]
        bounded[k] = (a, w)
        bounded.append((w, b))
    return MarkedTree(w + 1, tuple(ends), tuple(bounded))


def enumerate_trivalent_trees(r: int) -> Iterator[MarkedTree]:
    """Every trivalent tree with ends ``1..r``, each exactly once.

    Trees on ``k + 1`` ends arise from trees on ``k`` ends by inserting the
    new end into each edge in turn; the order of the stream is deterministic.
    """
    if r < 3:
        raise ValueError("no stable trees with fewer than 3 ends")

    def grow(tree: MarkedTree) -> Iterator[MarkedTree]:
        if tree.r == r:
            yield tree
            return
        for edge in tree.edges:
            yield from grow(insert_end(tree, edge))

    yield from grow(star(3))


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


class RootedStructure:
    """Orientation away from the root ``u_r`` and the derived index sets.

    Attributes
    ----------
    parent, depth : per vertex, toward the root
    tail, head : per edge, with the tail closer to the root
    out_edges : ``E_w^+`` for finite ``w``, sorted by ``iota``
    iota : minimal end index ``i`` with ``u_i`` at or above the head
    """

    def __init__(self, tree: MarkedTree):
        self.tree = tree
        r = tree.r
        self.root: Vertex = infinite(r)
        self.parent: dict[Vertex, Vertex | None] = {self.root: None}
        self.parent_edge: dict[Vertex, Edge | None] = {self.root: None}
        self.depth: dict[Vertex, int] = {self.root: 0}
        order = [self.root]
        queue = deque([self.root])
        while queue:
            w = queue.popleft()
            for x, edge in tree.incident(w):
                if x not in self.parent:
                    self.parent[x] = w
                    self.parent_edge[x] = edge
                    self.depth[x] = self.depth[w] + 1
                    order.append(x)
                    queue.append(x)
        self.order = order  # root first, leaves last
        self.tail: dict[Edge, Vertex] = {}
        self.head: dict[Edge, Vertex] = {}
        for x, edge in self.parent_edge.items():
            if edge is not None:
                self.tail[edge] = self.parent[x]
                self.head[edge] = x

        self._subtree: dict[Vertex, frozenset[int]] = {}
        for x in reversed(order):
            if isinstance(x, tuple):
                self._subtree[x] = frozenset({x[1]}) if x[1] != r else frozenset()
            else:
                acc: set[int] = set()
                for y, _ in tree.incident(x):
                    if self.parent.get(y) == x:
                        acc |= self._subtree[y]
                self._subtree[x] = frozenset(acc)

        self.iota: dict[Edge, int] = {}
        for edge in tree.edges:
            if edge == end(r):
                continue
            self.iota[edge] = edge[1] if is_end(edge) else min(self._subtree[self.head[edge]])

        self.out_edges: dict[int, tuple[Edge, ...]] = {}
        for w in range(tree.n_finite):
            out = [e for _, e in tree.incident(w) if self.tail.get(e) == w]
            self.out_edges[w] = tuple(sorted(out, key=self.iota.__getitem__))

    @property
    def v_root(self) -> int:
        """The finite vertex ``v_r`` attached to the root end."""
        return self.tree.end_vertex[-1]

    def subtree_ends(self, w: Vertex) -> frozenset[int]:
        """``I_w^inf``: ends ``i`` with ``u_i`` strictly above ``w`` (``r`` never counts)."""
        return self._subtree[w]

    def index_set(self, w: int) -> tuple[int, ...]:
        """``I_w``: the ``iota`` values of ``E_w^+`` in increasing order."""
        return tuple(self.iota[e] for e in self.out_edges[w])

    def essential_edges(self) -> set[Edge]:
        out: set[Edge] = set()
        for edges in self.out_edges.values():
            out.update(edges[1:-1])
        return out

    def precedes(self, a: Vertex, b: Vertex) -> bool:
        """``a <= b`` in the partial order with the root minimal."""
        x: Vertex | None = b
        while x is not None:
            if x == a:
                return True
            x = self.parent[x]
        return False

    def path_to_root(self, w: Vertex) -> list[Vertex]:
        out = [w]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out

    def meet(self, a: Vertex, b: Vertex) -> Vertex:
        """Largest common lower bound of ``a`` and ``b``."""
        above_a = set(self.path_to_root(a))
        x: Vertex = b
        while x not in above_a:
            x = self.parent[x]
        return x


def geodesic(tree: MarkedTree, a: Vertex, b: Vertex) -> list[tuple[Edge, int]]:
    """Edges on the path from ``a`` to ``b`` with orientation signs.

    The sign is ``+1`` when the edge's rooted orientation (tail to head)
    runs in the direction of travel.
    """
    if a == b:
        return []
    rs = tree.rooted
    m = rs.meet(a, b)
    up = []
    x = a
    while x != m:
        up.append((rs.parent_edge[x], -1))
        x = rs.parent[x]
    down = []
    x = b
    while x != m:
        down.append((rs.parent_edge[x], 1))
        x = rs.parent[x]
    return up + down[::-1]


def path_vertices(tree: MarkedTree, a: Vertex, b: Vertex) -> list[Vertex]:
    out = [a]
    rs = tree.rooted
    for edge, _ in geodesic(tree, a, b):
        t, h = rs.tail[edge], rs.head[edge]
        out.append(h if out[-1] == t else t)
    return out


def separates(tree: MarkedTree, edge: Edge, pair1: tuple[int, int], pair2: tuple[int, int]) -> int:
    """Sign of ``edge`` for the quadruple ``pair1 + pair2``.

    With ``(i1, i2) = pair1`` and ``(i3, i4) = pair2`` this is ``+1`` when the
    edge separates ends ``i1, i3`` from ``i2, i4``, ``-1`` when it separates
    ``i1, i4`` from ``i2, i3`` and ``0`` otherwise.
    """
    i1, i2 = pair1
    i3, i4 = pair2
    if len({i1, i2, i3, i4}) != 4:
        raise ValueError("the four ends must be distinct")
    if is_end(edge):
        return 0
    side = tree.split(edge)
    s = [i in side for i in (i1, i2, i3, i4)]
    if s[0] == s[2] and s[1] == s[3] and s[0] != s[1]:
        return 1
    if s[0] == s[3] and s[1] == s[2] and s[0] != s[1]:
        return -1
    return 0


def epsilon(tree: MarkedTree, edge: Edge, quad: tuple[int, int, int, int]) -> int:
    return separates(tree, edge, (quad[0], quad[1]), (quad[2], quad[3]))
