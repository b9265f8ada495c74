"""Shared test data: the toy problem, the two worked small examples, counterexamples."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from tropcount.curves import CombinatorialType, TropicalCurve
from tropcount.enumerator import enumerate_curves
from tropcount.problem import ProblemSpec
from tropcount.trees import MarkedTree, enumerate_trivalent_trees

TOY_DEGREES = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)]
TOY_Z5 = (Fraction(2), Fraction(3))
TOY_Z6 = (Fraction(5), Fraction(-7))
TOY_LAMBDA = Fraction(3)


def toy_problem(lambda_trop=5, p5=(0, 0), p6=(11, 3), with_coefficients=True) -> ProblemSpec:
    if with_coefficients:
        cons = {5: ([], p5, TOY_Z5), 6: ([], p6, TOY_Z6)}
        return ProblemSpec.build(TOY_DEGREES, cons, [(1, 2, 3, 4)], [lambda_trop], [TOY_LAMBDA])
    return ProblemSpec.build(TOY_DEGREES, {5: ([], p5), 6: ([], p6)}, [(1, 2, 3, 4)], [lambda_trop])


@lru_cache(maxsize=None)
def toy_result():
    return enumerate_curves(toy_problem())


def rooted_example_tree() -> MarkedTree:
    """r = 6: v1 carries e1, e5, e6; v4 carries e4; v2 carries e2, e3.

    Vertex numbers: 0 = v1, 1 = v4, 2 = v2; gamma1 = g0 = (v1, v4), gamma2 = g1 = (v4, v2).
    """
    return MarkedTree(3, (0, 2, 2, 1, 0, 0), ((0, 1), (1, 2)))


def cross_ratio_example_tree() -> MarkedTree:
    """r = 5: A carries e1, e5; B carries e4; C carries e2, e3. gamma1 = A-B, gamma2 = B-C."""
    return MarkedTree(3, (0, 2, 2, 1, 0), ((0, 1), (1, 2)))


CR_EXAMPLE_DEGREES = [(-1, 0), (1, 1), (1, -1), (0, 1), (-1, -1)]


def cross_ratio_example_curve(l1, l2) -> TropicalCurve:
    ctype = CombinatorialType.from_degrees(cross_ratio_example_tree(), CR_EXAMPLE_DEGREES)
    return TropicalCurve.from_lengths(ctype, [Fraction(l1), Fraction(l2)])


def random_degrees(rng: random.Random, r: int, n: int = 2, span: int = 3):
    degs = [tuple(rng.randint(-span, span) for _ in range(n)) for _ in range(r - 1)]
    degs.append(tuple(-sum(d[k] for d in degs) for k in range(n)))
    return degs


@lru_cache(maxsize=None)
def trees_for(r: int):
    return list(enumerate_trivalent_trees(r))


def random_curve(rng: random.Random, r: int | None = None, n: int = 2) -> TropicalCurve:
    r = r or rng.randint(4, 6)
    tree = rng.choice(trees_for(r))
    ctype = CombinatorialType.from_degrees(tree, random_degrees(rng, r, n))
    lengths = [Fraction(rng.randint(1, 40), rng.randint(1, 6)) for _ in tree.bounded_edges]
    anchor = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
    return TropicalCurve.from_lengths(ctype, lengths, anchor_position=anchor)


# --- one curve per genericity violation ------------------------------------------

def coincident_curve() -> TropicalCurve:
    """Two vertices mapped to the same point although the edge path between them is not contracted.

    r = 5; A carries e5 = (-2, 0) and joins B and C by edges of slope (1, 0)
    and length 1, so B and C coincide.
    """
    tree = MarkedTree(3, (1, 1, 2, 2, 0), ((0, 1), (0, 2)))
    degrees = [(1, 1), (0, -1), (1, 1), (0, -1), (-2, 0)]
    ctype = CombinatorialType.from_degrees(tree, degrees)
    return TropicalCurve.from_lengths(ctype, [1, 1])


def not_straight_curve() -> TropicalCurve:
    """Vertex B lies on the ray of end e1 at A, and the path through B bends.

    r = 4; A carries e1 = (1, 1) and e2 = (-2, -2); B, reached by slope (1, 1)
    with length 1, carries e3 = (1, 0) and e4 = (0, 1).
    """
    tree = MarkedTree(2, (0, 0, 1, 1), ((0, 1),))
    degrees = [(1, 1), (-2, -2), (1, 0), (0, 1)]
    ctype = CombinatorialType.from_degrees(tree, degrees)
    return TropicalCurve.from_lengths(ctype, [1])


def contracted_valence_curve() -> TropicalCurve:
    """A 4-valent vertex with two contracted ends."""
    tree = MarkedTree(1, (0, 0, 0, 0), ())
    degrees = [(1, 0), (-1, 0), (0, 0), (0, 0)]
    ctype = CombinatorialType.from_degrees(tree, degrees)
    return TropicalCurve(tree, ctype.slopes, {}, {0: (0, 0)})
