import random
from fractions import Fraction

import pytest

from fixtures import random_curve, toy_problem, toy_result
from oracles import real_solution_count
from tropcount.deformation import (
    build_theta,
    constraint_row_count,
    multiplicity_report,
    real_multiplicity,
    sign_from_coefficients,
    theta_determinant,
)
from tropcount.enumerator import enumerate_curves
from tropcount.errors import FieldExtensionRequired, InvariantError
from tropcount.lifting import LiftingSystem
from tropcount.linalg import cokernel_order, matvec
from tropcount.problem import ProblemSpec

EVEN_DEGREES = [(0, -1), (2, -2), (-2, 3), (0, 0), (0, 0)]


def even_problem(coeffs=None):
    return ProblemSpec.build(EVEN_DEGREES, {4: ([], (0, 0), (1, 1)), 5: ([], (1, -9), coeffs)}, [], [])


def test_toy_theta_shape_and_multiplicity():
    for c in toy_result().curves:
        assert c.theta.shape == (11, 11)
        assert c.report.divisors == (1,) * 11
        assert c.report.m_complex == 1 and c.report.e1_rank == 0 and c.report.epsilon_even == 0
        assert abs(theta_determinant(c.theta)) == 1


def test_theta_solution_is_the_curve():
    res = toy_result()
    for c in res.curves:
        x = [None] * len(c.theta.cols)
        for label, k in c.theta.col_index.items():
            if label[0] == "vertex":
                x[k] = c.curve.positions[label[1]][label[2]]
            else:
                x[k] = c.curve.lengths[label[1]]
        assert matvec(c.theta.matrix, x) == c.theta.rhs(res.problem)


def test_multiplicity_is_cokernel_order():
    res = enumerate_curves(even_problem())
    assert res.curves
    for c in res.curves:
        assert c.report.m_complex == cokernel_order(c.theta.matrix, len(c.theta.cols))
        assert c.report.m_complex == abs(theta_determinant(c.theta))
    assert any(c.report.epsilon_even for c in res.curves)


def test_real_multiplicity_against_sign_oracle():
    rng = random.Random(4)
    problems = [toy_problem(), even_problem(), toy_problem(lambda_trop=-4, p6=(2, 9))]
    for p in problems:
        for c in enumerate_curves(p).curves:
            k = constraint_row_count(c.theta)
            for _ in range(12):
                sign = tuple(rng.choice((1, -1)) for _ in range(k))
                bits = [0] * c.theta.n_edge_rows + [0 if s == 1 else 1 for s in sign]
                expected = real_solution_count(c.theta.matrix, bits)
                assert real_multiplicity(c.curve, p, sign, theta=c.theta) == expected


def test_real_multiplicity_validates_sign():
    c = toy_result().curves[0]
    with pytest.raises(InvariantError):
        real_multiplicity(c.curve, toy_result().problem, (1, 1), theta=c.theta)
    with pytest.raises(InvariantError):
        real_multiplicity(c.curve, toy_result().problem, (2,) * 5, theta=c.theta)


def test_underdetermined_and_degenerate_complexes():
    # without the cross-ratio the curves move in a one-parameter family
    p = ProblemSpec.build([(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)], {5: ([], (0, 0)), 6: ([], (11, 3))})
    theta = build_theta(toy_result().curves[0].curve.ctype, p)
    rep = multiplicity_report(None, theta=theta)
    assert rep.e1_rank == 1 and rep.finite
    # parallel constraints on collinear ends: some type has a non-surjective complex
    degenerate = ProblemSpec.build([(1, 0), (-1, 0), (1, 0), (-1, 0)], {1: ([[1, 0]], (0, 0)), 3: ([[1, 0]], (0, 0))}, [(1, 3, 2, 4)], [1])
    from tropcount.curves import CombinatorialType
    from tropcount.trees import enumerate_trivalent_trees

    reports = [multiplicity_report(CombinatorialType.from_degrees(t, degenerate.degrees), degenerate) for t in enumerate_trivalent_trees(4)]
    assert any(not r.finite for r in reports)


@pytest.mark.parametrize("coeffs,real,lifts", [((1, 1), 2, 2), ((1, -1), 2, 2), ((-1, 1), 0, None), ((4, 1), 2, 2)])
def test_real_calculus_agrees_with_lifting(coeffs, real, lifts):
    p = even_problem(coeffs)
    res = enumerate_curves(p)
    even = [c for c in res.curves if c.report.epsilon_even]
    assert even
    c = even[0]
    sign = sign_from_coefficients(c.theta, p)
    assert real_multiplicity(c.curve, p, sign, theta=c.theta) == real
    if lifts is None:
        with pytest.raises(FieldExtensionRequired):
            LiftingSystem(c.curve, p).lift(4)
    else:
        assert len(LiftingSystem(c.curve, p).lift(4)) == lifts == c.report.m_complex
