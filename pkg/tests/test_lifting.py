import random
from fractions import Fraction

import pytest

from fixtures import TOY_LAMBDA, TOY_Z5, random_curve, toy_result
from tropcount.enumerator import enumerate_curves
from tropcount.errors import FieldExtensionRequired, InvariantError, LiftingStalled
from tropcount.lifting import (
    CurveCoordinates,
    LiftingSystem,
    forced_beta,
    ramification_index,
    rational_roots,
)
from tropcount.problem import ProblemSpec
from tropcount.series import TSeries

ORDER = 8


@pytest.fixture(scope="module")
def toy_lifts():
    res = toy_result()
    return [lm for c in res.curves for lm in LiftingSystem(c.curve, res.problem).lift(ORDER)]


def test_rational_roots():
    assert rational_roots(Fraction(9, 4), 2) == [Fraction(3, 2), Fraction(-3, 2)]
    assert rational_roots(Fraction(-8, 27), 3) == [Fraction(-2, 3)]
    assert rational_roots(Fraction(-1), 2) == []
    assert rational_roots(Fraction(2), 2) == []
    assert rational_roots(Fraction(5), 1) == [5]
    assert rational_roots(Fraction(1), 0) == [1] and rational_roots(Fraction(2), 0) == []


def test_valuation_pattern_of_coordinates():
    # y_w(q_i) is integral exactly when q_i sits above w in the rooted tree
    rng = random.Random(11)
    for _ in range(30):
        c = random_curve(rng, r=rng.randint(4, 7))
        e = ramification_index(c)
        alpha = {g: TSeries({0: rng.randint(1, 5), 1: rng.randint(-3, 3)}, e=e) for g in c.tree.bounded_edges}
        cc = CurveCoordinates(c, alpha, forced_beta(c.tree), e, 60)
        rs = c.tree.rooted
        for w in range(c.tree.n_finite):
            for i in range(1, c.tree.r):
                assert (cc.y(w, i).valuation() >= 0) == (i in rs.subtree_ends(w))


def test_toy_lifts_solve_the_system(toy_lifts):
    assert len(toy_lifts) == 2
    for lm in toy_lifts:
        # the truncated unknowns, read as exact polynomials, still solve to the order
        exact = {k: v.with_prec(float("inf")) for k, v in lm.unknowns.items()}
        values = lm.system.evaluate(exact, 3 * ORDER)
        for label, v in values.items():
            diff = v - lm.system.targets[label]
            assert diff.prec > ORDER and diff.order >= ORDER
        orders = lm.residual_orders
        assert all(a < b for a, b in zip(orders, orders[1:]))
        assert orders[-1] >= ORDER


def test_toy_lifts_have_the_right_cross_ratio(toy_lifts):
    # computed from the marked points directly, not through the vertex coordinates
    for lm in toy_lifts:
        y = lm.marked_points()
        cr = (y[1] - y[3]) * (y[2] - y[4]) / ((y[1] - y[4]) * (y[2] - y[3]))
        assert cr.agrees(TSeries.monomial(TOY_LAMBDA, 5), ORDER)


def test_toy_lifts_pass_through_the_point(toy_lifts):
    for lm in toy_lifts:
        q5 = lm.marked_points()[5]
        assert lm.pullback((1, 0), q5).agrees(TOY_Z5[0], ORDER)
        assert lm.pullback((0, 1), q5).agrees(TOY_Z5[1], ORDER)


def test_toy_lifts_are_distinct(toy_lifts):
    a, b = toy_lifts
    assert any(not a.unknowns[k].agrees(b.unknowns[k], 1) for k in a.unknowns)


def test_trivial_three_end_problem():
    p = ProblemSpec.build([(1, 0), (-1, 0), (0, 0)], {3: ([], (2, 5), (3, 7))})
    res = enumerate_curves(p)
    assert res.total_complex == 1
    (lm,) = LiftingSystem(res.curves[0].curve, p).lift(6)
    assert lm.iterations == 0
    assert lm.chi(0)[0].agrees(3, 6) and lm.chi(0)[1].agrees(7, 6)


def test_bad_start_is_rejected():
    res = toy_result()
    system = LiftingSystem(res.curves[0].curve, res.problem)
    ones = {label: Fraction(1) for label in system.theta.cols}
    with pytest.raises(InvariantError):
        system.lift_from(ones, 4)


def test_stalled_iteration_is_reported(monkeypatch):
    res = toy_result()
    system = LiftingSystem(res.curves[0].curve, res.problem)
    (start,) = system.initial_solutions()[:1]
    size = len(system.theta.cols)
    system.__dict__["theta_inverse"] = tuple((0,) * size for _ in range(size))
    with pytest.raises(LiftingStalled):
        system.lift_from(start, 6)


def test_small_margin_is_widened():
    res = toy_result()
    system = LiftingSystem(res.curves[0].curve, res.problem)
    lm = system.lift_from(system.initial_solutions()[0], 6, margin=1)
    assert lm.residual_orders[-1] >= 6


def test_field_extension_is_reported():
    p = ProblemSpec.build(
        [(0, -1), (2, -2), (-2, 3), (0, 0), (0, 0)], {4: ([], (0, 0), (1, 1)), 5: ([], (1, -9), (2, 3))}, [], []
    )
    c = next(c for c in enumerate_curves(p).curves if c.report.m_complex == 2)
    with pytest.raises(FieldExtensionRequired):
        LiftingSystem(c.curve, p).lift(4)
    partial = LiftingSystem(c.curve, p).lift(4, complete=False)
    assert partial == []


def test_first_order_perturbation_is_theta(toy_lifts):
    # x -> x (1 + pi^k y) moves Theta by 1 + pi^k (theta y) to first order
    lm = toy_lifts[0]
    system = lm.system
    k = 3
    rng = random.Random(5)
    y = [Fraction(rng.randint(-4, 4)) for _ in system.theta.cols]
    base = {c: v.with_prec(float("inf")) for c, v in lm.unknowns.items()}
    moved = {c: base[c] * TSeries({0: 1, k: yc}) for c, yc in zip(system.theta.cols, y)}
    cap = 4 * ORDER
    before, after = system.evaluate(base, cap), system.evaluate(moved, cap)
    for row, label in enumerate(system.theta.rows):
        ratio = after[label] / before[label]
        expected = sum(a * b for a, b in zip(system.theta.matrix[row], y))
        assert ratio.agrees(TSeries({0: 1, k: expected}), k + 1)
