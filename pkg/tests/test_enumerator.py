from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fixtures import (
    TOY_DEGREES,
    coincident_curve,
    contracted_valence_curve,
    not_straight_curve,
    toy_problem,
    toy_result,
)
from tropcount.curves import satisfies
from tropcount.enumerator import (
    COINCIDENT,
    CONTRACTED_VALENCE,
    GENERALITY,
    NOT_STRAIGHT,
    enumerate_curves,
    validate_genericity,
)
from tropcount.errors import DimensionError
from tropcount.problem import ProblemSpec


def curve_signature(result):
    return sorted((c.curve.tree.canonical_key, tuple(sorted(c.curve.lengths.values()))) for c in result.curves)


def test_accepted_curves_satisfy_the_problem():
    res = toy_result()
    assert res.types_visited == 105
    assert len(res.curves) + len(res.diagnostics) == 105
    assert all(satisfies(c.curve, res.problem) for c in res.curves)
    assert res.general and res.total_complex == 2


def test_translation_invariance():
    shift = (Fraction(7, 3), Fraction(-2))
    moved = enumerate_curves(toy_problem(p5=shift, p6=(11 + shift[0], 3 + shift[1])))
    base = toy_result()
    assert curve_signature(moved) == curve_signature(base)
    for a, b in zip(base.curves, moved.curves):
        for w, p in a.curve.positions.items():
            assert b.curve.positions[w] == (p[0] + shift[0], p[1] + shift[1])


def test_scaling_homogeneity():
    k = 3
    scaled = enumerate_curves(toy_problem(lambda_trop=5 * k, p6=(11 * k, 3 * k)))
    base = toy_result()
    assert scaled.total_complex == base.total_complex
    for a, b in zip(base.curves, scaled.curves):
        assert {e: k * x for e, x in a.curve.lengths.items()} == b.curve.lengths


def test_reordered_cross_ratio_gives_same_curves():
    # swapping the last two ends of a cross-ratio negates its tropical value
    swapped = ProblemSpec.build(TOY_DEGREES, {5: ([], (0, 0)), 6: ([], (11, 3))}, [(1, 2, 4, 3)], [-5])
    assert curve_signature(enumerate_curves(swapped)) == curve_signature(toy_result())
    # reduction swaps them back and restores the positive value
    assert curve_signature(enumerate_curves(swapped.reduced())) == curve_signature(toy_result())


@settings(max_examples=15, deadline=None)
@given(
    st.integers(-20, 20).filter(lambda x: x != 0),
    st.integers(-15, 15),
    st.integers(-15, 15),
)
def test_count_is_constant_on_general_data(lam, x, y):
    res = enumerate_curves(toy_problem(lambda_trop=lam, p6=(x, y)))
    assume(res.general and not validate_genericity(res))
    assert res.total_complex == 2
    assert all(satisfies(c.curve, res.problem) for c in res.curves)


def test_parallel_matches_serial():
    par = enumerate_curves(toy_problem(), workers=2)
    assert curve_signature(par) == curve_signature(toy_result())
    assert [d.key for d in par.diagnostics] == [d.key for d in toy_result().diagnostics]


def test_dimension_error():
    p = ProblemSpec.build(TOY_DEGREES, {5: ([], (0, 0)), 6: ([], (11, 3))})
    with pytest.raises(DimensionError):
        enumerate_curves(p)


def test_non_general_data_is_flagged():
    res = enumerate_curves(toy_problem(lambda_trop=3))
    assert not res.general
    assert any(d.reason == GENERALITY for d in res.diagnostics)


@pytest.mark.parametrize(
    "make,kind",
    [(coincident_curve, COINCIDENT), (not_straight_curve, NOT_STRAIGHT), (contracted_valence_curve, CONTRACTED_VALENCE)],
)
def test_genericity_counterexamples(make, kind):
    kinds = {v.kind for v in validate_genericity([make()])}
    assert kind in kinds


def test_toy_curves_are_generic():
    assert validate_genericity(toy_result()) == []
