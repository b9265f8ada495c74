"""Lift the two tropical curves of the toy problem to maps over truncated series.

Run: python demos/02_lift_toy.py
"""
# %% Problem with leading coefficients for the points and the cross-ratio
from fractions import Fraction

from tropcount import ProblemSpec, enumerate_curves, lift_curve

degrees = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)]
cons = {5: ([], (0, 0), (2, 3)), 6: ([], (11, 3), (5, -7))}
problem = ProblemSpec.build(degrees, cons, [(1, 2, 3, 4)], [5], [3])
result = enumerate_curves(problem)

# %% Lift each curve to order 10 in t
for k, c in enumerate(result.curves):
    for lm in lift_curve(c.curve, problem, order=10):
        print(f"curve {k}: {lm.iterations} Newton steps, residual orders {lm.residual_orders}")
        for i, y in lm.marked_points().items():
            print(f"  q_{i} = {y}")

        # cross-ratio of the marked points, straight from the coordinates
        y = lm.marked_points()
        cr = (y[1] - y[3]) * (y[2] - y[4]) / ((y[1] - y[4]) * (y[2] - y[3]))
        print("  cross-ratio:", cr)

        # the map sends q_5 to (2, 3) up to the working order
        x5 = [lm.pullback(m, y[5]) for m in ((1, 0), (0, 1))]
        print("  f(q_5) =", [str(v.truncate(4)) for v in x5])
        assert x5[0].agrees(Fraction(2), 10) and x5[1].agrees(Fraction(3), 10)
