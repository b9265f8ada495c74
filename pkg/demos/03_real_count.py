"""Real multiplicities: a curve of complex multiplicity 2 can have 0 or 2 real lifts.

Run: python demos/03_real_count.py
"""
# %% A problem with an edge of weight 2
from tropcount import FieldExtensionRequired, ProblemSpec, enumerate_curves, lift_curve
from tropcount.deformation import sign_from_coefficients

degrees = [(0, -1), (2, -2), (-2, 3), (0, 0), (0, 0)]


def problem(coeffs):
    return ProblemSpec.build(degrees, {4: ([], (0, 0), (1, 1)), 5: ([], (1, -9), coeffs)}, [], [])


result = enumerate_curves(problem((1, 1)))
print("complex count:", result.total_complex)
print("divisors:", [c.report.divisors for c in result.curves if c.report.epsilon_even])

# %% Real count depends on the signs of the constraint coefficients
for coeffs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
    p = problem(coeffs)
    res = enumerate_curves(p)
    sign = sign_from_coefficients(res.curves[0].theta, p)
    print(f"coefficients {coeffs}: sign {sign} real count {res.real_count(sign)}")

# %% Lifting agrees: no rational lift when the real count drops
for coeffs in [(1, -1), (-1, 1)]:
    p = problem(coeffs)
    c = next(c for c in enumerate_curves(p).curves if c.report.epsilon_even)
    try:
        print(coeffs, "lifts:", len(lift_curve(c.curve, p, order=4)))
    except FieldExtensionRequired as exc:
        print(coeffs, "no rational lift:", exc)
