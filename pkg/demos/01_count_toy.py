"""Count rational plane curves of degree (1,0),(-1,0),(0,1),(0,-1) through two points
with one prescribed cross-ratio.

Run: python demos/01_count_toy.py
"""
# %% The problem
from tropcount import ProblemSpec, enumerate_curves, validate_genericity

degrees = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)]
problem = ProblemSpec.build(degrees, {5: ([], (0, 0)), 6: ([], (11, 3))}, [(1, 2, 3, 4)], [5])
print("ends:", problem.r, " dimension defect:", problem.dimension_defect())

# %% Sweep all 105 trivalent trees with six leaves
result = enumerate_curves(problem)
print("types visited:", result.types_visited)
print("accepted:", len(result.curves), " total count:", result.total_complex)

reasons = {}
for d in result.diagnostics:
    reasons[d.reason] = reasons.get(d.reason, 0) + 1
print("rejections:", reasons)

# %% The accepted curves
for k, c in enumerate(result.curves):
    print(f"curve {k}: m = {c.report.m_complex}")
    for w, p in sorted(c.curve.positions.items()):
        print(f"  vertex {w} at ({p[0]}, {p[1]})")
    for e, ell in sorted(c.curve.lengths.items()):
        print(f"  edge {e} slope {c.curve.slopes[e]} length {ell}")

# %% Genericity
print("violations:", validate_genericity(result))
