"""Draw the toy curves as SVG files in the current directory.

Run: python demos/04_render.py
"""
# %%
from tropcount import ProblemSpec, enumerate_curves
from tropcount.svg import render_svg

degrees = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)]
problem = ProblemSpec.build(degrees, {5: ([], (0, 0)), 6: ([], (11, 3))}, [(1, 2, 3, 4)], [5])

for k, c in enumerate(enumerate_curves(problem).curves):
    path = f"toy_curve_{k}.svg"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(c.curve, bbox=(-4, -4, 16, 8)))
    print("wrote", path)
