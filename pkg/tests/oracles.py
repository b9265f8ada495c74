"""Independent reference computations used by the test suite.

None of these reuse the package's algorithms beyond the series type.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from tropcount.series import TSeries


def cofactor_det(A):
    """Determinant by Laplace expansion along the first row."""
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        if A[0][j]:
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            total += (-1) ** j * A[0][j] * cofactor_det(minor)
    return total


def brute_force_tree_census(r):
    """Count trivalent leaf-labelled trees on ``r`` leaves by their split systems.

    Every such tree is determined by ``r - 3`` pairwise compatible nontrivial
    splits; we enumerate all compatible sets of that size directly.
    """
    from itertools import combinations

    leaves = frozenset(range(1, r + 1))
    splits = set()
    for k in range(2, r - 1):
        for side in combinations(sorted(leaves), k):
            s = frozenset(side)
            splits.add(min(s, leaves - s, key=lambda x: sorted(x)))
    splits = sorted(splits, key=sorted)

    def compatible(a, b):
        a2, b2 = leaves - a, leaves - b
        return not (a & b and a & b2 and a2 & b and a2 & b2)

    count = 0
    for combo in combinations(splits, r - 3):
        if all(compatible(a, b) for a, b in combinations(combo, 2)):
            count += 1
    return count


def _newton_polygon_roots(coeffs):
    """Leading terms of the roots of ``A c^2 + B c + C`` when the polygon has two edges."""
    A, B, C = coeffs
    vA, vB, vC = A.order, B.order, C.order
    if not (vB - vA < vC - vB):
        raise ValueError("Newton polygon has a single edge: roots not separated")
    k1, k2 = vC - vB, vB - vA
    return [(k1, -C.leading() / B.leading()), (k2, -B.leading() / A.leading())]


def hensel_quadratic(coeffs, prec, steps=12):
    """All roots of a quadratic over truncated series by Newton iteration."""
    A, B, C = coeffs
    e = A.e
    roots = []
    for k, lead in _newton_polygon_roots(coeffs):
        c = TSeries.monomial(lead, int(k), e)
        for _ in range(steps):
            f = (A * c + B) * c + C
            df = 2 * A * c + B
            c = (c - f * df.invert(prec=prec + 40)).truncate(prec + 20).with_prec(float("inf"))
        roots.append(c)
    return roots


def toy_direct_solutions(z5, z6, lam, prec):
    """Solve the toy problem directly in the parameterization ``t -> (c1 (t-lam)/(t-1), c2 t)``.

    ``z5``, ``z6`` are pairs of series (the two point constraints) and ``lam``
    the cross-ratio. Returns a list of ``(c1, c2)``.
    """
    (ax, ay), (bx, by) = z5, z6
    A = lam * (ax - bx)
    B = -ax * (lam * ay + by) + bx * (lam * by + ay)
    C = ay * by * (ax - bx)
    out = []
    for c2 in hensel_quadratic((A, B, C), prec):
        c1 = ax * (ay - c2) * (ay - lam * c2).invert(prec=prec + 40)
        out.append((c1, c2))
    return out


def brute_force_cross_ratio(curve, quad):
    """Signed overlap length computed from vertex sequences of the two paths."""
    from tropcount.trees import path_vertices

    i1, i2, i3, i4 = quad
    t = curve.tree
    p = path_vertices(t, ("u", i1), ("u", i2))
    q = path_vertices(t, ("u", i3), ("u", i4))
    steps_p = {frozenset(x): (x[0], x[1]) for x in zip(p, p[1:])}
    total = Fraction(0)
    for a, b in zip(q, q[1:]):
        key = frozenset((a, b))
        if key in steps_p and not isinstance(a, tuple) and not isinstance(b, tuple):
            length = next(curve.lengths[e] for e in t.bounded_edges if set(t.endpoints(e)) == {a, b})
            total += length if steps_p[key] == (a, b) else -length
    return total


def real_solution_count(matrix, sign_bits):
    """Number of sign patterns ``s`` in ``{0,1}^cols`` with ``matrix . s = sign_bits`` mod 2.

    For a square integer matrix of nonzero determinant this is the number of
    real points of the torus system ``prod_c z_c^(a_rc) = b_r`` with the given
    target signs (the moduli are determined uniquely by the log-linear part).
    """
    from itertools import product as cart

    ncols = len(matrix[0])
    count = 0
    for s in cart((0, 1), repeat=ncols):
        if all(sum(a * x for a, x in zip(row, s)) % 2 == b for row, b in zip(matrix, sign_bits)):
            count += 1
    return count
