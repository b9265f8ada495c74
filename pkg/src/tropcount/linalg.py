"""Exact integer and rational matrix algebra.

Matrices are plain tuples of row tuples holding ``int`` or ``Fraction``
entries. Nothing here ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]

INFINITE = "infinite"


def as_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    if ncols is not None and out and len(out[0]) != ncols:
        raise ValueError(f"expected {ncols} columns, got {len(out[0])}")
    return out


def as_rat_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(A: Sequence[Sequence], ncols: int = 0) -> tuple[int, int]:
    """Row and column counts; ``ncols`` is used for matrices with no rows."""
    return len(A), (len(A[0]) if A else ncols)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Sequence[Sequence], ncols: int = 0) -> tuple[tuple, ...]:
    m, n = shape(A, ncols)
    return tuple(tuple(A[i][j] for i in range(m)) for j in range(n))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[tuple, ...]:
    if not A:
        return ()
    if len(A[0]) != len(B):
        raise ValueError("shape mismatch in matmul")
    if not B:
        return tuple(() for _ in A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal and divisors ``d1 | d2 | ...``.

    ``divisors`` has ``min(rows, cols)`` entries; zeros come last.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots on the entry of least absolute value in the remaining block,
    which keeps intermediate entries small on the matrices met here.
    ``ncols`` is only needed when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    M = [list(map(int, r)) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for row in M:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] and (pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                q = M[i][t] // p
                add_row(t, i, -q)
                clean &= M[i][t] == 0
            for j in range(t + 1, n):
                q = M[t][j] // p
                add_col(t, j, -q)
                clean &= M[t][j] == 0
            if not clean:
                continue
            # divisibility: fold a non-multiple into row t and retry
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if pivot is None:
            break
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]

    divisors = tuple(M[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        U=tuple(map(tuple, U)),
        D=tuple(map(tuple, M)),
        V=tuple(map(tuple, V)),
        divisors=divisors,
    )


def rank(A: Sequence[Sequence], ncols: int = 0) -> int:
    R, pivots = _rref(as_rat_matrix(A))
    return len(pivots)


def cokernel_order(A: Sequence[Sequence[int]], ncols: int | None = None) -> int | str:
    """Order of ``Z^rows / A Z^cols``: product of divisors, or ``"infinite"``."""
    snf = smith_normal_form(A, ncols)
    if snf.rank < len(A):
        return INFINITE
    out = 1
    for d in snf.divisors:
        if d:
            out *= d
    return out


def _rref(A: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    M = [list(r) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


@dataclass(frozen=True)
class RationalSolution:
    """A particular solution of ``A x = b`` and a basis of ``ker A``."""

    particular: tuple[Fraction, ...]
    kernel: tuple[tuple[Fraction, ...], ...]

    @property
    def unique(self) -> bool:
        return not self.kernel


def solve_rational(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> RationalSolution | None:
    """Solve ``A x = b`` over the rationals; ``None`` if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if len(b) != m:
        raise ValueError("right-hand side has wrong length")
    aug = tuple(tuple(Fraction(x) for x in row) + (Fraction(bi),) for row, bi in zip(A, b))
    R, pivots = _rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        k = [Fraction(0)] * n
        k[f] = Fraction(1)
        for row, c in zip(R, pivots):
            k[c] = -row[f]
        kernel.append(tuple(k))
    return RationalSolution(tuple(x), tuple(kernel))


def inverse_rational(A: Sequence[Sequence]) -> RatMatrix:
    """Inverse of a square nonsingular matrix over the rationals."""
    n = len(A)
    aug = tuple(
        tuple(Fraction(x) for x in row) + tuple(Fraction(int(i == j)) for j in range(n))
        for i, row in enumerate(A)
    )
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


@dataclass(frozen=True)
class QuotientCheck:
    free: bool
    projection: Matrix  # rows span the annihilator of L; empty when not free
    torsion: tuple[int, ...]


def is_free_quotient(L: Sequence[Sequence[int]], n: int) -> QuotientCheck:
    """Test whether ``Z^n / rowspan(L)`` is torsion-free.

    When it is, ``projection`` is an integer ``(n - rank) x n`` matrix whose
    kernel is exactly the saturated row span, so ``x -> P x`` realizes the
    quotient map onto ``Z^(n - rank)``.
    """
    rows = [list(r) for r in L if any(r)]
    if not rows:
        return QuotientCheck(True, identity(n), ())
    snf = smith_normal_form(rows)
    torsion = tuple(d for d in snf.divisors if d > 1)
    if torsion:
        return QuotientCheck(False, (), torsion)
    k = snf.rank
    # rowspan(L) = span of the first k rows of V^-1, so the coordinates of x
    # in that basis are x^T V; the last n - k of them give the quotient
    P = tuple(tuple(snf.V[i][j] for i in range(n)) for j in range(k, n))
    return QuotientCheck(True, P, ())
