"""Fixed data of a counting problem: degrees, toric and cross-ratio constraints."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantError
from .linalg import Matrix, as_matrix, is_free_quotient, matvec, rank


@dataclass(frozen=True)
class Constraint:
    """The orbit constraint on marked point ``i``.

    ``lattice`` holds generator rows of ``L_i``; ``point`` is any
    representative in ``Q^n`` of the tropical orbit, and ``coefficients`` a
    representative leading-coefficient vector in ``(Q^*)^n``.
    """

    lattice: Matrix
    point: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class ProblemSpec:
    rank: int
    degrees: tuple[tuple[int, ...], ...]
    constraints: tuple[Constraint, ...]
    cross_ratios: tuple[tuple[int, int, int, int], ...] = ()
    lambda_trop: tuple[Fraction, ...] = ()
    lambda_coefficients: tuple[Fraction, ...] | None = None
    signs: tuple[int, ...] | None = None
    beta: dict | None = field(default=None, compare=False)
    lift_order: int | None = None

    @classmethod
    def build(
        cls,
        degrees: Sequence[Sequence[int]],
        constraints: dict | None = None,
        cross_ratios: Sequence[Sequence[int]] = (),
        lambda_trop: Sequence = (),
        lambda_coefficients: Sequence | None = None,
        **kw,
    ) -> "ProblemSpec":
        """Convenience constructor.

        ``constraints`` maps an end index to ``(lattice rows, point)`` or
        ``(lattice rows, point, coefficients)``; ends not listed get
        ``L_i = N`` (no condition).
        """
        degrees = tuple(tuple(int(x) for x in d) for d in degrees)
        n = len(degrees[0])
        full = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        cons = []
        constraints = constraints or {}
        for i in range(1, len(degrees) + 1):
            if i in constraints:
                spec = constraints[i]
                lat = as_matrix(spec[0], n) if spec[0] else ()
                pt = tuple(Fraction(x) for x in spec[1])
                coeff = tuple(Fraction(x) for x in spec[2]) if len(spec) > 2 and spec[2] is not None else None
                cons.append(Constraint(lat, pt, coeff))
            else:
                cons.append(Constraint(full, (Fraction(0),) * n))
        return cls(
            rank=n,
            degrees=degrees,
            constraints=tuple(cons),
            cross_ratios=tuple(tuple(int(x) for x in row) for row in cross_ratios),
            lambda_trop=tuple(Fraction(x) for x in lambda_trop),
            lambda_coefficients=(
                tuple(Fraction(x) for x in lambda_coefficients) if lambda_coefficients is not None else None
            ),
            **kw,
        )

    def __post_init__(self):
        self.validate()

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def s(self) -> int:
        return len(self.cross_ratios)

    def projection(self, i: int) -> Matrix:
        """Integer matrix ``P_i`` realizing ``N -> N / L_i`` (end ``i`` is 1-based)."""
        return _projection(self.constraints[i - 1].lattice, self.rank)

    def quotient_rank(self, i: int) -> int:
        return len(self.projection(i))

    def target(self, i: int) -> tuple[Fraction, ...]:
        """Tropical constraint value ``zeta_i`` in quotient coordinates."""
        return matvec(self.projection(i), self.constraints[i - 1].point)

    def leading_coefficients(self, i: int) -> tuple[Fraction, ...]:
        """Leading coefficients of ``zeta_i(m)`` for ``m`` the rows of ``P_i``."""
        c = self.constraints[i - 1].coefficients or (Fraction(1),) * self.rank
        out = []
        for row in self.projection(i):
            v = Fraction(1)
            for ck, mk in zip(c, row):
                v *= ck**mk
            out.append(v)
        return tuple(out)

    def lambda_leading(self) -> tuple[Fraction, ...]:
        return self.lambda_coefficients or (Fraction(1),) * self.s

    def dimension_defect(self) -> int:
        """``s + sum rank(N/L_i) - (r - 1)``; zero for an enumerative problem."""
        return self.s + sum(self.quotient_rank(i) for i in range(1, self.r + 1)) - (self.r - 1)

    def validate(self):
        n = self.rank
        if self.r < 3:
            raise InvariantError("at least 3 ends are required")
        for d in self.degrees:
            if len(d) != n:
                raise InvariantError("degree vector has wrong length")
        if any(sum(d[k] for d in self.degrees) for k in range(n)):
            raise InvariantError("degrees do not balance: sum of n_i is not zero")
        if len(self.constraints) != self.r:
            raise InvariantError("one constraint entry per end is required")
        for i, c in enumerate(self.constraints, 1):
            if len(c.point) != n:
                raise InvariantError(f"constraint point {i} has wrong length")
            if c.coefficients is not None and (len(c.coefficients) != n or any(x == 0 for x in c.coefficients)):
                raise InvariantError(f"constraint coefficients {i} must be {n} nonzero rationals")
            q = is_free_quotient(c.lattice, n)
            if not q.free:
                raise InvariantError(f"N/L_{i} has torsion {list(q.torsion)}")
            if c.lattice:
                inside = rank(list(c.lattice) + [self.degrees[i - 1]]) == rank(c.lattice)
            else:
                inside = not any(self.degrees[i - 1])
            if not inside:
                raise InvariantError(f"n_{i} does not lie in L_{i}")
        if len(self.lambda_trop) != self.s:
            raise InvariantError("one tropical cross-ratio per row of J is required")
        for row in self.cross_ratios:
            if len(row) != 4 or len(set(row)) != 4 or not all(1 <= x <= self.r for x in row):
                raise InvariantError(f"cross-ratio row {row} must be 4 distinct ends in 1..r")
        if any(x == 0 for x in self.lambda_trop):
            raise InvariantError("tropical cross-ratios must be nonzero")
        if self.lambda_coefficients is not None and (
            len(self.lambda_coefficients) != self.s or any(x == 0 for x in self.lambda_coefficients)
        ):
            raise InvariantError("cross-ratio coefficients must be s nonzero rationals")

    def reduced(self) -> "ProblemSpec":
        """Equivalent problem with every tropical cross-ratio positive.

        A negative row has its last two ends swapped, its tropical value
        negated and its leading coefficient inverted.
        """
        J, lam, coeff = [], [], []
        for row, lt, c in zip(self.cross_ratios, self.lambda_trop, self.lambda_leading()):
            if lt < 0:
                J.append((row[0], row[1], row[3], row[2]))
                lam.append(-lt)
                coeff.append(1 / c)
            else:
                J.append(row)
                lam.append(lt)
                coeff.append(c)
        return ProblemSpec(
            rank=self.rank,
            degrees=self.degrees,
            constraints=self.constraints,
            cross_ratios=tuple(J),
            lambda_trop=tuple(lam),
            lambda_coefficients=tuple(coeff),
            signs=self.signs,
            beta=self.beta,
            lift_order=self.lift_order,
        )


_PROJ_CACHE: dict = {}


def _projection(lattice: Matrix, n: int) -> Matrix:
    key = (lattice, n)
    if key not in _PROJ_CACHE:
        q = is_free_quotient(lattice, n)
        if not q.free:
            raise InvariantError("quotient lattice has torsion")
        _PROJ_CACHE[key] = q.projection
    return _PROJ_CACHE[key]
