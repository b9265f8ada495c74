"""Truncated Laurent series in ``pi = t^(1/e)`` with rational coefficients.

A series stores the coefficients of ``pi^k`` for ``k < prec``; everything
from ``pi^prec`` on is unknown. ``prec`` may be ``math.inf`` for exact
finite expansions. Arithmetic tracks precision conservatively.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .errors import PrecisionError

INF = math.inf


def _min(*xs):
    return min(xs)


class TSeries:
    __slots__ = ("e", "coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None, prec: float = INF, e: int = 1):
        if e < 1:
            raise ValueError("ramification index must be positive")
        self.e = e
        self.prec = prec
        self.coeffs = {
            int(k): Fraction(c) for k, c in (coeffs or {}).items() if c != 0 and k < prec
        }

    # constructors ------------------------------------------------------------

    @classmethod
    def const(cls, c, e: int = 1, prec: float = INF) -> "TSeries":
        return cls({0: c}, prec, e)

    @classmethod
    def monomial(cls, c, k: int, e: int = 1, prec: float = INF) -> "TSeries":
        return cls({k: c}, prec, e)

    @classmethod
    def pi_power(cls, k: int, e: int = 1) -> "TSeries":
        return cls({k: 1}, INF, e)

    def _like(self, coeffs, prec) -> "TSeries":
        return TSeries(coeffs, prec, self.e)

    def _coerce(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            if other.e != self.e:
                raise ValueError("series with different ramification indices")
            return other
        return TSeries.const(Fraction(other), self.e)

    # inspection ----------------------------------------------------------------

    @property
    def order(self) -> float:
        """Leading exponent in units of ``pi``, or ``prec`` if nothing is known to be nonzero."""
        return min(self.coeffs) if self.coeffs else self.prec

    def valuation(self) -> Fraction | float:
        """Leading exponent in units of ``t``; ``inf`` if zero to known precision."""
        if not self.coeffs:
            return INF
        return Fraction(min(self.coeffs), self.e)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return bool(self.coeffs) and min(self.coeffs) == 0

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise PrecisionError("series is zero to the known precision")
        return self.coeffs[min(self.coeffs)]

    def coefficient(self, k: int) -> Fraction:
        if k >= self.prec:
            raise PrecisionError(f"coefficient of pi^{k} is beyond precision {self.prec}")
        return self.coeffs.get(k, Fraction(0))

    def truncate(self, prec: float) -> "TSeries":
        return self._like(self.coeffs, _min(self.prec, prec))

    def with_prec(self, prec: float) -> "TSeries":
        """Declare the stored expansion known (exactly zero beyond) up to ``prec``."""
        return self._like(self.coeffs, prec)

    def agrees(self, other, upto: float) -> bool:
        """Coefficients agree for every exponent below ``upto``."""
        other = self._coerce(other)
        if self.prec < upto or other.prec < upto:
            raise PrecisionError(f"cannot compare to order {upto}: known only to {min(self.prec, other.prec)}")
        keys = {k for k in set(self.coeffs) | set(other.coeffs) if k < upto}
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)

    # arithmetic ----------------------------------------------------------------

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()}, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = _min(self.prec, other.prec)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return self._like(out, prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        prec = _min(self.prec + other.order, other.prec + self.order)
        out: dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k < prec:
                    out[k] = out.get(k, 0) + a * b
        return self._like(out, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TSeries":
        """Multiply by ``pi^k``."""
        return self._like({i + k: c for i, c in self.coeffs.items()}, self.prec + k)

    def invert(self, prec: float | None = None) -> "TSeries":
        """Multiplicative inverse.

        An exact non-monomial series has an infinite expansion, so ``prec``
        (absolute, in units of ``pi``) must then bound the result.
        """
        if not self.coeffs:
            raise PrecisionError("cannot invert a series that is zero to the known precision")
        v = min(self.coeffs)
        c = self.coeffs[v]
        target = self.prec - 2 * v
        if prec is not None:
            target = _min(target, prec)
        if len(self.coeffs) == 1 and target == INF:
            return self._like({-v: 1 / c}, INF)
        if target == INF:
            raise PrecisionError("inverse of an exact non-monomial series needs a precision bound")
        # u = s / (c pi^v) = 1 + higher terms; 1/u by the recursion on coefficients
        u = {k - v: a / c for k, a in self.coeffs.items()}
        n = int(target + v)  # number of coefficients of 1/u needed
        inv = [Fraction(0)] * max(n, 0)
        if n > 0:
            inv[0] = Fraction(1)
        terms = sorted((k, a) for k, a in u.items() if k > 0)
        for m in range(1, n):
            acc = Fraction(0)
            for k, a in terms:
                if k > m:
                    break
                acc += a * inv[m - k]
            inv[m] = -acc
        return self._like({m - v: x / c for m, x in enumerate(inv) if x}, target)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.invert()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.invert() ** (-k)
        out = TSeries.const(1, self.e)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            other = self._coerce(other)
        return self.e == other.e and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.e, self.prec, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"TSeries({self})"

    def __str__(self):
        parts = [f"{c}*t^({k}/{self.e})" for k, c in sorted(self.coeffs.items())]
        if self.prec != INF:
            parts.append(f"O(t^({int(self.prec)}/{self.e}))")
        return " + ".join(parts) if parts else "0"


def parse_series(text: str) -> TSeries:
    """Inverse of ``str(series)``."""
    import re

    text = text.strip()
    if text == "0":
        return TSeries()
    coeffs: dict[int, Fraction] = {}
    prec: float = INF
    e = None
    for part in text.split(" + "):
        m = re.fullmatch(r"O\(t\^\((-?\d+)/(\d+)\)\)", part)
        if m:
            prec, e = int(m.group(1)), int(m.group(2))
            continue
        m = re.fullmatch(r"(-?\d+(?:/\d+)?)\*t\^\((-?\d+)/(\d+)\)", part)
        if not m:
            raise ValueError(f"cannot parse series term {part!r}")
        coeffs[int(m.group(2))] = Fraction(m.group(1))
        e = int(m.group(3))
    return TSeries(coeffs, prec, e or 1)
