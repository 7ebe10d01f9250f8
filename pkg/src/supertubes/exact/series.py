"""Truncated power series over Q.

A series carries its truncation order explicitly: the stored tuple has
length order + 1.  Arithmetic between series of different orders
truncates to the smaller order, since nothing is known beyond it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from supertubes.exact.poly import UniPoly, format_rational

Scalar = Union[int, Fraction]


class PowerSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant term")
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1] + [0] * order)

    @classmethod
    def from_poly(cls, p: UniPoly, order: int) -> "PowerSeries":
        return cls([p.coefficient(k) for k in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)]
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs])

    def scale(self, c: Scalar) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries([c * a for a in self.coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return PowerSeries(out)

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out[k] = -inv0 * acc
        return PowerSeries(out)

    def __repr__(self) -> str:
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"PowerSeries([{body}])"


def series_exp(s: PowerSeries) -> PowerSeries:
    """exp of a series with zero constant term.

    Uses the derivative recurrence k e_k = sum_{j=1}^{k} j s_j e_{k-j},
    which keeps everything in Q (no factorial denominators appear until
    they must).
    """
    if s.coeffs[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    n = s.order
    e = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += j * s.coeffs[j] * e[k - j]
        e[k] = acc / k
    return PowerSeries(e)


def series_log(s: PowerSeries) -> PowerSeries:
    """log of a series with constant term 1; inverse of series_exp."""
    if s.coeffs[0] != 1:
        raise ValueError("series_log needs constant term 1")
    n = s.order
    l = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k):
            acc += j * l[j] * s.coeffs[k - j]
        l[k] = s.coeffs[k] - acc / k
    return PowerSeries(l)
