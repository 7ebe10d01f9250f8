"""Rational functions over Q and reconstruction from truncated series.

Normal form: numerator and denominator are coprime and the denominator
has constant term 1.  Functions with a pole at 0 are outside this
representation and are rejected at construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from supertubes.exact.poly import UniPoly
from supertubes.exact.series import PowerSeries

Scalar = Union[int, Fraction]


class PadeError(ValueError):
    """Raised when a series admits no rational form within degree bounds."""


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.coefficient(0) == 0:
            raise ValueError("denominator must be nonzero at 0")
        g = UniPoly.gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        c = den.coefficient(0)
        if c != 1:
            num = num * (1 / Fraction(c))
            den = den * (1 / Fraction(c))
        self.num = num
        self.den = den

    @classmethod
    def from_coeffs(cls, num: Sequence[Scalar], den: Sequence[Scalar]) -> "RationalFunction":
        return cls(UniPoly(num), UniPoly(den))

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        return cls(UniPoly([c]), UniPoly([1]))

    @property
    def degrees(self) -> tuple[int, int]:
        """(deg num, deg den) after reduction."""
        return (self.num.degree, self.den.degree)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if other.num.coefficient(0) == 0:
            raise ValueError("quotient would have a pole at 0")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def evaluate(self, x):
        return self.num(x) / self.den(x)

    def series(self, order: int) -> PowerSeries:
        num = PowerSeries.from_poly(self.num, order)
        den = PowerSeries.from_poly(self.den, order)
        return num * den.inverse()

    def log_derivative_series(self, order: int) -> PowerSeries:
        """Series of t * d/dt log(self); used for count prediction."""
        tdn = UniPoly([0, 1]) * self.num.derivative()
        tdd = UniPoly([0, 1]) * self.den.derivative()
        part1 = PowerSeries.from_poly(tdn, order) * self.series_inverse_num(order)
        part2 = PowerSeries.from_poly(tdd, order) * self.series_inverse_den(order)
        return part1 - part2

    def series_inverse_num(self, order: int) -> PowerSeries:
        if self.num.coefficient(0) == 0:
            raise ZeroDivisionError("numerator vanishes at 0")
        return PowerSeries.from_poly(self.num, order).inverse()

    def series_inverse_den(self, order: int) -> PowerSeries:
        return PowerSeries.from_poly(self.den, order).inverse()

    def __repr__(self) -> str:
        return f"({self.num}) / ({self.den})"


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve rows * x = rhs over Q.

    Returns a particular solution with free variables set to zero, or
    None when the system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [rows[i][:] + [rhs[i]] for i in range(m)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for pr, pc in pivots:
        x[pc] = a[pr][n]
    return x


def pade_reconstruct(s: PowerSeries, pmax: int, qmax: int) -> RationalFunction:
    """Reconstruct a rational function N/D from a truncated series.

    Requires s(0) = 1 and order >= pmax + qmax.  Searches denominator
    degrees 0..qmax ascending and returns the first consistent fit, so
    the result has minimal denominator degree and the search order is
    deterministic even on degenerate inputs.  Raises PadeError when the
    series is not rational within the bounds.
    """
    if pmax < 0 or qmax < 0:
        raise ValueError("degree bounds must be nonnegative")
    if s.coefficient(0) != 1:
        raise ValueError("pade_reconstruct expects a series with constant term 1")
    if s.order < pmax + qmax:
        raise ValueError(
            f"series order {s.order} below pmax+qmax = {pmax + qmax}"
        )
    c = s.coeffs

    def coeff(i: int) -> Fraction:
        return c[i] if 0 <= i < len(c) else Fraction(0)

    for qd in range(qmax + 1):
        ks = range(pmax + 1, pmax + qmax + 1)
        rows = [[coeff(k - j) for j in range(1, qd + 1)] for k in ks]
        rhs = [-coeff(k) for k in ks]
        sol = _solve_exact(rows, rhs) if qd > 0 else ([] if all(v == 0 for v in rhs) else None)
        if sol is None:
            continue
        den = UniPoly([Fraction(1)] + sol)
        # product (c * den), exact through pmax+qmax
        prod = [
            sum(den.coefficient(j) * coeff(k - j) for j in range(qd + 1))
            for k in range(pmax + qmax + 1)
        ]
        if any(v != 0 for v in prod[pmax + 1 :]):
            continue
        num = UniPoly(prod[: pmax + 1])
        return RationalFunction(num, den)
    raise PadeError(
        f"series is not rational within degree bounds ({pmax}, {qmax})"
    )


def linear_recurrence_check(seq: Sequence[Scalar], den: UniPoly, start: int) -> bool:
    """Check seq_k + b_1 seq_{k-1} + ... + b_q seq_{k-q} = 0 for all k >= start.

    den = 1 + b_1 t + ... + b_q t^q encodes the recurrence; its constant
    term must be 1.  Verification runs over start <= k < len(seq), with
    seq indices below zero contributing nothing (so start may be smaller
    than q, as happens when a recurrence kicks in right after a short
    numerator).
    """
    q = den.degree
    if q < 1:
        raise ValueError("recurrence denominator must have degree at least 1")
    if den.coefficient(0) != 1:
        raise ValueError("recurrence denominator must have constant term 1")
    if start < 0:
        raise ValueError("start must be nonnegative")
    if start + q > len(seq):
        raise ValueError("sequence too short for the requested start")
    vals = [Fraction(v) for v in seq]
    for k in range(start, len(vals)):
        acc = Fraction(0)
        for j in range(min(q, k) + 1):
            acc += den.coefficient(j) * vals[k - j]
        if acc != 0:
            return False
    return True
