"""Grassmann algebra on N anticommuting generators, N <= 16.

An element is a map from generator subsets (bitmasks) to coefficients.
The sign rule for multiplying basis monomials xi_X * xi_Y counts the
transpositions needed to merge the two sorted index lists; overlapping
subsets multiply to zero.

Two coefficient modes share the algebra: exact (Fraction) and float.
Mixing them in arithmetic demotes to float.  The float mode exists so
geometric densities with irrational bodies can still be pushed through
square roots; comparisons there use GR_TOL.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

MAX_GENERATORS = 16
GR_TOL = 1e-12

Coeff = Union[int, Fraction, float]


def _merge_sign(x: int, y: int) -> int:
    """Sign of xi_X * xi_Y = sign * xi_{X|Y} for disjoint masks."""
    inversions = 0
    rest = y
    while rest:
        low = rest & -rest
        b = low.bit_length() - 1
        inversions += (x >> (b + 1)).bit_count()
        rest ^= low
    return -1 if inversions & 1 else 1


class GrassmannElement:
    __slots__ = ("n", "terms", "exact")

    def __init__(self, n: int, terms: Mapping[int, Coeff] | None = None, exact: bool = True):
        if not 0 <= n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be 0..{MAX_GENERATORS}")
        self.n = n
        self.exact = exact
        clean: dict[int, Coeff] = {}
        if terms:
            top = (1 << n) - 1
            for mask, c in terms.items():
                if mask & ~top:
                    raise ValueError(f"mask {mask:b} outside {n} generators")
                c = Fraction(c) if exact else float(c)
                if c == 0:
                    continue
                clean[mask] = clean.get(mask, Fraction(0) if exact else 0.0) + c
            for mask in [m for m, c in clean.items() if c == 0]:
                del clean[mask]
        self.terms = clean

    # ------------------------------------------------------------ builders

    @classmethod
    def scalar(cls, n: int, c: Coeff, exact: bool = True) -> "GrassmannElement":
        return cls(n, {0: c}, exact=exact)

    @classmethod
    def generator(cls, n: int, i: int, exact: bool = True) -> "GrassmannElement":
        """The generator xi_i, 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return cls(n, {1 << (i - 1): 1}, exact=exact)

    @classmethod
    def monomial(cls, n: int, gens: Iterable[int], c: Coeff = 1, exact: bool = True) -> "GrassmannElement":
        """c * xi_{i1} ... xi_{ik} for strictly increasing 1-based indices."""
        mask = 0
        prev = 0
        for i in gens:
            if i <= prev:
                raise ValueError("monomial indices must be strictly increasing")
            if not 1 <= i <= n:
                raise ValueError(f"generator index {i} out of range 1..{n}")
            mask |= 1 << (i - 1)
            prev = i
        return cls(n, {mask: c}, exact=exact)

    # ------------------------------------------------------------ queries

    @property
    def body(self) -> Coeff:
        return self.terms.get(0, Fraction(0) if self.exact else 0.0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self.terms)

    def parity(self) -> int | None:
        """0 for even, 1 for odd homogeneous elements, None for zero or mixed."""
        ps = {m.bit_count() & 1 for m in self.terms}
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_even(self) -> bool:
        """Even-homogeneous or zero."""
        return all(m.bit_count() % 2 == 0 for m in self.terms)

    def is_odd(self) -> bool:
        """Odd-homogeneous or zero."""
        return all(m.bit_count() % 2 == 1 for m in self.terms)

    def nilpotent_part(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n, {m: c for m, c in self.terms.items() if m != 0}, exact=self.exact
        )

    def as_fraction(self) -> Fraction:
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        if not self.exact:
            raise ValueError("float-mode element has no exact scalar value")
        return Fraction(self.body)

    # ------------------------------------------------------------ arithmetic

    def _coerce(self, other) -> "GrassmannElement | None":
        if isinstance(other, GrassmannElement):
            if other.n != self.n:
                raise ValueError("generator-count mismatch")
            return other
        if isinstance(other, (int, Fraction, float)):
            exact = self.exact and not isinstance(other, float)
            return GrassmannElement.scalar(self.n, other, exact=exact)
        return None

    def __add__(self, other) -> "GrassmannElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        exact = self.exact and other.exact
        terms: dict[int, Coeff] = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return GrassmannElement(self.n, terms, exact=exact)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n, {m: -c for m, c in self.terms.items()}, exact=self.exact
        )

    def __sub__(self, other) -> "GrassmannElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GrassmannElement":
        return -(self - other)

    def __mul__(self, other) -> "GrassmannElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        exact = self.exact and other.exact
        out: dict[int, Coeff] = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                if mx & my:
                    continue
                s = _merge_sign(mx, my)
                m = mx | my
                out[m] = out.get(m, 0) + s * cx * cy
        return GrassmannElement(self.n, out, exact=exact)

    def __rmul__(self, other) -> "GrassmannElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, float, GrassmannElement)):
            diff = self - other
            return not diff.terms
        return NotImplemented

    def allclose(self, other, tol: float = GR_TOL) -> bool:
        diff = self - other
        return all(abs(c) <= tol for c in diff.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            gens = "".join(f"x{i + 1}" for i in range(self.n) if m >> i & 1)
            if m == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*{gens}")
        return " + ".join(parts)

    # ------------------------------------------------------------ json

    def to_json(self) -> list[dict]:
        out = []
        for m in sorted(self.terms):
            gens = [i + 1 for i in range(self.n) if m >> i & 1]
            c = self.terms[m]
            if self.exact:
                c = Fraction(c)
                coeff = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            else:
                coeff = repr(float(c))
            out.append({"gens": gens, "coeff": coeff})
        return out

    @classmethod
    def from_json(cls, n: int, data: list[dict], exact: bool = True) -> "GrassmannElement":
        terms: dict[int, Coeff] = {}
        for item in data:
            mask = 0
            for i in item["gens"]:
                mask |= 1 << (i - 1)
            c = Fraction(item["coeff"]) if exact else float(Fraction(item["coeff"]))
            terms[mask] = terms.get(mask, 0) + c
        return cls(n, terms, exact=exact)


def grassmann_product(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


def grassmann_inverse(a: GrassmannElement) -> GrassmannElement:
    """Inverse of an even element with nonzero body.

    With a = b(1 + u), u nilpotent, the Neumann series sum (-u)^k stops
    by itself: u has Grassmann degree >= 2, so k <= N/2 terms suffice.
    """
    if not a.is_even():
        raise ValueError("not invertible: element is not even")
    b = a.body
    if b == 0:
        raise ValueError("not invertible: zero body")
    binv = 1 / Fraction(b) if a.exact else 1.0 / b
    u = a.nilpotent_part() * binv
    acc = GrassmannElement.scalar(a.n, 1, exact=a.exact)
    term = acc
    for _ in range(a.n // 2):
        term = term * (-1) * u
        if term.is_zero():
            break
        acc = acc + term
    return acc * binv


def _sqrt_body_exact(b: Fraction) -> Fraction:
    if b < 0:
        raise ValueError("non-square body: negative")
    num, den = b.numerator, b.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError("non-square body")
    return Fraction(rn, rd)


def grassmann_sqrt(a: GrassmannElement) -> GrassmannElement:
    """Principal square root of an even element with positive body.

    Exact mode insists the body is a perfect square in Q; float mode
    takes math.sqrt.  The nilpotent part goes through the binomial
    series for (1+u)^(1/2), which terminates.
    """
    if not a.is_even():
        raise ValueError("square root needs an even element")
    b = a.body
    if a.exact:
        root = _sqrt_body_exact(Fraction(b))
        if root == 0 and not a.is_zero():
            raise ValueError("zero body with nilpotent remainder has no square root")
        if a.is_scalar():
            return GrassmannElement.scalar(a.n, root)
        binv = 1 / Fraction(b)
    else:
        if b <= 0:
            if b == 0 and a.is_zero():
                return GrassmannElement.scalar(a.n, 0.0, exact=False)
            raise ValueError("square root needs a positive body in float mode")
        root = math.sqrt(b)
        binv = 1.0 / b
    u = a.nilpotent_part() * binv
    acc = GrassmannElement.scalar(a.n, 1, exact=a.exact)
    term = GrassmannElement.scalar(a.n, 1, exact=a.exact)
    coeff = Fraction(1)
    for k in range(1, a.n // 2 + 1):
        coeff *= Fraction(1, 2) - (k - 1)
        coeff /= k
        term = term * u
        if term.is_zero():
            break
        acc = acc + term * (coeff if a.exact else float(coeff))
    return acc * root


def berezin_integral(f: GrassmannElement, variables: Iterable[int]) -> GrassmannElement:
    """Integrate over the listed generators (1-based indices).

    Convention: for ascending indices i1 < ... < ik,
    integral of xi_{i1}...xi_{ik} d xi_{ik} ... d xi_{i1} = 1,
    i.e. integration extracts the coefficient of the ascending top
    product of the integration variables, with the sign produced by
    first commuting those generators to the right of the others.
    """
    vmask = 0
    for i in variables:
        if not 1 <= i <= f.n:
            raise ValueError(f"integration variable {i} out of range 1..{f.n}")
        vmask |= 1 << (i - 1)
    out: dict[int, Coeff] = {}
    for m, c in f.terms.items():
        if m & vmask != vmask:
            continue
        rest = m & ~vmask
        # xi_m = sign * xi_rest * xi_vars (both ascending)
        sign = _merge_sign(rest, vmask)
        out[rest] = out.get(rest, 0) + sign * c
    return GrassmannElement(f.n, out, exact=f.exact)
