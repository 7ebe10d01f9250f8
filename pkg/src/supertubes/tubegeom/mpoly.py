"""Sparse multivariate polynomials with rational coefficients.

Terms are stored as an exponent-tuple to coefficient map.  Differentiation
is exact; evaluation returns a Fraction at integer or rational points and a
float as soon as any coordinate is a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple, Union

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction, float]


class MultiPoly:
    """Polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Scalar] | None = None):
        if nvars < 1:
            raise ValueError("polynomial needs at least one variable")
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars or any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {exps!r} for {nvars} variables")
            c = Fraction(coeff)
            if c != 0:
                cleaned[key] = cleaned.get(key, Fraction(0)) + c
                if cleaned[key] == 0:
                    del cleaned[key]
        self.nvars = nvars
        self.terms = cleaned

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        """The monomial x_index (zero-based)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_same(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.nvars, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MultiPoly(self.nvars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, terms)

    def __rmul__(self, other: Scalar) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def partial(self, index: int) -> "MultiPoly":
        """Exact partial derivative with respect to x_index."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            terms[key] = terms.get(key, Fraction(0)) + coeff * e
        return MultiPoly(self.nvars, terms)

    def evaluate(self, point: Sequence[Scalar]) -> Union[Fraction, float]:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        total: Union[Fraction, float] = Fraction(0) if exact else 0.0
        for exps, coeff in self.terms.items():
            term: Union[Fraction, float] = coeff if exact else float(coeff)
            for x, e in zip(point, exps):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def __call__(self, point: Sequence[Scalar]) -> Union[Fraction, float]:
        return self.evaluate(point)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self.terms[exps]
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}"
                       for i, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.terms!r})"

    def to_json(self) -> dict:
        terms = [{"exps": list(e), "coeff": str(c)}
                 for e, c in sorted(self.terms.items())]
        return {"nvars": self.nvars, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        """Accepts either an integer "nvars" or a list of variable names "vars"."""
        if "nvars" in data:
            nvars = int(data["nvars"])
        elif "vars" in data:
            nvars = len(data["vars"])
        else:
            raise ValueError('polynomial JSON needs "nvars" or "vars"')
        terms: Dict[Exponents, Fraction] = {}
        for item in data.get("terms", []):
            exps = tuple(int(e) for e in item["exps"])
            coeff = Fraction(str(item["coeff"]))
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return cls(nvars, terms)
