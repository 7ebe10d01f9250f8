"""Exact point counts of affine hypersurfaces over finite field towers.

The counting kernel works in the discrete-log domain: each coordinate of a
candidate point is either the zero sentinel or the log of a nonzero field
element, monomials become integer additions modulo the group order, and
sums of monomials go through the Zech-logarithm table.  Everything is
vectorized over chunks of the point odometer, and chunks are independent,
so worker count never affects the result.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..tubegeom.mpoly import MultiPoly
from .finitefield import ExtField, is_prime

DEFAULT_BUDGET = 10 ** 9
COUNT_CHUNK = 1 << 20


class BudgetExceededError(ValueError):
    """Requested enumeration is larger than the configured budget."""

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class PrimePolyVariety:
    """Affine hypersurface: one polynomial over a prime field.

    Coefficients are stored as residues 0..p-1 with zero terms dropped.
    """

    def __init__(self, p: int, nvars: int, terms: Mapping[Tuple[int, ...], int]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.p = p
        self.nvars = nvars
        cleaned: Dict[Tuple[int, ...], int] = {}
        for exps, coeff in terms.items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars or any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {exps!r}")
            c = self._reduce(coeff)
            if c:
                cleaned[key] = (cleaned.get(key, 0) + c) % p
                if cleaned[key] == 0:
                    del cleaned[key]
        self.terms = cleaned

    def _reduce(self, coeff) -> int:
        frac = Fraction(coeff) if not isinstance(coeff, Fraction) else coeff
        if frac.denominator == 1:
            return frac.numerator % self.p
        try:
            inv = pow(frac.denominator, -1, self.p)
        except ValueError:
            raise ValueError(
                f"coefficient {frac} has a denominator divisible by {self.p}") from None
        return frac.numerator * inv % self.p

    @classmethod
    def from_polynomial(cls, p: int, poly: MultiPoly) -> "PrimePolyVariety":
        return cls(p, poly.nvars, poly.terms)

    @classmethod
    def from_json(cls, data: Mapping) -> "PrimePolyVariety":
        if "p" not in data:
            raise ValueError('variety JSON needs a prime "p"')
        poly = MultiPoly.from_json(data)
        return cls.from_polynomial(int(data["p"]), poly)

    def to_json(self) -> dict:
        terms = [{"exps": list(e), "coeff": c} for e, c in sorted(self.terms.items())]
        return {"p": self.p, "nvars": self.nvars, "terms": terms}

    def __repr__(self) -> str:
        return f"PrimePolyVariety(p={self.p}, nvars={self.nvars}, terms={self.terms!r})"


_FIELD_CACHE: Dict[Tuple[int, int, Tuple[int, ...]], ExtField] = {}


def _field_for(p: int, k: int, modulus: Optional[Sequence[int]]) -> ExtField:
    key = (p, k, tuple(int(c) for c in modulus) if modulus is not None else ())
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = ExtField(p, k, modulus=modulus)
        _FIELD_CACHE[key] = field
    return field


def _count_chunk_tables(field: ExtField, monomials, nvars: int,
                        start: int, stop: int) -> int:
    q = field.q
    order = max(q - 1, 1)
    sentinel = field.log_zero
    idx = np.arange(start, stop, dtype=np.int64)
    logs = []
    rest = idx
    for _ in range(nvars):
        code = rest % q
        rest = rest // q
        logs.append(np.where(code == 0, sentinel, code - 1))
    total = np.full(idx.shape, sentinel, dtype=np.int64)
    zech = field.zech_table
    cancel_at = field.minus_one_log
    for exps, coeff_log in monomials:
        term = np.full(idx.shape, coeff_log, dtype=np.int64)
        dead = np.zeros(idx.shape, dtype=bool)
        for j, e in enumerate(exps):
            if e == 0:
                continue
            lj = logs[j]
            zero_here = lj == sentinel
            dead |= zero_here
            term = (term + e * np.where(zero_here, 0, lj)) % order
        term = np.where(dead, sentinel, term)
        # Zech addition: g^a + g^b = g^(a + zech(b - a)), with zero masks
        a_zero = total == sentinel
        b_zero = term == sentinel
        diff = (term - total) % order
        summed = (total + zech[diff]) % order
        summed = np.where(diff == cancel_at, sentinel, summed)
        summed = np.where(a_zero, term, summed)
        summed = np.where(b_zero, np.where(a_zero, sentinel, total), summed)
        total = summed
    return int(np.count_nonzero(total == sentinel))


def _count_chunk_generic(field: ExtField, terms, nvars: int,
                         start: int, stop: int) -> int:
    q = field.q
    count = 0
    for idx in range(start, stop):
        coords = []
        rest = idx
        for _ in range(nvars):
            coords.append(rest % q)
            rest //= q
        acc = 0
        for exps, coeff in terms:
            term = coeff
            for j, e in enumerate(exps):
                if e and term:
                    term = field.mul(term, field.pow(coords[j], e))
            acc = field.add(acc, term)
        if acc == 0:
            count += 1
    return count


def count_points(
    variety: PrimePolyVariety,
    k: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    modulus: Optional[Sequence[int]] = None,
    force_generic: bool = False,
) -> int:
    """Number of solutions over the degree-k extension field.

    The answer is independent of the modulus choice; passing one explicitly
    exists for exactly that property test.  Enumerating takes q^nvars
    evaluations and refuses to start beyond the budget.
    """
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    q = variety.p ** k
    required = q ** variety.nvars
    if required > budget:
        raise BudgetExceededError(
            f"counting needs {required} evaluations, above the budget of {budget}; "
            f"raise the budget to at least {required} to run this case", required)
    if not variety.terms:
        return required  # the zero polynomial vanishes everywhere
    field = _field_for(variety.p, k, modulus)
    use_tables = field.has_tables and not force_generic
    if use_tables:
        monomials = [(exps, int(field.log_table[field.embed(c)]))
                     for exps, c in sorted(variety.terms.items())]

        def run(rng: Tuple[int, int]) -> int:
            return _count_chunk_tables(field, monomials, variety.nvars, rng[0], rng[1])
    else:
        terms = sorted(variety.terms.items())

        def run(rng: Tuple[int, int]) -> int:
            return _count_chunk_generic(field, terms, variety.nvars, rng[0], rng[1])

    ranges = [(s, min(s + COUNT_CHUNK, required)) for s in range(0, required, COUNT_CHUNK)]
    if workers <= 1 or len(ranges) <= 1:
        return sum(run(r) for r in ranges)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(run, ranges))
