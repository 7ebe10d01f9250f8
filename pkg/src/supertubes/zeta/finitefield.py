"""Finite field extensions with explicit polynomial moduli.

Elements of the degree-k extension of the prime field are encoded as
integers 0..p^k - 1 whose base-p digits are the coefficients of the
residue polynomial.  Fields small enough for table lookups (p^k <= 65536)
carry discrete-log and Zech-logarithm tables, which is what makes bulk
point counting vectorizable; larger fields fall back to direct polynomial
arithmetic.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

TABLE_LIMIT = 65536

Poly = Tuple[int, ...]  # coefficients ascending, reduced mod p, no trailing zeros


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for anything this module meets."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- polynomial helpers over the prime field -------------------------------


def _trim(c: Sequence[int]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a: Poly, m: Poly, p: int) -> Poly:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        a.pop()
    return _trim(a)


def _pmulmod(a: Poly, b: Poly, m: Poly, p: int) -> Poly:
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(base: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = tuple(c * inv_lead % p for c in a)
    return a


def _psub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _trim(out)


def _is_irreducible(f: Poly, p: int) -> bool:
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x: Poly = (0, 1)
    for i in range(1, k // 2 + 1):
        xpi = _ppowmod(x, p ** i, f, p)
        if len(_pgcd(_psub(xpi, x, p), f, p)) - 1 != 0:
            return False
    return _ppowmod(x, p ** k, f, p) == x


def find_irreducible(p: int, k: int) -> Poly:
    """Smallest monic irreducible of degree k over the prime field.

    Smallest under the odometer ordering with the constant term as the
    fastest digit, so the result is deterministic and reproducible.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    if k == 1:
        return (0, 1)
    for counter in range(p ** k):
        digits = []
        rest = counter
        for _ in range(k):
            digits.append(rest % p)
            rest //= p
        f = tuple(digits) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: an irreducible of every degree exists")


def _factor(n: int) -> List[int]:
    """Distinct prime factors by trial division; n stays small here."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtField:
    """The field with p^k elements, as residues modulo a chosen irreducible.

    Elements are integers whose base-p digits are residue-polynomial
    coefficients; 0 and 1 are the field's zero and one, and integers below
    p are the embedded prime field.
    """

    def __init__(self, p: int, k: int, modulus: Optional[Sequence[int]] = None,
                 use_tables: Optional[bool] = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            self.modulus: Poly = find_irreducible(p, k)
        else:
            self.modulus = _trim(int(c) % p for c in modulus)
            if len(self.modulus) - 1 != k or self.modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not _is_irreducible(self.modulus, p):
                raise ValueError("modulus is not irreducible")
        if use_tables is None:
            use_tables = self.q <= TABLE_LIMIT
        elif use_tables and self.q > TABLE_LIMIT:
            raise ValueError(f"tables are limited to order {TABLE_LIMIT}")
        self.has_tables = bool(use_tables)
        self.generator: Optional[int] = None
        if self.has_tables:
            self._build_tables()

    # -- encoding ----------------------------------------------------------

    def _decode(self, a: int) -> Poly:
        digits = []
        while a:
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def _encode(self, c: Poly) -> int:
        out = 0
        for digit in reversed(c):
            out = out * self.p + digit
        return out

    def elements(self) -> Iterable[int]:
        return range(self.q)

    def embed(self, residue: int) -> int:
        return residue % self.p

    # -- tables ------------------------------------------------------------

    def _mul_generic(self, a: int, b: int) -> int:
        return self._encode(_pmulmod(self._decode(a), self._decode(b), self.modulus, self.p))

    def _pow_generic(self, a: int, e: int) -> int:
        return self._encode(_ppowmod(self._decode(a), e, self.modulus, self.p))

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = _factor(order) if order > 1 else []
        gen = None
        for cand in range(2, q):
            if all(self._pow_generic(cand, order // f) != 1 for f in factors):
                gen = cand
                break
        if gen is None:
            gen = 1  # q = 2: the unit group is trivial
        self.generator = gen
        exp = np.empty(max(order, 1), dtype=np.int64)
        cur = 1
        for i in range(max(order, 1)):
            exp[i] = cur
            cur = self._mul_generic(cur, gen)
        log = np.full(q, order, dtype=np.int64)  # order doubles as the zero sentinel
        log[exp] = np.arange(max(order, 1), dtype=np.int64)
        # adding one only touches the constant digit
        residue = exp % self.p
        one_plus = exp - residue + (residue + 1) % self.p
        zech = log[one_plus]
        self.exp_table = exp
        self.log_table = log
        self.zech_table = zech
        self.log_zero = order
        self.minus_one_log = int(log[self.p - 1])

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out = 0
        shift = 1
        for _ in range(self.k):
            out += ((a + b) % self.p) * shift
            a //= self.p
            b //= self.p
            shift *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        shift = 1
        for _ in range(self.k):
            out += (-a % self.p) * shift
            a //= self.p
            shift *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            la = int(self.log_table[a]) + int(self.log_table[b])
            return int(self.exp_table[la % max(self.q - 1, 1)])
        return self._mul_generic(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.has_tables:
            order = max(self.q - 1, 1)
            return int(self.exp_table[(order - int(self.log_table[a])) % order])
        # extended Euclid on residue polynomials
        r0, r1 = self.modulus, self._decode(a)
        s0: Poly = ()
        s1: Poly = (1,)
        while r1:
            if len(r1) - 1 == 0:
                inv_c = pow(r1[0], -1, self.p)
                return self._encode(_pmod(tuple(c * inv_c % self.p for c in s1),
                                          self.modulus, self.p))
            quot = self._pdiv(r0, r1)
            r0, r1 = r1, _psub(r0, _pmul(quot, r1, self.p), self.p)
            s0, s1 = s1, _psub(s0, _pmul(quot, s1, self.p), self.p)
        raise ZeroDivisionError("element shares a factor with the modulus")

    def _pdiv(self, a: Poly, b: Poly) -> Poly:
        p = self.p
        a_list = list(a)
        quot = [0] * max(len(a) - len(b) + 1, 0)
        inv_lead = pow(b[-1], -1, p)
        while len(a_list) >= len(b) and a_list:
            if a_list[-1] == 0:
                a_list.pop()
                continue
            factor = a_list[-1] * inv_lead % p
            shift = len(a_list) - len(b)
            quot[shift] = factor
            for i, bi in enumerate(b):
                a_list[shift + i] = (a_list[shift + i] - factor * bi) % p
            a_list.pop()
        return _trim(quot)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.has_tables:
            order = max(self.q - 1, 1)
            return int(self.exp_table[(int(self.log_table[a]) * e) % order])
        return self._pow_generic(a, e)
