"""Characteristic functions Ber(1 + tA) of operators on superspaces.

Three routes are implemented and cross-checked by the test suite:

- char_series: the coefficient sequence c_k (traces of exterior powers)
  through the supertrace-exponential identity; works for any entries.
- char_function_raw: the unreduced fraction straight from the block
  determinant formula, with degree bounds p+pq over q+pq; works for any
  entries but performs no cancellation.
- char_function_exact: the reduced degree-(p,q) fraction; only for
  matrices whose entries are rational multiples of 1, where gcd over Q
  is available.

The dual expansion at t = infinity, the resultant factorization into
BerPlus/BerMinus, and the converse construction (realize a rational
function as an operator) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from supertubes.exact.poly import UniPoly, resultant
from supertubes.exact.ratfn import RationalFunction
from supertubes.exact.series import PowerSeries, series_exp
from supertubes.superalg import linalg
from supertubes.superalg.grassmann import GrassmannElement
from supertubes.superalg.supermatrix import (
    SuperDim,
    SuperMatrix,
    berezinian,
    super_inverse,
    supertrace,
)


class GPoly:
    """Polynomial in t with Grassmann coefficients (index = power)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[GrassmannElement] = ()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: GrassmannElement) -> "GPoly":
        return cls(c.n, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> GrassmannElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GrassmannElement(self.n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "GPoly") -> "GPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return GPoly(self.n, [self.coefficient(k) + other.coefficient(k) for k in range(m)])

    def __sub__(self, other: "GPoly") -> "GPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return GPoly(self.n, [self.coefficient(k) - other.coefficient(k) for k in range(m)])

    def __neg__(self) -> "GPoly":
        return GPoly(self.n, [-c for c in self.coeffs])

    def __mul__(self, other: "GPoly") -> "GPoly":
        # coefficient products keep left-right order (entries may be odd)
        if self.is_zero() or other.is_zero():
            return GPoly(self.n)
        out = [GrassmannElement(self.n) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return GPoly(self.n, out)

    def power(self, k: int) -> "GPoly":
        acc = GPoly(self.n, [GrassmannElement.scalar(self.n, 1)])
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, GPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def scalar_unipoly(self) -> UniPoly:
        return UniPoly([c.as_fraction() for c in self.coeffs])

    def __repr__(self) -> str:
        return f"GPoly({[repr(c) for c in self.coeffs]})"


class GrassmannSeries:
    """Truncated power series with Grassmann coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[GrassmannElement]):
        self.n = n
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> GrassmannElement:
        return self.coeffs[k]

    def is_scalar(self) -> bool:
        return all(c.is_scalar() for c in self.coeffs)

    def scalar_power_series(self) -> PowerSeries:
        return PowerSeries([c.as_fraction() for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannSeries):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return f"GrassmannSeries({[repr(c) for c in self.coeffs]})"


@dataclass
class RawCharFraction:
    """Unreduced characteristic fraction with Grassmann coefficients."""

    num: GPoly
    den: GPoly
    dim: SuperDim

    def __post_init__(self):
        p, q = self.dim.p, self.dim.q
        if self.num.degree > p + p * q:
            raise ValueError("numerator degree exceeds p + pq")
        if self.den.degree > q + p * q:
            raise ValueError("denominator degree exceeds q + pq")

    def series(self, order: int) -> GrassmannSeries:
        """Expand num/den; the denominator has constant term 1."""
        n = self.num.n
        one = GrassmannElement.scalar(n, 1)
        if self.den.coefficient(0) != one:
            raise ValueError("denominator constant term must be 1")
        # invert the denominator as a series over the even subalgebra
        inv = [one]
        for k in range(1, order + 1):
            acc = GrassmannElement(n)
            for j in range(1, k + 1):
                acc = acc + self.den.coefficient(j) * inv[k - j]
            inv.append(-acc)
        out = []
        for k in range(order + 1):
            acc = GrassmannElement(n)
            for j in range(k + 1):
                acc = acc + self.num.coefficient(j) * inv[k - j]
            out.append(acc)
        return GrassmannSeries(n, out)


@dataclass
class CharFunction:
    """Reduced characteristic function: rational value plus expansion."""

    value: RationalFunction
    series: PowerSeries
    dual_series: list | None = None

    def __post_init__(self):
        if self.value.evaluate(Fraction(0)) != 1:
            raise ValueError("characteristic function must equal 1 at t=0")

    def to_json(self) -> dict:
        from supertubes.exact.poly import format_rational

        return {
            "num": [format_rational(c) for c in self.value.num.coeffs],
            "den": [format_rational(c) for c in self.value.den.coeffs],
            "series": [format_rational(c) for c in self.series.coeffs],
        }


# ---------------------------------------------------------------- char series


def char_series(a: SuperMatrix, order: int) -> Union[PowerSeries, GrassmannSeries]:
    """Coefficients c_k of Ber(1+tA) via Ber = exp(str log).

    log det of 1+tA turns into sum_k (-1)^(k+1) str(A^k) t^k / k; the
    exponential is taken coefficient-by-coefficient in the commutative
    even subalgebra.  Returns an exact PowerSeries when A is a scalar
    matrix, a GrassmannSeries otherwise.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    n = a.ngen
    straces: list[GrassmannElement] = []
    power = a
    for k in range(1, order + 1):
        if k == 1:
            power = a
        else:
            power = power @ a
        straces.append(supertrace(power))
    coeffs = [GrassmannElement.scalar(n, 1)]
    for k in range(1, order + 1):
        acc = GrassmannElement(n)
        for j in range(1, k + 1):
            sgn = 1 if (j + 1) % 2 == 0 else -1
            acc = acc + sgn * straces[j - 1] * coeffs[k - j]
        coeffs.append(acc * Fraction(1, k))
    if a.is_scalar() and all(c.exact for c in coeffs):
        return PowerSeries([c.as_fraction() for c in coeffs])
    return GrassmannSeries(n, coeffs)


# ---------------------------------------------------------------- raw fraction


def _gp_scalar(n: int, c) -> GPoly:
    return GPoly(n, [GrassmannElement.scalar(n, c)])


def _gp_matrix_one_plus_t(block: list[list[GrassmannElement]], n: int) -> list[list[GPoly]]:
    """Matrix 1 + t*B as a grid of Grassmann polynomials."""
    m = len(block)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            const = GrassmannElement.scalar(n, 1 if i == j else 0)
            row.append(GPoly(n, [const, block[i][j]]))
        out.append(row)
    return out


def _gp_det(mat: list[list[GPoly]], n: int) -> GPoly:
    """Cofactor-expansion determinant; valid because all entries here
    carry even Grassmann coefficients, which commute."""
    m = len(mat)
    if m == 0:
        return _gp_scalar(n, 1)
    if m == 1:
        return mat[0][0]
    acc = GPoly(n)
    for r in range(m):
        e = mat[r][0]
        if e.is_zero():
            continue
        minor = [row[1:] for i, row in enumerate(mat) if i != r]
        term = e * _gp_det(minor, n)
        acc = acc + (term if r % 2 == 0 else -term)
    return acc


def _gp_adjugate(mat: list[list[GPoly]], n: int) -> list[list[GPoly]]:
    m = len(mat)
    if m == 0:
        return []
    if m == 1:
        return [[_gp_scalar(n, 1)]]
    adj = [[GPoly(n) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [
                [mat[r][c] for c in range(m) if c != j]
                for r in range(m)
                if r != i
            ]
            cof = _gp_det(minor, n)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def _gp_matmul(a: list[list[GPoly]], b: list[list[GPoly]], n: int) -> list[list[GPoly]]:
    ra, rb = len(a), len(b)
    cb = len(b[0]) if rb else 0
    out = [[GPoly(n) for _ in range(cb)] for _ in range(ra)]
    for i in range(ra):
        for k in range(rb):
            if a[i][k].is_zero():
                continue
            for j in range(cb):
                out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def char_function_raw(a: SuperMatrix) -> RawCharFraction:
    """The block-determinant fraction before any cancellation.

    num = det((1+tA00) d(t) - t^2 A01 adj(1+tA11) A10) with
    d(t) = det(1+tA11) and den = d(t)^(p+1).  The degree bounds
    p+pq and q+pq are enforced on the result.
    """
    if a.parity != 0:
        raise ValueError("characteristic function needs an even matrix")
    n = a.ngen
    p, q = a.dim.p, a.dim.q
    one_plus_t11 = _gp_matrix_one_plus_t(a.m11, n)
    d = _gp_det(one_plus_t11, n)
    if p == 0:
        return RawCharFraction(_gp_scalar(n, 1), d, a.dim)
    one_plus_t00 = _gp_matrix_one_plus_t(a.m00, n)
    scaled = [[e * d for e in row] for row in one_plus_t00]
    if q > 0:
        adj = _gp_adjugate(one_plus_t11, n)
        a01 = [[GPoly(n, [a.m01[i][j]]) for j in range(q)] for i in range(p)]
        a10 = [[GPoly(n, [a.m10[i][j]]) for j in range(p)] for i in range(q)]
        corr = _gp_matmul(_gp_matmul(a01, adj, n), a10, n)
        t2 = GPoly(n, [GrassmannElement(n), GrassmannElement(n), GrassmannElement.scalar(n, 1)])
        scaled = [
            [scaled[i][j] - t2 * corr[i][j] for j in range(p)] for i in range(p)
        ]
    num = _gp_det(scaled, n)
    den = d.power(p + 1)
    return RawCharFraction(num, den, a.dim)


# ---------------------------------------------------------------- exact route


def _det_one_plus_t(block: list[list[Fraction]]) -> UniPoly:
    """det(1 + tB) for a rational matrix, via traces of powers."""
    m = len(block)
    if m == 0:
        return UniPoly([1])
    traces = []
    power = block
    for k in range(1, m + 1):
        if k > 1:
            power = linalg.matmul(power, block)
        traces.append(sum(power[i][i] for i in range(m)))
    s = PowerSeries(
        [Fraction(0)]
        + [Fraction((-1) ** (k + 1)) * traces[k - 1] / k for k in range(1, m + 1)]
    )
    return UniPoly(series_exp(s).coeffs)


def char_function_exact(a: SuperMatrix, series_order: int | None = None) -> CharFunction:
    """Reduced fraction det(1+tA00)/det(1+tA11) for scalar matrices."""
    if not a.is_scalar() or a.parity != 0:
        raise ValueError(
            "char_function_exact needs rational-multiple-of-1 entries; "
            "use char_function_raw or char_series for Grassmann entries"
        )
    a00, a11 = a.scalar_blocks()
    num = _det_one_plus_t(a00)
    den = _det_one_plus_t(a11)
    value = RationalFunction(num, den)
    if series_order is None:
        series_order = a.dim.p + a.dim.q + 4
    return CharFunction(value=value, series=value.series(series_order))


# ---------------------------------------------------------------- dual series


def char_dual_series(a: SuperMatrix, terms: int) -> list[tuple[int, object]]:
    """Laurent coefficients of Ber(1+tA) at t = infinity.

    Substituting t = 1/s gives s^(q-p) Ber(A) Ber(1 + s A^{-1}), so the
    expansion starts at index p-q with coefficient Ber(A), and the
    coefficient at index p-q-m is Ber(A) * c_m(A^{-1}).  Entries are
    (index, coefficient) pairs in descending index order; coefficients
    are Fractions for scalar matrices, GrassmannElements otherwise.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    inv = super_inverse(a)
    ber = berezinian(a)
    cs = char_series(inv, terms - 1)
    p, q = a.dim.p, a.dim.q
    out = []
    for m in range(terms):
        if isinstance(cs, PowerSeries):
            coeff_m = GrassmannElement.scalar(a.ngen, cs.coefficient(m))
        else:
            coeff_m = cs.coefficient(m)
        val = ber * coeff_m
        if val.is_scalar() and val.exact:
            out.append((p - q - m, val.as_fraction()))
        else:
            out.append((p - q - m, val))
    return out


# ---------------------------------------------------------------- Ber +/-


def ber_plus_minus(r) -> tuple[Fraction, Fraction, Fraction]:
    """Resultant factorization (BerPlus, BerMinus, Res) of a reduced fraction.

    With num = prod(1 + lambda_i t) and den = prod(1 + mu_j t), the
    root polynomials s^p' num(1/s) and s^q' den(1/s) are monic with
    roots -lambda_i and -mu_j; the resultant convention of
    exact.resultant then gives Res = prod_{i,j} (mu_j - lambda_i),
    which differs from prod(lambda - mu) by the global sign (-1)^(p'q').
    Returns (Res * prod lambda, Res * prod mu, Res).
    """
    rf: RationalFunction = r.value if isinstance(r, CharFunction) else r
    if rf.evaluate(Fraction(0)) != 1:
        raise ValueError("expects a characteristic function with value 1 at 0")
    pd, qd = rf.degrees
    prod_lambda = rf.num.coefficient(pd)
    prod_mu = rf.den.coefficient(qd)
    if prod_lambda == 0 or prod_mu == 0:
        raise ValueError("degenerate leading coefficients")
    froots = rf.num.reversed_poly(pd)
    groots = rf.den.reversed_poly(qd)
    res = resultant(froots, groots)
    return (res * prod_lambda, res * prod_mu, res)


# ---------------------------------------------------------------- realization


def _companion(g: UniPoly) -> list[list[Fraction]]:
    """Companion matrix of a monic polynomial g(s)."""
    m = g.degree
    if g.coefficient(m) != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    c = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m):
        c[i][i - 1] = Fraction(1)
    for i in range(m):
        c[i][m - 1] = -g.coefficient(i)
    return c


def realize_operator(r: RationalFunction, ngen: int = 0) -> SuperMatrix:
    """Operator on a p|q superspace whose characteristic function is r.

    The even block is the companion matrix of the polynomial whose
    roots are the negated reciprocal roots of the numerator (so that
    det(1 + t A00) = num), and likewise for the denominator on the odd
    block.  Requires r reduced with r(0) = 1.
    """
    if r.evaluate(Fraction(0)) != 1:
        raise ValueError("realize_operator needs r(0) = 1")
    blocks = []
    for poly in (r.num, r.den):
        d = poly.degree
        f = poly.reversed_poly(d)
        g = UniPoly([f.coefficient(k) * (-1) ** (d + k) for k in range(d + 1)])
        blocks.append(_companion(g))
    return SuperMatrix.from_scalar_blocks(blocks[0], blocks[1], ngen=ngen)
