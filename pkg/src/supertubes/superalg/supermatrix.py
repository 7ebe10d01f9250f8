"""Supermatrices over a Grassmann algebra and the Berezinian.

A matrix on a p|q superspace is stored as its full (p+q) x (p+q) entry
grid.  The parity flag says how entries must be graded: an even matrix
has even-homogeneous entries on the diagonal blocks and odd ones off
the diagonal; an odd matrix (needed for differentials) swaps that.
Zero entries are allowed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from supertubes.superalg.grassmann import GrassmannElement, grassmann_inverse


@dataclass(frozen=True)
class SuperDim:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("dimensions must be nonnegative")

    @property
    def total(self) -> int:
        return self.p + self.q

    def parity_of(self, index: int) -> int:
        """0 for the first p coordinates, 1 for the last q."""
        return 0 if index < self.p else 1


class SuperMatrix:
    __slots__ = ("dim", "entries", "parity", "ngen")

    def __init__(
        self,
        dim: SuperDim,
        entries: Sequence[Sequence[GrassmannElement]],
        parity: int = 0,
    ):
        t = dim.total
        if len(entries) != t or any(len(r) != t for r in entries):
            raise ValueError(f"expected a {t}x{t} entry grid")
        ns = {e.n for row in entries for e in row}
        if len(ns) > 1:
            raise ValueError("entries live in different Grassmann algebras")
        self.ngen = ns.pop() if ns else 0
        self.dim = dim
        self.parity = parity % 2
        self.entries = [list(r) for r in entries]
        for i in range(t):
            for j in range(t):
                e = self.entries[i][j]
                want = (dim.parity_of(i) + dim.parity_of(j) + self.parity) % 2
                ok = e.is_even() if want == 0 else e.is_odd()
                if not ok:
                    raise ValueError(
                        f"entry ({i},{j}) violates the parity grading of the matrix"
                    )

    # ------------------------------------------------------------ builders

    @classmethod
    def from_blocks(
        cls,
        dim: SuperDim,
        m00: Sequence[Sequence[GrassmannElement]],
        m01: Sequence[Sequence[GrassmannElement]],
        m10: Sequence[Sequence[GrassmannElement]],
        m11: Sequence[Sequence[GrassmannElement]],
        parity: int = 0,
    ) -> "SuperMatrix":
        p, q = dim.p, dim.q
        rows = []
        for i in range(p):
            rows.append(list(m00[i]) + list(m01[i]))
        for i in range(q):
            rows.append(list(m10[i]) + list(m11[i]))
        return cls(dim, rows, parity=parity)

    @classmethod
    def from_scalar_blocks(
        cls, a00, a11, ngen: int = 0, parity: int = 0, a01=None, a10=None
    ) -> "SuperMatrix":
        """Build from rational block matrices (even: diagonal blocks; an
        odd scalar matrix instead fills the off-diagonal blocks)."""
        p = len(a00)
        q = len(a11)
        dim = SuperDim(p, q)
        sc = lambda c: GrassmannElement.scalar(ngen, c)
        z = GrassmannElement(ngen)
        rows = [[z for _ in range(p + q)] for _ in range(p + q)]
        if parity == 0:
            for i in range(p):
                for j in range(p):
                    rows[i][j] = sc(a00[i][j])
            for i in range(q):
                for j in range(q):
                    rows[p + i][p + j] = sc(a11[i][j])
            if a01 is not None or a10 is not None:
                raise ValueError("scalar off-diagonal blocks are odd entries; use parity=1")
        else:
            a01 = a01 if a01 is not None else [[0] * q for _ in range(p)]
            a10 = a10 if a10 is not None else [[0] * p for _ in range(q)]
            for i in range(p):
                for j in range(q):
                    rows[i][p + j] = sc(a01[i][j])
            for i in range(q):
                for j in range(p):
                    rows[p + i][j] = sc(a10[i][j])
        return cls(dim, rows, parity=parity)

    @classmethod
    def identity(cls, dim: SuperDim, ngen: int = 0) -> "SuperMatrix":
        t = dim.total
        z = GrassmannElement(ngen)
        one = GrassmannElement.scalar(ngen, 1)
        return cls(dim, [[one if i == j else z for j in range(t)] for i in range(t)])

    # ------------------------------------------------------------ blocks

    def block(self, r: int, c: int) -> list[list[GrassmannElement]]:
        p, q = self.dim.p, self.dim.q
        r0, r1 = (0, p) if r == 0 else (p, p + q)
        c0, c1 = (0, p) if c == 0 else (p, p + q)
        return [row[c0:c1] for row in self.entries[r0:r1]]

    @property
    def m00(self):
        return self.block(0, 0)

    @property
    def m01(self):
        return self.block(0, 1)

    @property
    def m10(self):
        return self.block(1, 0)

    @property
    def m11(self):
        return self.block(1, 1)

    def is_scalar(self) -> bool:
        return all(e.is_scalar() for row in self.entries for e in row)

    def scalar_blocks(self) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
        if not self.is_scalar() or self.parity != 0:
            raise ValueError("matrix is not an even scalar matrix")
        body = lambda b: [[Fraction(e.body) for e in row] for row in b]
        return body(self.m00), body(self.m11)

    # ------------------------------------------------------------ arithmetic

    def _check_compat(self, other: "SuperMatrix"):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.ngen != other.ngen and self.dim.total > 0:
            raise ValueError("generator-count mismatch")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_compat(other)
        if self.parity != other.parity:
            raise ValueError("cannot add matrices of different parity")
        t = self.dim.total
        return SuperMatrix(
            self.dim,
            [[self.entries[i][j] + other.entries[i][j] for j in range(t)] for i in range(t)],
            parity=self.parity,
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def __neg__(self) -> "SuperMatrix":
        t = self.dim.total
        return SuperMatrix(
            self.dim,
            [[-self.entries[i][j] for j in range(t)] for i in range(t)],
            parity=self.parity,
        )

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_compat(other)
        t = self.dim.total
        z = GrassmannElement(self.ngen)
        out = [[z for _ in range(t)] for _ in range(t)]
        for i in range(t):
            for k in range(t):
                a = self.entries[i][k]
                if a.is_zero():
                    continue
                for j in range(t):
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    out[i][j] = out[i][j] + a * b
        return SuperMatrix(self.dim, out, parity=(self.parity + other.parity) % 2)

    def scale(self, c) -> "SuperMatrix":
        t = self.dim.total
        return SuperMatrix(
            self.dim,
            [[self.entries[i][j] * c for j in range(t)] for i in range(t)],
            parity=self.parity,
        )

    def power(self, k: int) -> "SuperMatrix":
        if k < 0:
            raise ValueError("negative power")
        acc = SuperMatrix.identity(self.dim, self.ngen)
        for _ in range(k):
            acc = acc @ self
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if self.dim != other.dim or self.parity != other.parity:
            return False
        t = self.dim.total
        return all(
            self.entries[i][j] == other.entries[i][j] for i in range(t) for j in range(t)
        )

    # ------------------------------------------------------------ json

    def to_json(self) -> dict:
        return {
            "p": self.dim.p,
            "q": self.dim.q,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict, ngen: int | None = None, parity: int = 0) -> "SuperMatrix":
        dim = SuperDim(int(data["p"]), int(data["q"]))
        raw = data["entries"]
        if ngen is None:
            ngen = 0
            for row in raw:
                for ent in row:
                    for item in ent:
                        if item["gens"]:
                            ngen = max(ngen, max(item["gens"]))
        entries = [
            [GrassmannElement.from_json(ngen, ent) for ent in row] for row in raw
        ]
        return cls(dim, entries, parity=parity)

    def __repr__(self) -> str:
        return f"SuperMatrix(p={self.dim.p}, q={self.dim.q}, parity={self.parity})"


# ---------------------------------------------------------------- determinants


def det_even(rows: Sequence[Sequence[GrassmannElement]], ngen: int | None = None) -> GrassmannElement:
    """Determinant of a matrix with entries in the even subalgebra.

    The even subalgebra is commutative, so the determinant is the usual
    one.  Elimination divides by invertible-body pivots; when a column
    has no such pivot (all entries nilpotent there) the determinant is
    finished off by division-free cofactor expansion along that column,
    which is still well-defined and exact.
    """
    n = len(rows)
    if ngen is None:
        ns = {e.n for row in rows for e in row}
        ngen = ns.pop() if ns else 0
    one = GrassmannElement.scalar(ngen, 1)
    if n == 0:
        return one
    for row in rows:
        for e in row:
            if not e.is_even():
                raise ValueError("det_even needs even entries")
    return _det_rec([list(r) for r in rows], ngen)


def _det_rec(a: list[list[GrassmannElement]], ngen: int) -> GrassmannElement:
    n = len(a)
    if n == 0:
        return GrassmannElement.scalar(ngen, 1)
    if n == 1:
        return a[0][0]
    piv = next((r for r in range(n) if a[r][0].body != 0), None)
    if piv is None:
        # nilpotent column: cofactor expansion, no divisions
        acc = GrassmannElement(ngen)
        for r in range(n):
            e = a[r][0]
            if e.is_zero():
                continue
            minor = [row[1:] for i, row in enumerate(a) if i != r]
            term = e * _det_rec(minor, ngen)
            acc = acc + (term if r % 2 == 0 else -term)
        return acc
    sign = 1
    if piv != 0:
        a[0], a[piv] = a[piv], a[0]
        sign = -1
    p = a[0][0]
    pinv = grassmann_inverse(p)
    reduced = []
    for r in range(1, n):
        f = a[r][0] * pinv
        reduced.append([a[r][c] - f * a[0][c] for c in range(1, n)])
    det = p * _det_rec(reduced, ngen)
    return det if sign == 1 else -det


def _invert_even_matrix(rows: list[list[GrassmannElement]], ngen: int) -> list[list[GrassmannElement]]:
    """Inverse of a matrix over the (commutative) even subalgebra."""
    n = len(rows)
    z = GrassmannElement(ngen)
    one = GrassmannElement.scalar(ngen, 1)
    aug = [list(rows[i]) + [one if j == i else z for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col].body != 0), None)
        if piv is None:
            raise ValueError("body-singular: no invertible pivot")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = grassmann_inverse(aug[col][col])
        aug[col] = [pinv * v for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def berezinian(m: SuperMatrix) -> GrassmannElement:
    """det(M00 - M01 M11^{-1} M10) / det(M11) for an even supermatrix."""
    if m.parity != 0:
        raise ValueError("Berezinian is defined for even matrices")
    ngen = m.ngen
    m11 = m.m11
    d11 = det_even(m11, ngen)
    if d11.body == 0:
        raise ValueError("Berezinian undefined: odd-odd block is body-singular")
    if m.dim.p == 0:
        return grassmann_inverse(d11)
    if m.dim.q == 0:
        return det_even(m.m00, ngen)
    inv11 = _invert_even_matrix([list(r) for r in m11], ngen)
    m01, m10 = m.m01, m.m10
    p, q = m.dim.p, m.dim.q
    schur = []
    for i in range(p):
        row = []
        for j in range(p):
            acc = m.m00[i][j]
            for a in range(q):
                for b in range(q):
                    acc = acc - m01[i][a] * inv11[a][b] * m10[b][j]
            row.append(acc)
        schur.append(row)
    return det_even(schur, ngen) * grassmann_inverse(d11)


def supertrace(m: SuperMatrix) -> GrassmannElement:
    """tr M00 - tr M11."""
    acc = GrassmannElement(m.ngen)
    for i in range(m.dim.p):
        acc = acc + m.entries[i][i]
    for i in range(m.dim.p, m.dim.total):
        acc = acc - m.entries[i][i]
    return acc


def super_inverse(m: SuperMatrix) -> SuperMatrix:
    """Inverse of an even supermatrix with invertible diagonal-block bodies.

    Entries of a supermatrix do not commute, so row reduction uses only
    left multiplications: each step is multiplication by an elementary
    matrix acting on the augmented system from the left.
    """
    if m.parity != 0:
        raise ValueError("inverse implemented for even matrices")
    t = m.dim.total
    ngen = m.ngen
    z = GrassmannElement(ngen)
    one = GrassmannElement.scalar(ngen, 1)
    aug = [
        list(m.entries[i]) + [one if j == i else z for j in range(t)]
        for i in range(t)
    ]
    for col in range(t):
        piv = next((r for r in range(col, t) if aug[r][col].body != 0), None)
        if piv is None:
            raise ValueError("body-singular: matrix is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = grassmann_inverse(aug[col][col])  # pivot is even: body plus even nilpotent
        aug[col] = [pinv * v for v in aug[col]]
        for r in range(t):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[col])]
    return SuperMatrix(m.dim, [row[t:] for row in aug], parity=0)
