"""Characteristic functions of induced operators: quotients by an
invariant subspace and cohomology of a complex.

Both checks work with scalar operators (rational multiples of 1 in
each entry), where subspaces, kernels and images are ordinary rational
linear algebra.  Gradings are handled by keeping the even and odd parts
of every subspace separate throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from supertubes.superalg import linalg
from supertubes.superalg.charfn import CharFunction, char_function_exact
from supertubes.superalg.supermatrix import SuperDim, SuperMatrix

Vec = list[Fraction]


def _split_graded(dim: SuperDim, vectors: Sequence[Sequence]) -> tuple[list[Vec], list[Vec]]:
    """Split homogeneous vectors of Q^(p+q) into even and odd parts."""
    p, q = dim.p, dim.q
    even: list[Vec] = []
    odd: list[Vec] = []
    for v in vectors:
        v = [Fraction(x) for x in v]
        if len(v) != p + q:
            raise ValueError("vector length does not match the superspace")
        head, tail = v[:p], v[p:]
        head_zero = all(x == 0 for x in head)
        tail_zero = all(x == 0 for x in tail)
        if head_zero and tail_zero:
            raise ValueError("zero vector in basis")
        if not head_zero and not tail_zero:
            raise ValueError("basis vector is not homogeneous")
        if tail_zero:
            even.append(head)
        else:
            odd.append(tail)
    return even, odd


def _action_in_basis(amat: list[list[Fraction]], basis: list[Vec]) -> list[list[Fraction]]:
    """Matrix of the operator restricted to span(basis), in that basis."""
    if not basis:
        return []
    w = linalg.columns_matrix(basis)
    cols = []
    for v in basis:
        img = linalg.matvec(amat, v)
        x = linalg.solve(w, img)
        if x is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(x)
    k = len(basis)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _quotient_block(amat: list[list[Fraction]], inner: list[Vec], outer: list[Vec]) -> list[list[Fraction]]:
    """Induced operator on span(outer)/span(inner).

    inner must be a prefix of outer and invariant; the induced block is
    the lower-right corner of the action matrix in the outer basis.
    """
    c = _action_in_basis(amat, outer)
    u = len(inner)
    k = len(outer)
    for i in range(u, k):
        for j in range(u):
            if c[i][j] != 0:
                raise ValueError("inner subspace is not invariant")
    return [[c[i][j] for j in range(u, k)] for i in range(u, k)]


def _complete_within(prefix: list[Vec], spanning: list[Vec]) -> list[Vec]:
    """Extend prefix to a basis of span(spanning) using spanning vectors."""
    cur = [v[:] for v in prefix]
    target = linalg.rank(linalg.columns_matrix(spanning)) if spanning else 0
    for v in spanning:
        if len(cur) == target:
            break
        trial = cur + [[Fraction(x) for x in v]]
        if linalg.rank(linalg.columns_matrix(trial)) == len(trial):
            cur = trial
    if len(cur) != target:
        raise ValueError("could not complete the basis")
    return cur


def quotient_char_check(a: SuperMatrix, mbasis: Sequence[Sequence]) -> tuple[CharFunction, CharFunction, bool]:
    """Compare char functions of V/M against V + parity-reversed M.

    M must be spanned by homogeneous vectors and invariant under the
    (scalar) operator.  Returns (char on V/M, char on the direct sum
    with M parity-reversed, equality flag).  The two agree because the
    extra factors the reversed copy contributes to numerator and
    denominator cancel in the reduced fraction.
    """
    a00, a11 = a.scalar_blocks()
    even, odd = _split_graded(a.dim, mbasis)
    p, q = a.dim.p, a.dim.q
    for part in (even, odd):
        if part and linalg.rank(linalg.columns_matrix(part)) != len(part):
            raise ValueError("basis vectors are dependent")
    # action of the operator on M itself (also validates invariance)
    r_e = _action_in_basis(a00, even)
    r_o = _action_in_basis(a11, odd)
    # quotient blocks in a completed graded basis
    outer_e = linalg.extend_to_basis(even, p)
    outer_o = linalg.extend_to_basis(odd, q)
    q_e = _quotient_block(a00, even, outer_e)
    q_o = _quotient_block(a11, odd, outer_o)
    lhs = char_function_exact(SuperMatrix.from_scalar_blocks(q_e, q_o))
    big00 = _block_diag(a00, r_o)
    big11 = _block_diag(a11, r_e)
    rhs = char_function_exact(SuperMatrix.from_scalar_blocks(big00, big11))
    return lhs, rhs, lhs.value == rhs.value


def _block_diag(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    na, nb = len(a), len(b)
    out = [[Fraction(0)] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        for j in range(na):
            out[i][j] = Fraction(a[i][j])
    for i in range(nb):
        for j in range(nb):
            out[na + i][na + j] = Fraction(b[i][j])
    return out


def complex_cohomology_char(
    e: SuperDim, d: SuperMatrix, a: SuperMatrix
) -> tuple[CharFunction, CharFunction, bool]:
    """Characteristic function on cohomology versus on the whole space.

    d must be an odd scalar operator with d^2 = 0 and a an even scalar
    operator commuting with d.  Cohomology H = ker d / im d inherits a
    from the commutation relation; the two characteristic functions are
    returned with their equality flag.
    """
    if d.parity != 1:
        raise ValueError("differential must be odd")
    if a.parity != 0:
        raise ValueError("operator must be even")
    if d.dim != e or a.dim != e:
        raise ValueError("dimension mismatch with the ambient superspace")
    if not d.is_scalar() or not a.is_scalar():
        raise ValueError("scalar-bodied operators required")
    dsq = d @ d
    if any(not x.is_zero() for row in dsq.entries for x in row):
        raise ValueError("rejected: d^2 != 0")
    comm = (a @ d) - (d @ a)
    if any(not x.is_zero() for row in comm.entries for x in row):
        raise ValueError("rejected: [A,d] != 0")

    p, q = e.p, e.q
    body = lambda blk: [[Fraction(x.body) for x in row] for row in blk]
    d01 = body(d.m01)  # odd -> even component
    d10 = body(d.m10)  # even -> odd component
    a00, a11 = a.scalar_blocks()

    def homology_block(amat, ker_of, im_of):
        z = linalg.kernel_basis(ker_of) if ker_of else linalg.identity(len(amat))
        z = [v for v in z]
        b = linalg.column_space_basis(im_of) if im_of else []
        basis = _complete_within(b, b + z)
        return _quotient_block(amat, b, basis)

    # even part: kernel of d10, image of d01
    h_e = homology_block(a00, d10 if q else [], d01 if q else [])
    h_o = homology_block(a11, d01 if p else [], d10 if p else [])
    on_h = char_function_exact(SuperMatrix.from_scalar_blocks(h_e, h_o))
    on_e = char_function_exact(a)
    return on_h, on_e, on_h.value == on_e.value
