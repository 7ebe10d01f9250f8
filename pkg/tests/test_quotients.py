"""Induced operators: quotient by an invariant subspace and cohomology."""

import random
from fractions import Fraction

import pytest

from supertubes.exact import RationalFunction
from supertubes.superalg import (
    SuperDim,
    SuperMatrix,
    char_function_exact,
    complex_cohomology_char,
    quotient_char_check,
)
from supertubes.superalg import linalg

F = Fraction


def _random_unimodular(rng, n):
    """Integer matrix with determinant +-1: product of unit triangulars."""
    lower = linalg.identity(n)
    upper = linalg.identity(n)
    for i in range(n):
        for j in range(n):
            if i > j:
                lower[i][j] = F(rng.randint(-2, 2))
            elif i < j:
                upper[i][j] = F(rng.randint(-2, 2))
    return linalg.matmul(lower, upper)


def _conjugate_blocks(rng, a00, a11):
    p, q = len(a00), len(a11)
    pe = _random_unimodular(rng, p)
    po = _random_unimodular(rng, q)
    c00 = linalg.matmul(linalg.matmul(pe, a00), linalg.inverse(pe)) if p else []
    c11 = linalg.matmul(linalg.matmul(po, a11), linalg.inverse(po)) if q else []
    return c00, c11, pe, po


# ------------------------------------------------------------ quotient check


def test_quotient_hand_example():
    # triangular action on a 2|0 space, quotient by the first axis
    a = SuperMatrix.from_scalar_blocks([[1, 1], [0, 2]], [])
    lhs, rhs, equal = quotient_char_check(a, [[1, 0]])
    assert equal
    assert lhs.value == RationalFunction.from_coeffs([1, 2], [1])
    assert rhs.value == RationalFunction.from_coeffs([1, 2], [1])


def test_quotient_zero_subspace():
    a = SuperMatrix.from_scalar_blocks([[2, 1], [0, 3]], [[5]])
    lhs, rhs, equal = quotient_char_check(a, [])
    assert equal
    assert lhs.value == char_function_exact(a).value


def test_quotient_full_space():
    a = SuperMatrix.from_scalar_blocks([[2, 0], [0, 3]], [[5]])
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    lhs, rhs, equal = quotient_char_check(a, basis)
    assert equal
    assert lhs.value == RationalFunction.from_coeffs([1], [1])


def test_quotient_not_invariant():
    a = SuperMatrix.from_scalar_blocks([[0, 1], [1, 0]], [])
    with pytest.raises(ValueError, match="not invariant"):
        quotient_char_check(a, [[1, 0]])


def test_quotient_not_homogeneous():
    a = SuperMatrix.from_scalar_blocks([[1, 0], [0, 1]], [[1]])
    with pytest.raises(ValueError, match="homogeneous"):
        quotient_char_check(a, [[1, 0, 1]])


def test_quotient_random_conjugated_triangular():
    rng = random.Random(7301)
    count = 0
    while count < 50:
        p, q = rng.choice([(2, 1), (2, 2), (3, 2)])
        r, s = rng.randint(0, p), rng.randint(0, q)
        # block structure: span(e_1..e_r) invariant in the even part
        a00 = [
            [
                F(rng.randint(-3, 3)) if (i < r or j >= r) else F(0)
                for j in range(p)
            ]
            for i in range(p)
        ]
        a11 = [
            [
                F(rng.randint(-3, 3)) if (i < s or j >= s) else F(0)
                for j in range(q)
            ]
            for i in range(q)
        ]
        c00, c11, pe, po = _conjugate_blocks(rng, a00, a11)
        a = SuperMatrix.from_scalar_blocks(c00, c11)
        mbasis = []
        for k in range(r):
            col = [pe[i][k] for i in range(p)]
            mbasis.append(col + [F(0)] * q)
        for k in range(s):
            col = [po[i][k] for i in range(q)]
            mbasis.append([F(0)] * p + col)
        lhs, rhs, equal = quotient_char_check(a, mbasis)
        assert equal, f"mismatch: {lhs.value} vs {rhs.value}"
        count += 1


# ---------------------------------------------------------------- cohomology


def _zero_odd(dim: SuperDim):
    p, q = dim.p, dim.q
    return SuperMatrix.from_scalar_blocks(
        [[0] * p for _ in range(p)],
        [[0] * q for _ in range(q)],
        parity=1,
        a01=[[0] * q for _ in range(p)],
        a10=[[0] * p for _ in range(q)],
    )


def test_cohomology_zero_differential():
    dim = SuperDim(2, 1)
    a = SuperMatrix.from_scalar_blocks([[1, 2], [0, 3]], [[4]])
    on_h, on_e, equal = complex_cohomology_char(dim, _zero_odd(dim), a)
    assert equal
    assert on_h.value == on_e.value == char_function_exact(a).value


def test_cohomology_exact_complex():
    dim = SuperDim(1, 1)
    d = SuperMatrix.from_scalar_blocks(
        [[0]], [[0]], parity=1, a01=[[0]], a10=[[1]]
    )
    a = SuperMatrix.from_scalar_blocks([[2]], [[2]])
    on_h, on_e, equal = complex_cohomology_char(dim, d, a)
    assert equal
    assert on_h.value == RationalFunction.from_coeffs([1], [1])
    assert on_e.value == RationalFunction.from_coeffs([1], [1])


def test_cohomology_one_dimensional():
    # 2|2 with one harmonic direction in each parity
    dim = SuperDim(2, 2)
    d = SuperMatrix.from_scalar_blocks(
        [[0, 0], [0, 0]],
        [[0, 0], [0, 0]],
        parity=1,
        a01=[[0, 0], [0, 0]],
        a10=[[0, 0], [0, 1]],  # second even direction maps to second odd
    )
    a = SuperMatrix.from_scalar_blocks([[2, 0], [0, 3]], [[5, 0], [0, 3]])
    on_h, on_e, equal = complex_cohomology_char(dim, d, a)
    assert equal
    assert on_h.value == RationalFunction.from_coeffs([1, 2], [1, 5])


def test_cohomology_rejects_bad_differential():
    dim = SuperDim(1, 1)
    d = SuperMatrix.from_scalar_blocks(
        [[0]], [[0]], parity=1, a01=[[1]], a10=[[1]]
    )
    a = SuperMatrix.from_scalar_blocks([[1]], [[1]])
    with pytest.raises(ValueError, match="d\\^2"):
        complex_cohomology_char(dim, d, a)


def test_cohomology_rejects_noncommuting():
    dim = SuperDim(1, 1)
    d = SuperMatrix.from_scalar_blocks(
        [[0]], [[0]], parity=1, a01=[[0]], a10=[[1]]
    )
    a = SuperMatrix.from_scalar_blocks([[1]], [[2]])
    with pytest.raises(ValueError, match="A,d"):
        complex_cohomology_char(dim, d, a)


def test_cohomology_random_split_constructions():
    rng = random.Random(7302)
    count = 0
    while count < 50:
        h_e, h_o = rng.randint(0, 2), rng.randint(0, 2)
        r, s = rng.randint(0, 2), rng.randint(0, 2)
        p = h_e + s + r
        q = h_o + r + s
        if p == 0 and q == 0:
            continue
        # split basis order, even: harmonics | im(d01) targets | coimage
        # odd: harmonics | im(d10) targets | coimage
        d10 = [[F(0)] * p for _ in range(q)]
        d01 = [[F(0)] * q for _ in range(p)]
        for k in range(r):
            d10[h_o + k][h_e + s + k] = F(1)
        for k in range(s):
            d01[h_e + k][h_o + r + k] = F(1)
        he_block = [[F(rng.randint(-3, 3)) for _ in range(h_e)] for _ in range(h_e)]
        ho_block = [[F(rng.randint(-3, 3)) for _ in range(h_o)] for _ in range(h_o)]
        t_block = [[F(rng.randint(-3, 3)) for _ in range(r)] for _ in range(r)]
        s_block = [[F(rng.randint(-3, 3)) for _ in range(s)] for _ in range(s)]
        a00 = _diag3(he_block, s_block, t_block)
        a11 = _diag3(ho_block, t_block, s_block)
        pe = _random_unimodular(rng, p)
        po = _random_unimodular(rng, q)
        pe_inv = linalg.inverse(pe)
        po_inv = linalg.inverse(po)
        a00c = linalg.matmul(linalg.matmul(pe, a00), pe_inv)
        a11c = linalg.matmul(linalg.matmul(po, a11), po_inv)
        d10c = linalg.matmul(linalg.matmul(po, d10), pe_inv) if p and q else d10
        d01c = linalg.matmul(linalg.matmul(pe, d01), po_inv) if p and q else d01
        dim = SuperDim(p, q)
        d = SuperMatrix.from_scalar_blocks(
            [[0] * p for _ in range(p)],
            [[0] * q for _ in range(q)],
            parity=1,
            a01=d01c,
            a10=d10c,
        )
        a = SuperMatrix.from_scalar_blocks(a00c, a11c)
        on_h, on_e, equal = complex_cohomology_char(dim, d, a)
        assert equal, f"mismatch: {on_h.value} vs {on_e.value}"
        # the harmonic blocks alone already give the cohomology function
        want = char_function_exact(
            SuperMatrix.from_scalar_blocks(he_block, ho_block)
        ).value
        assert on_h.value == want
        count += 1


def _diag3(a, b, c):
    n = len(a) + len(b) + len(c)
    out = [[F(0)] * n for _ in range(n)]
    offset = 0
    for blk in (a, b, c):
        for i in range(len(blk)):
            for j in range(len(blk)):
                out[offset + i][offset + j] = F(blk[i][j])
        offset += len(blk)
    return out
