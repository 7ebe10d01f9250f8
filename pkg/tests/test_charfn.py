"""Characteristic functions Ber(1+tA): series, raw fraction, exact
fraction, dual expansion, resultant factorization, realization."""

import random
from fractions import Fraction

import pytest

from supertubes.exact import (
    PowerSeries,
    RationalFunction,
    UniPoly,
    linear_recurrence_check,
)
from supertubes.superalg import (
    GrassmannElement,
    SuperDim,
    SuperMatrix,
    ber_plus_minus,
    berezinian,
    char_dual_series,
    char_function_exact,
    char_function_raw,
    char_series,
    realize_operator,
)
from supertubes.superalg.charfn import GrassmannSeries

F = Fraction
G = GrassmannElement
NGEN = 4


def xi(*idx):
    return G.monomial(NGEN, idx)


def sc(c):
    return G.scalar(NGEN, c)


def diag_matrix(evens, odds, ngen=NGEN):
    p, q = len(evens), len(odds)
    a00 = [[evens[i] if i == j else 0 for j in range(p)] for i in range(p)]
    a11 = [[odds[i] if i == j else 0 for j in range(q)] for i in range(q)]
    return SuperMatrix.from_scalar_blocks(a00, a11, ngen=ngen)


def _random_even(rng):
    out = sc(rng.randint(-3, 3))
    for _ in range(rng.randint(0, 2)):
        i, j = sorted(rng.sample(range(1, NGEN + 1), 2))
        out = out + rng.randint(-2, 2) * xi(i, j)
    return out


def _random_odd(rng):
    out = G(NGEN)
    for _ in range(rng.randint(0, 2)):
        out = out + rng.randint(-2, 2) * xi(rng.randint(1, NGEN))
    return out


def _random_grassmann_matrix(rng, p, q):
    t = p + q
    entries = [
        [
            _random_even(rng) if (i < p) == (j < p) else _random_odd(rng)
            for j in range(t)
        ]
        for i in range(t)
    ]
    return SuperMatrix(SuperDim(p, q), entries)


def _random_scalar_matrix(rng, p, q, lo=-3, hi=3):
    a00 = [[rng.randint(lo, hi) for _ in range(p)] for _ in range(p)]
    a11 = [[rng.randint(lo, hi) for _ in range(q)] for _ in range(q)]
    return SuperMatrix.from_scalar_blocks(a00, a11)


# ---------------------------------------------------------------- char_series


def test_char_series_constant_term():
    rng = random.Random(7201)
    for _ in range(10):
        a = _random_grassmann_matrix(rng, 2, 1)
        s = char_series(a, 3)
        assert s.coefficient(0) == 1


def test_char_series_first_order_is_supertrace():
    from supertubes.superalg import supertrace

    rng = random.Random(7202)
    for _ in range(10):
        a = _random_grassmann_matrix(rng, 1, 2)
        s = char_series(a, 2)
        assert s.coefficient(1) == supertrace(a)


def test_char_series_diagonal_closed_form():
    lam, mu = F(4), F(3)
    a = diag_matrix([lam], [mu])
    s = char_series(a, 6)
    assert isinstance(s, PowerSeries)
    for k in range(1, 7):
        assert s.coefficient(k) == (-mu) ** (k - 1) * (lam - mu)


# ------------------------------------------------------------ raw fraction


def test_raw_identity_ratio_is_one():
    a = SuperMatrix.identity(SuperDim(2, 2), NGEN)
    raw = char_function_raw(a)
    assert raw.num == raw.den  # both are powers of (1+t)
    s = raw.series(5)
    assert s.coefficient(0) == 1
    for k in range(1, 6):
        assert s.coefficient(k) == 0


def test_raw_identity_unbalanced_dims():
    a = SuperMatrix.identity(SuperDim(2, 1), NGEN)
    s = char_function_raw(a).series(4)
    assert [s.coefficient(k) for k in range(5)] == [sc(1), sc(1), sc(0), sc(0), sc(0)]


def test_raw_reduces_to_exact_for_diagonal():
    a = diag_matrix([2], [3])
    raw = char_function_raw(a)
    r = RationalFunction(raw.num.scalar_unipoly(), raw.den.scalar_unipoly())
    assert r == RationalFunction.from_coeffs([1, 2], [1, 3])


def test_raw_degree_bounds_2x2():
    rng = random.Random(7203)
    for _ in range(20):
        a = _random_grassmann_matrix(rng, 2, 2)
        raw = char_function_raw(a)
        assert raw.num.degree <= 2 + 4
        assert raw.den.degree <= 2 + 4


def test_raw_series_matches_char_series():
    rng = random.Random(7204)
    for p, q in [(1, 1), (2, 1), (2, 2)]:
        for _ in range(10):
            a = _random_grassmann_matrix(rng, p, q)
            order = p + p * q + q
            raw = char_function_raw(a).series(order)
            direct = char_series(a, order)
            if isinstance(direct, PowerSeries):
                direct = GrassmannSeries(
                    NGEN, [sc(c) for c in direct.coeffs]
                )
            assert raw == direct


# ------------------------------------------------------------ exact fraction


def test_exact_diagonal():
    a = diag_matrix([2, 5], [3])
    cf = char_function_exact(a)
    assert cf.value == RationalFunction.from_coeffs([1, 7, 10], [1, 3])


def test_exact_nilpotent_even_block():
    a = SuperMatrix.from_scalar_blocks([[0, 1], [0, 0]], [])
    cf = char_function_exact(a)
    assert cf.value == RationalFunction.from_coeffs([1], [1])


def test_exact_reducible_fraction_cancels():
    a = diag_matrix([5], [5])
    cf = char_function_exact(a)
    assert cf.value == RationalFunction.from_coeffs([1], [1])


def test_exact_rejects_grassmann_entries():
    m = SuperMatrix(SuperDim(1, 1), [[sc(1) + xi(1, 2), xi(1)], [xi(2), sc(1)]])
    with pytest.raises(ValueError, match="char_function_raw"):
        char_function_exact(m)


def test_exact_matches_series_random():
    rng = random.Random(7205)
    for _ in range(30):
        p, q = rng.choice([(1, 1), (2, 1), (2, 2), (3, 1)])
        a = _random_scalar_matrix(rng, p, q)
        cf = char_function_exact(a)
        s = char_series(a, cf.series.order)
        assert s == cf.series


def test_recurrence_from_reduced_denominator():
    rng = random.Random(7206)
    done = 0
    while done < 30:
        p, q = rng.choice([(1, 1), (2, 1), (2, 2)])
        a = _random_scalar_matrix(rng, p, q)
        cf = char_function_exact(a)
        pd, qd = cf.value.degrees
        if qd < 1:
            continue
        seq = cf.value.series(pd + qd + 8).coeffs
        assert linear_recurrence_check(seq, cf.value.den, pd + 1)
        done += 1


# ---------------------------------------------------------------- dual series


def test_dual_series_diagonal_example():
    a = diag_matrix([2], [3])
    dual = char_dual_series(a, 3)
    assert dual == [(0, F(2, 3)), (-1, F(1, 9)), (-2, F(-1, 27))]


def test_dual_series_polynomial_case():
    a = diag_matrix([2, 5], [])
    dual = char_dual_series(a, 3)
    assert dual[0] == (2, F(10))  # top coefficient lambda1*lambda2 at t^2
    assert dual[1] == (1, F(7))
    assert dual[2] == (0, F(1))


def test_dual_series_matches_reversed_fraction():
    # independent oracle: reverse numerator and denominator, expand in s
    rng = random.Random(7207)
    done = 0
    while done < 25:
        p, q = rng.choice([(1, 1), (2, 1), (2, 2)])
        a = _random_scalar_matrix(rng, p, q)
        try:
            dual = char_dual_series(a, 5)
        except ValueError:
            continue  # body-singular draw
        cf = char_function_exact(a)
        num, den = cf.value.num, cf.value.den
        pd, qd = cf.value.degrees
        rev = RationalFunction(num.reversed_poly(pd), den.reversed_poly(qd))
        s = rev.series(4)
        # reduction drops lambda/mu pairs, so p-q = pd-qd and the dual
        # coefficient at index p-q-m is the s^m coefficient of rev(s)
        assert a.dim.p - a.dim.q == pd - qd
        for m, (idx, coeff) in enumerate(dual):
            assert idx == a.dim.p - a.dim.q - m
            assert coeff == s.coefficient(m)
        done += 1


def test_dual_gamma_recurrence_window():
    # gamma_k = c_k - c*_k obeys the denominator recurrence at every k
    rng = random.Random(7208)
    done = 0
    while done < 25:
        p, q = rng.choice([(1, 1), (2, 1), (2, 2)])
        a = _random_scalar_matrix(rng, p, q)
        try:
            dual = dict(char_dual_series(a, 12))
        except ValueError:
            continue
        cf = char_function_exact(a)
        qd = cf.value.degrees[1]
        if qd < 1:
            continue
        cs = cf.value.series(10)
        lo, hi = -4, 10
        gamma = []
        for k in range(lo, hi + 1):
            ck = cs.coefficient(k) if k >= 0 else F(0)
            cstar = dual.get(k, F(0))
            gamma.append(ck - cstar)
        assert linear_recurrence_check(gamma, cf.value.den, qd)
        done += 1


def test_dual_series_singular_rejected():
    a = diag_matrix([0], [3])
    with pytest.raises(ValueError, match="body-singular"):
        char_dual_series(a, 2)


# ------------------------------------------------------------- ber plus/minus


def test_ber_pm_two_one_diagonal():
    lam1, lam2, mu = 2, 5, 3
    cf = char_function_exact(diag_matrix([lam1, lam2], [mu]))
    bp, bm, res = ber_plus_minus(cf)
    assert bp == (lam1 - mu) * (lam2 - mu) * lam1 * lam2
    assert bm == (lam1 - mu) * (lam2 - mu) * mu
    assert bp / bm == F(lam1 * lam2, mu)


def test_ber_pm_one_one():
    cf = char_function_exact(diag_matrix([2], [3]))
    bp, bm, res = ber_plus_minus(cf)
    assert res == 1  # convention: resultant of (s+2, s+3) is mu - lambda
    assert (bp, bm) == (2, 3)
    assert bp / bm == berezinian(diag_matrix([2], [3])).as_fraction()


def test_ber_pm_purely_even():
    cf = char_function_exact(diag_matrix([2, 3], []))
    bp, bm, res = ber_plus_minus(cf)
    assert (bp, bm, res) == (6, 1, 1)


def test_ber_pm_trivial_function():
    bp, bm, res = ber_plus_minus(RationalFunction.from_coeffs([1], [1]))
    assert (bp, bm, res) == (1, 1, 1)


def test_ber_pm_ratio_is_berezinian_random():
    rng = random.Random(7209)
    for _ in range(40):
        p, q = rng.choice([(1, 1), (2, 1), (2, 2)])
        # diagonal plus strictly-triangular perturbation keeps eigenvalues
        d00 = [rng.choice([1, 2, 3, -1, -2, 5]) for _ in range(p)]
        d11 = [rng.choice([1, 2, 3, -1, -2, 5]) for _ in range(q)]
        a00 = [
            [d00[i] if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(p)]
            for i in range(p)
        ]
        a11 = [
            [d11[i] if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(q)]
            for i in range(q)
        ]
        a = SuperMatrix.from_scalar_blocks(a00, a11)
        bp, bm, _ = ber_plus_minus(char_function_exact(a))
        want = berezinian(a).as_fraction()
        assert bp / bm == want


# ---------------------------------------------------------------- realization


def test_realize_trivial():
    m = realize_operator(RationalFunction.from_coeffs([1], [1]))
    assert m.dim == SuperDim(0, 0)
    assert char_function_exact(m).value == RationalFunction.from_coeffs([1], [1])


def test_realize_one_one():
    r = RationalFunction.from_coeffs([1, 2], [1, 3])
    m = realize_operator(r)
    assert m.dim == SuperDim(1, 1)
    a00, a11 = m.scalar_blocks()
    assert a00 == [[F(2)]]
    assert a11 == [[F(3)]]
    assert char_function_exact(m).value == r


def test_realize_two_one():
    r = RationalFunction.from_coeffs([1, 2, 1], [1, -3])
    m = realize_operator(r)
    assert m.dim == SuperDim(2, 1)
    assert char_function_exact(m).value == r


def test_realize_rejects_wrong_normalization():
    with pytest.raises(ValueError):
        realize_operator(RationalFunction.from_coeffs([2, 1], [1, 1]))


def test_realize_random_round_trips():
    rng = random.Random(7210)
    for _ in range(100):
        num = UniPoly([1] + [rng.randint(-4, 4) for _ in range(rng.randint(0, 3))])
        den = UniPoly([1] + [rng.randint(-4, 4) for _ in range(rng.randint(0, 3))])
        r = RationalFunction(num, den)
        m = realize_operator(r)
        assert char_function_exact(m).value == r
        assert m.dim == SuperDim(r.degrees[0], r.degrees[1])
