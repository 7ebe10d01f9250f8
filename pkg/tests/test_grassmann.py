"""Grassmann algebra: products, inverses, square roots, Berezin integral."""

import random
from fractions import Fraction

import pytest

from supertubes.superalg import (
    GrassmannElement,
    berezin_integral,
    grassmann_inverse,
    grassmann_product,
    grassmann_sqrt,
)

F = Fraction
G = GrassmannElement


def xi(n, *idx):
    return G.monomial(n, idx)


def _random_element(rng, n, even_only=False):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        size = rng.choice([0, 1, 2, 2, 3]) if not even_only else rng.choice([0, 2, 2])
        gens = sorted(rng.sample(range(1, n + 1), min(size, n)))
        mask = 0
        for i in gens:
            mask |= 1 << (i - 1)
        terms[mask] = terms.get(mask, 0) + F(rng.randint(-4, 4))
    return G(n, terms)


def test_product_anticommutation():
    a, b = xi(2, 1), xi(2, 2)
    assert a * b == xi(2, 1, 2)
    assert b * a == -xi(2, 1, 2)


def test_product_nilpotence():
    a = xi(2, 1)
    assert (a * a).is_zero()


def test_product_derived_expansion():
    n = 2
    u = 1 + xi(n, 1, 2)
    v = 1 - xi(n, 1, 2)
    assert grassmann_product(u, v) == G.scalar(n, 1)


def test_product_mismatch_rejected():
    with pytest.raises(ValueError):
        xi(2, 1) * xi(3, 1)


def test_product_associative_random():
    rng = random.Random(7001)
    for _ in range(60):
        a = _random_element(rng, 4)
        b = _random_element(rng, 4)
        c = _random_element(rng, 4)
        assert (a * b) * c == a * (b * c)


def test_parity_queries():
    n = 3
    assert G.scalar(n, 2).parity() == 0
    assert xi(n, 1).parity() == 1
    assert xi(n, 1, 2).parity() == 0
    assert (1 + xi(n, 1)).parity() is None
    assert G(n).is_even() and G(n).is_odd()


def test_inverse_scalar():
    assert grassmann_inverse(G.scalar(2, 2)) == G.scalar(2, F(1, 2))


def test_inverse_nilpotent_correction():
    n = 2
    assert grassmann_inverse(1 + xi(n, 1, 2)) == 1 - xi(n, 1, 2)


def test_inverse_zero_body_rejected():
    with pytest.raises(ValueError, match="not invertible"):
        grassmann_inverse(xi(2, 1, 2))


def test_inverse_random_round_trip():
    rng = random.Random(7002)
    for _ in range(50):
        a = _random_element(rng, 6, even_only=True)
        a = a + rng.choice([1, 2, 3, -1])  # force a nonzero body
        if a.body == 0:
            continue
        assert a * grassmann_inverse(a) == 1


def test_sqrt_scalar():
    assert grassmann_sqrt(G.scalar(2, 4)) == G.scalar(2, 2)


def test_sqrt_nilpotent():
    n = 2
    r = grassmann_sqrt(1 + 2 * xi(n, 1, 2))
    assert r == 1 + xi(n, 1, 2)


def test_sqrt_non_square_body():
    with pytest.raises(ValueError, match="non-square body"):
        grassmann_sqrt(G.scalar(2, 2))
    with pytest.raises(ValueError, match="non-square body"):
        grassmann_sqrt(G.scalar(2, -4))


def test_sqrt_random_round_trip():
    rng = random.Random(7003)
    for _ in range(50):
        a = _random_element(rng, 6, even_only=True)
        sq = rng.choice([1, 4, F(9, 4), 16])
        a = a.nilpotent_part() + sq
        r = grassmann_sqrt(a)
        assert r * r == a


def test_sqrt_float_mode():
    import math

    a = G.scalar(2, 2.0, exact=False)
    r = grassmann_sqrt(a)
    assert abs(r.body - math.sqrt(2)) < 1e-12
    n = 2
    b = G(n, {0: 4.0, 0b11: 1.0}, exact=False)
    r = grassmann_sqrt(b)
    assert (r * r).allclose(b)


def test_berezin_single_generator():
    n = 2
    assert berezin_integral(xi(n, 1), [1]) == 1
    assert berezin_integral(xi(n, 2), [1]) == 0


def test_berezin_top_coefficient():
    n = 2
    f = 3 + 5 * xi(n, 1, 2)
    assert berezin_integral(f, [1, 2]) == 5


def test_berezin_sign_of_reordering():
    n = 3
    # x1 x3 = -x3 x1, so integrating out generator 1 leaves -x3
    assert berezin_integral(xi(n, 1, 3), [1]) == -xi(n, 3)


def test_berezin_linearity_random():
    rng = random.Random(7004)
    n = 4
    for _ in range(40):
        f = _random_element(rng, n)
        g = _random_element(rng, n)
        c = F(rng.randint(-3, 3))
        lhs = berezin_integral(f + g * c, [1, 2])
        rhs = berezin_integral(f, [1, 2]) + berezin_integral(g, [1, 2]) * c
        assert lhs == rhs


def test_berezin_full_integral_is_scalar():
    rng = random.Random(7005)
    n = 4
    for _ in range(40):
        f = _random_element(rng, n)
        g = _random_element(rng, n)
        total = berezin_integral(f * g, range(1, n + 1))
        assert total.is_scalar()


def test_json_round_trip():
    n = 3
    a = F(1, 3) + 2 * xi(n, 1, 3) - xi(n, 2)
    a = a + 0 * xi(n, 1)
    data = a.to_json()
    back = G.from_json(n, data)
    assert back == a
