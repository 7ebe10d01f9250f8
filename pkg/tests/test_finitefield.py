"""Finite field towers: irreducibles, table arithmetic, the generic fallback."""

import pytest

from supertubes.zeta import ExtField, find_irreducible, is_prime


def _poly_eval(coeffs, x, p):
    """Horner evaluation of an F_p polynomial given ascending coefficients."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _has_root(coeffs, p):
    return any(_poly_eval(coeffs, x, p) == 0 for x in range(p))


# ---------------------------------------------------------------- primality


def test_is_prime_small_and_carmichael():
    for n in (2, 3, 5, 7, 97, 65537):
        assert is_prime(n)
    # 561 and 1729 are Carmichael numbers, 91 = 7 * 13
    for n in (0, 1, 4, 91, 561, 1729):
        assert not is_prime(n)


# ---------------------------------------------------------------- irreducibles


def test_find_irreducible_degree_one():
    assert find_irreducible(2, 1) == (0, 1)
    assert find_irreducible(5, 1) == (0, 1)


def test_find_irreducible_known_smallest():
    # the search runs constant-term first, so the results are canonical
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(2, 3) == (1, 1, 0, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)


def test_found_quadratics_and_cubics_have_no_roots():
    # degree 2 and 3 polynomials are irreducible iff they have no roots
    for p in (2, 3, 5, 7, 11):
        for k in (2, 3):
            f = find_irreducible(p, k)
            assert len(f) == k + 1 and f[-1] == 1
            assert not _has_root(f, p)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(ValueError, match="not irreducible"):
        ExtField(2, 2, modulus=(1, 0, 1))


def test_composite_characteristic_rejected():
    with pytest.raises(ValueError, match="not prime"):
        ExtField(4, 1)
    with pytest.raises(ValueError, match="not prime"):
        ExtField(91, 1)


def test_wrong_degree_modulus_rejected():
    with pytest.raises(ValueError):
        ExtField(2, 3, modulus=(1, 1, 1))


# ---------------------------------------------------------------- small fields


def test_f4_arithmetic():
    # codes are base-2 digit strings: 2 = x, 3 = x + 1, modulus x^2 + x + 1
    f = ExtField(2, 2)
    assert f.q == 4
    assert f.add(2, 3) == 1
    assert f.add(2, 2) == 0
    assert f.mul(2, 2) == 3
    assert f.mul(2, 3) == 1
    assert f.inv(2) == 3
    assert f.inv(3) == 2


def test_f9_with_explicit_modulus():
    # modulus x^2 + 1, so code 3 = x squares to -1 = 2
    f = ExtField(3, 2, modulus=(1, 0, 1))
    assert f.mul(3, 3) == 2
    assert f.add(3, 3) == 6
    assert f.mul(f.inv(5), 5) == 1


def test_prime_field_matches_modular_arithmetic():
    f = ExtField(7, 1)
    for a in range(7):
        for b in range(7):
            assert f.add(a, b) == (a + b) % 7
            assert f.mul(a, b) == (a * b) % 7


# ---------------------------------------------------------------- field axioms


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2)])
def test_field_axioms_exhaustive(p, k):
    f = ExtField(p, k)
    elems = list(f.elements())
    assert len(elems) == p ** k
    for a in elems:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    # spot-check associativity and distributivity on a coarse grid
    grid = elems[:: max(1, len(elems) // 6)]
    for a in grid:
        for b in grid:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in grid:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_tables_agree_with_generic_arithmetic():
    tabled = ExtField(3, 3)
    plain = ExtField(3, 3, use_tables=False)
    assert tabled.has_tables and not plain.has_tables
    for a in tabled.elements():
        for b in tabled.elements():
            assert tabled.add(a, b) == plain.add(a, b)
            assert tabled.mul(a, b) == plain.mul(a, b)
        if a:
            assert tabled.inv(a) == plain.inv(a)
            assert tabled.pow(a, 5) == plain.pow(a, 5)


def test_tables_refused_beyond_limit():
    with pytest.raises(ValueError):
        ExtField(2, 17, use_tables=True)
    big = ExtField(2, 17)
    assert not big.has_tables
    # generic arithmetic still works in the large field
    assert big.mul(big.inv(12345), 12345) == 1


def test_generator_has_full_order():
    f = ExtField(2, 4)
    g = f.generator
    seen = set()
    x = 1
    for _ in range(f.q - 1):
        seen.add(x)
        x = f.mul(x, g)
    assert x == 1
    assert len(seen) == f.q - 1


# ---------------------------------------------------------------- powers


def test_pow_edges_and_fermat():
    f = ExtField(3, 2)
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    for a in f.elements():
        assert f.pow(a, 0) == 1
        assert f.pow(a, 1) == a
        if a:
            assert f.pow(a, f.q - 1) == 1
            assert f.pow(a, -1) == f.inv(a)
            assert f.pow(a, -3) == f.inv(f.pow(a, 3))


def test_zero_inverse_raises():
    f = ExtField(2, 2)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.pow(0, -1)


def test_frobenius_is_additive():
    # (a + b)^p = a^p + b^p in characteristic p
    for p, k in ((2, 3), (3, 2)):
        f = ExtField(p, k)
        for a in f.elements():
            for b in f.elements():
                assert f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p))


def test_embed_respects_prime_subfield():
    f = ExtField(5, 2)
    for a in range(5):
        for b in range(5):
            assert f.add(f.embed(a), f.embed(b)) == f.embed((a + b) % 5)
            assert f.mul(f.embed(a), f.embed(b)) == f.embed((a * b) % 5)
