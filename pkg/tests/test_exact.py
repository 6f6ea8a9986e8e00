import random

import pytest

from chiralva.exact import Poly, Q, binom


def test_binom_examples():
    assert binom(3, 2) == 3
    assert binom(-1, 2) == 1
    assert binom(-2, 3) == -4
    assert binom(0, 0) == 1
    for n in range(-6, 7):
        assert binom(n, 0) == 1


def test_binom_rejects_negative_lower_index():
    with pytest.raises(ValueError):
        binom(3, -1)


def test_pascal_identity():
    for n in range(-8, 9):
        for m in range(1, 9):
            assert binom(n, m) == binom(n - 1, m) + binom(n - 1, m - 1)


def test_binom_vanishes_between_zero_and_m():
    for m in range(1, 9):
        for n in range(0, m):
            assert binom(n, m) == 0


def test_vandermonde_composition_identity():
    # sum over i + k = i' of binom(m3, i) binom(k', k) = binom(m3 + k', i')
    for m3 in range(-5, 6):
        for kp in range(0, 6):
            for ip in range(0, 9):
                total = sum(
                    binom(m3, i) * binom(kp, ip - i)
                    for i in range(0, ip + 1)
                    if ip - i <= kp
                )
                assert total == binom(m3 + kp, ip), (m3, kp, ip)


def test_poly_derivative_examples():
    z = Poly.z()
    assert (z * z).derivative() == Poly((0, 2))
    assert Poly.const(5).derivative() == Poly()
    assert (z * z * z - z).derivative() == Poly((-1, 0, 3))


def test_poly_ring_examples():
    z = Poly.z()
    assert z * z == Poly((0, 0, 1))
    assert (z + Poly.const(1)) + Poly.const(-1) == z
    assert Poly() * (z + Poly.const(3)) == Poly()


def test_poly_derivation_product_rule():
    rng = random.Random(11)
    for _ in range(40):
        p = Poly([Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(0, 7))])
        q = Poly([Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(0, 7))])
        assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


def test_poly_normalization():
    assert Poly((1, 0, 0)).coeffs == (Q(1),)
    assert Poly((0, 0)).coeffs == ()
    assert Poly((0, 1)).degree == 1
    assert Poly().degree == -1
