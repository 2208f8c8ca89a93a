from fractions import Fraction

import numpy as np
import pytest

from exact_arith import (
    INFINITY,
    DivisionByZeroToPrecision,
    InsufficientPrecision,
    NotASquare,
    PrecisionExhausted,
    add,
    agrees,
    embed,
    eq_mod,
    hensel_sqrt,
    inv,
    is_rational_square,
    is_square_qp,
    legendre,
    mul,
    neg,
    parse_matrix,
    sub,
    to_fraction,
    unit_residue,
    vp,
)


def test_valuations():
    assert vp(12, 2) == 2
    assert vp(Fraction(5, 9), 3) == -2
    assert vp(-7, 7) == 1
    assert vp(0, 3) == INFINITY
    assert unit_residue(Fraction(13, 9), 3) == 1


def test_to_fraction_inputs():
    assert to_fraction("7/3") == Fraction(7, 3)
    assert to_fraction(-2) == Fraction(-2)
    with pytest.raises(ValueError):
        to_fraction(True)
    with pytest.raises(ValueError):
        to_fraction("")
    with pytest.raises(ValueError):
        to_fraction("seven")


def test_parse_matrix():
    m = parse_matrix("0,-1;1,7/3")
    assert m.shape == (2, 2)
    assert m.det() == 1
    with pytest.raises(ValueError):
        parse_matrix("1,2,3;4,5,6")


def test_rational_squares():
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(Fraction(13, 9))
    assert not is_rational_square(-4)


def test_precision_tracking():
    x, y = embed(1, 3, 5), embed(2, 3, 5)
    s = x + y
    assert s.val == 1
    assert s.absprec == 5
    assert s.to_rational() == 3


def test_zero_to_precision():
    z = embed(1, 3, 4) - embed(1, 3, 4)
    assert z.is_zero
    assert z.absprec == 4
    with pytest.raises(PrecisionExhausted):
        z.valuation()
    with pytest.raises(DivisionByZeroToPrecision):
        z.inverse()


def test_eq_mod():
    assert eq_mod(embed(10, 3, 5), embed(1, 3, 5), 2)
    assert not eq_mod(embed(10, 3, 5), embed(1, 3, 5), 3)
    with pytest.raises(InsufficientPrecision):
        eq_mod(embed(1, 3, 2), embed(1, 3, 5), 4)


def test_inverse():
    x = embed(Fraction(2, 5), 7, 10)
    assert eq_mod(x * x.inverse(), 1, 10)
    assert (x / x).to_rational() == 1


def test_squares():
    assert legendre(13, 3) == legendre(1, 3) == 1
    assert is_square_qp(13, 3)
    assert is_square_qp(Fraction(13, 9), 3)
    assert not is_square_qp(3, 3)
    assert not is_square_qp(2, 3)


def test_hensel_sqrt_selects_root():
    s = hensel_sqrt(embed(13, 3, 10), root=1)
    assert s.leading_digit() == 1
    assert eq_mod(s * s, 13, 10)
    t = hensel_sqrt(embed(13, 3, 10), root=2)
    assert t.leading_digit() == 2
    assert eq_mod(s + t, 0, 10)


def test_hensel_sqrt_default_is_smallest_digit():
    assert hensel_sqrt(embed(13, 3, 10)).leading_digit() == 1
    assert hensel_sqrt(embed(Fraction(13, 9), 3, 10)).val == -1


def test_hensel_sqrt_rejects_non_squares():
    with pytest.raises(NotASquare):
        hensel_sqrt(embed(2, 3, 5))
    with pytest.raises(NotASquare):
        hensel_sqrt(embed(3, 3, 5))


def test_embed_rejects_even_prime():
    with pytest.raises(ValueError):
        embed(1, 2, 5)
    with pytest.raises(ValueError):
        embed(1, 9, 5)


def _random_rational(rng):
    num = int(rng.integers(-60, 61))
    return Fraction(num, int(rng.integers(1, 40)))


def _random_unit(rng, p):
    while True:
        q = Fraction(int(rng.integers(1, 200)) * int(rng.choice([-1, 1])), int(rng.integers(1, 60)))
        if vp(q, p) == 0:
            return q


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_embed_is_a_ring_homomorphism(p):
    rng = np.random.default_rng(p)
    for _ in range(200):
        a, b = _random_rational(rng), _random_rational(rng)
        x, y = embed(a, p, 8), embed(b, p, 8)
        assert agrees(x + y, embed(a + b, p, 8))
        assert agrees(x - y, embed(a - b, p, 8))
        assert agrees(x * y, embed(a * b, p, 8))
        if a:
            assert agrees(x.inverse(), embed(1 / a, p, 8))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_precision_contract(p):
    rng = np.random.default_rng(100 + p)
    k = 6
    for _ in range(50):
        v = int(rng.integers(-2, 3))
        q = _random_unit(rng, p) * Fraction(p) ** v
        nearby = q + p ** k * int(rng.integers(1, 50))
        x, y = embed(q, p, 10), embed(nearby, p, 10)
        assert eq_mod(x, y, k)
        z = embed(_random_unit(rng, p), p, 10)
        assert eq_mod(x + z, y + z, k)
        if v == 0:
            assert eq_mod(x * z, y * z, k)
        assert eq_mod(x.inverse(), y.inverse(), k - 2 * v)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_hensel_sqrt_squares_back(p):
    rng = np.random.default_rng(200 + p)
    found = 0
    while found < 25:
        u = _random_unit(rng, p)
        if not is_square_qp(u, p):
            continue
        a = embed(u * Fraction(p) ** (2 * int(rng.integers(-2, 3))), p, 10)
        s = hensel_sqrt(a)
        assert agrees(s * s, a)
        found += 1


def test_named_field_operations():
    third, two = embed(Fraction(1, 3), 5, 8), embed(2, 5, 8)
    assert agrees(add(third, two), embed(Fraction(7, 3), 5, 8))
    assert agrees(sub(third, two), embed(Fraction(-5, 3), 5, 8))
    assert agrees(mul(embed(5, 5, 8), embed(Fraction(1, 25), 5, 8)), embed(Fraction(1, 5), 5, 8))
    assert agrees(neg(two), embed(-2, 5, 8))
    assert agrees(inv(embed(Fraction(5, 3), 5, 8)), embed(Fraction(3, 5), 5, 8))
