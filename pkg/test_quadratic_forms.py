import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import factorint

from quadratic_forms import (
    REAL,
    DiagonalForm,
    NotDivisionAlgebra,
    Place,
    UnsupportedDimension,
    hilbert_symbol,
    is_division_algebra,
    is_isotropic_global,
    is_isotropic_local,
    lemma1_normalize,
    minus_one_in_D2,
    minus_one_obstruction,
    obstruction_family,
    pure_sqrt_minus_one,
    require_division,
    square_free_part,
)
from quaternion import QuaternionAlgebra

PLACES = [REAL, Place(2), Place(3), Place(5), Place(7)]


def _random_rational(rng):
    num = int(rng.integers(1, 200)) * (1 if rng.random() < 0.5 else -1)
    return Fraction(num, int(rng.integers(1, 50)))


def test_square_free_part():
    assert square_free_part(12) == 3
    assert square_free_part(Fraction(-8, 9)) == -2
    assert square_free_part(Fraction(13, 9)) == 13


def test_known_symbols():
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert hilbert_symbol(-1, -1, Place(2)) == -1
    assert hilbert_symbol(-1, -1, Place(3)) == 1
    assert hilbert_symbol(2, 3, Place(3)) == -1
    assert hilbert_symbol(5, 5, Place(5)) == 1


def test_hilbert_symmetry_and_bilinearity():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b, c = (_random_rational(rng) for _ in range(3))
        for v in PLACES:
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


def test_hilbert_product_formula():
    rng = np.random.default_rng(12)
    for _ in range(60):
        a, b = _random_rational(rng), _random_rational(rng)
        primes = {2}
        for x in (a, b):
            primes.update(factorint(abs(x.numerator)).keys())
            primes.update(factorint(x.denominator).keys())
        places = [REAL] + [Place(q) for q in primes]
        assert math.prod(hilbert_symbol(a, b, v) for v in places) == 1


def test_local_isotropy_known_forms():
    assert not is_isotropic_local(DiagonalForm((1, -2, 5, -10)), Place(5))
    assert not is_isotropic_local(DiagonalForm((1, 2, 5, 10)), REAL)
    assert is_isotropic_local(DiagonalForm((1, -1)), Place(3))
    assert not is_isotropic_local(DiagonalForm((7,)), Place(3))


def test_global_isotropy():
    result = is_isotropic_global(DiagonalForm((1, -2, 5, -10)))
    assert not result.isotropic
    assert Place(5) in result.failing_places
    assert is_isotropic_global(DiagonalForm((1, 1, -2))).isotropic


def test_dimension_limit():
    with pytest.raises(UnsupportedDimension):
        is_isotropic_local(DiagonalForm((1, 1, 1, 1, -1)), Place(3))


def test_minus_one_obstruction_certificate():
    result = minus_one_obstruction(-2, -5)
    assert not result.isotropic
    assert result.failing_places == [Place(5)]
    assert result.to_dict()["failing_places"] == ["5"]


def test_minus_one_in_D2():
    assert not minus_one_in_D2(-2, -5)
    assert minus_one_in_D2(-1, -1)
    assert minus_one_in_D2(-2, -1)
    assert minus_one_in_D2(-2, -3)


def test_split_algebra_is_rejected():
    with pytest.raises(NotDivisionAlgebra):
        require_division(1, 1)
    with pytest.raises(NotDivisionAlgebra):
        minus_one_in_D2(-1, 1)


def test_pure_sqrt_minus_one_squares_to_minus_one():
    algebra = QuaternionAlgebra(-2, -3)
    x2, x3, x4 = pure_sqrt_minus_one(-2, -3)
    q = algebra.element(0, x2, x3, x4)
    assert q * q == -algebra.one()


def test_pure_sqrt_minus_one_shortcuts():
    assert pure_sqrt_minus_one(-7, -1) == (0, 1, 0)
    assert pure_sqrt_minus_one(-1, -7) == (1, 0, 0)


def test_normalization_makes_alpha_a_square():
    assert lemma1_normalize(-1, -1, 3) == (-2, 1, 1)
    assert lemma1_normalize(-2, -5, 3) == (-2, 1, 0)
    with pytest.raises(ValueError):
        lemma1_normalize(-2, -5, 5)


def test_obstruction_family():
    family = obstruction_family(5, count=3)
    assert family[0] == (-2, -5)
    assert family[1] == (-3, -5)
    for alpha, beta in family:
        assert not minus_one_in_D2(alpha, beta)
    with pytest.raises(ValueError):
        obstruction_family(7)


def test_diagonal_form_parse():
    f = DiagonalForm.parse("1, -2, 5/3")
    assert f.coeffs == (1, -2, Fraction(5, 3))
    assert f.dim == 3
    assert str(f) == "<1, -2, 5/3>"
    with pytest.raises(ValueError):
        DiagonalForm.parse("1,0")
    with pytest.raises(ValueError):
        DiagonalForm.parse("1,x")


def test_isotropy_ignores_square_factors():
    rng = np.random.default_rng(13)
    for _ in range(40):
        coeffs = [_random_rational(rng) for _ in range(int(rng.integers(2, 5)))]
        i = int(rng.integers(0, len(coeffs)))
        s = _random_rational(rng)
        scaled = list(coeffs)
        scaled[i] *= s * s
        f, g = DiagonalForm(tuple(coeffs)), DiagonalForm(tuple(scaled))
        for v in PLACES:
            assert is_isotropic_local(f, v) == is_isotropic_local(g, v)
        assert is_isotropic_global(f).isotropic == is_isotropic_global(g).isotropic


def test_found_witnesses_agree_with_the_decision():
    found = 0
    for alpha in range(-8, 0):
        for beta in range(-8, 0):
            assert is_division_algebra(alpha, beta)
            coords = pure_sqrt_minus_one(alpha, beta, height=8)
            if coords is None:
                continue
            found += 1
            assert minus_one_in_D2(alpha, beta)
            q = QuaternionAlgebra(alpha, beta).element(0, *coords)
            assert q * q == -QuaternionAlgebra(alpha, beta).one()
    assert found > 0
