"""Tests for the scalar layer."""

import cmath
from fractions import Fraction

import pytest

from uqsl2_studio.algebra.scalars import (
    QFIELD, ExtendedWeight, format_scalar, generic_lambda_field, is_root_of_unity,
    parse_numeric, parse_scalar, q, q_factorial, q_int, q_int_lambda,
    q_int_lambda_numeric, root_of_unity, specialize,
)
from uqsl2_studio.core.types import DomainError, PoleError


def test_q_int_small_values():
    assert q_int(0) == 0
    assert q_int(1) == 1
    assert q_int(2) == q + q**-1
    assert q_int(3) == q**2 + 1 + q**-2
    assert q_int(-3) == -(q**2 + 1 + q**-2)


def test_q_factorial():
    assert q_factorial(0) == 1
    assert q_factorial(3) == q_int(2) * q_int(3)
    with pytest.raises(DomainError):
        q_factorial(-1)


def test_q_int_lambda():
    assert q_int_lambda(1, 1) == 1
    assert q_int_lambda(5, 1) == q_int(5)
    assert q_int_lambda(2, q**2) == 0
    assert q_int_lambda(2, -q**2) == 0
    assert q_int_lambda(1, q**3) == -(q + q**-1)
    with pytest.raises(DomainError):
        q_int_lambda(1, 0)


def test_q_int_lambda_generic_field():
    field, lam = generic_lambda_field()
    x = q_int_lambda(3, lam)
    assert x.field is lam.field
    assert x != 0


def test_q_int_lambda_numeric():
    assert q_int_lambda_numeric(2, 4.0, 2.0) == pytest.approx(0.0)
    assert q_int_lambda_numeric(1, 1.0, 2.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        q_int_lambda_numeric(1, 0, 2.0)


def test_format_and_parse():
    x = (q**2 + 1) / (2 * q - 3)
    text = format_scalar(x)
    assert parse_scalar(text) == x
    assert parse_scalar("{(q^2+1)/(q-1)}") == (q**2 + 1) / (q - 1)
    assert format_scalar(QFIELD.one) == "1"


def test_parse_scalar_rejects_garbage():
    with pytest.raises(DomainError):
        parse_scalar("q + x")
    with pytest.raises(DomainError):
        parse_scalar("(q + ")
    with pytest.raises(DomainError):
        parse_scalar("sqrt(q)")


def test_specialize():
    assert specialize(q_int(2), 2.0) == pytest.approx(2.5)
    assert specialize(QFIELD.one / (q - 1), 3.0) == pytest.approx(0.5)
    with pytest.raises(PoleError) as err:
        specialize(QFIELD.one / (q - 1), 1.0)
    assert err.value.factor == "q - 1"


def _random_scalar(rng, degree=6):
    def poly():
        return sum((rng.randint(-3, 3) * q**i for i in range(rng.randint(0, degree) + 1)), QFIELD.zero)

    den = poly()
    while not den:
        den = poly()
    return poly() / den


def test_specialize_is_multiplicative(rng):
    z = 0.7 + 0.4j
    for _ in range(100):
        x, y = _random_scalar(rng), _random_scalar(rng)
        assert specialize(x * y, z) == pytest.approx(specialize(x, z) * specialize(y, z), rel=1e-10, abs=1e-12)
        assert specialize(x + y, z) == pytest.approx(specialize(x, z) + specialize(y, z), rel=1e-10, abs=1e-12)


def test_parse_numeric():
    assert parse_numeric("1.1") == pytest.approx(1.1)
    assert parse_numeric("0.5+2j") == pytest.approx(0.5 + 2j)
    assert parse_numeric("exp(I)") == pytest.approx(cmath.exp(1j))
    with pytest.raises(DomainError):
        parse_numeric("not a number")


def test_roots_of_unity():
    for d in (3, 4, 5, 8, 12):
        assert is_root_of_unity(root_of_unity(d)) == d
    assert is_root_of_unity(1.1) is None
    assert is_root_of_unity(cmath.exp(1j)) is None


def test_extended_weight_exp_rule():
    assert ExtendedWeight(2, 0).exp_scalar() == q**2
    assert ExtendedWeight(2, 1).exp_scalar() == -q**2
    assert ExtendedWeight(-1, 4).exp_scalar() == q**-1
    assert ExtendedWeight(1, 2) + ExtendedWeight(1, -1) == ExtendedWeight(2, 1)
    with pytest.raises(DomainError):
        ExtendedWeight(0, Fraction(1, 2)).exp_parts()
    with pytest.raises(DomainError):
        ExtendedWeight(Fraction(1, 2), 0).exp_scalar()


def test_extended_weight_numeric():
    hbar = 0.3
    w = ExtendedWeight(2, 1)
    assert cmath.exp(hbar * w.numeric(hbar)) == pytest.approx(-cmath.exp(2 * hbar))


def test_extended_weight_exp_is_additive():
    weights = [ExtendedWeight(2, 1), ExtendedWeight(-3, 4), ExtendedWeight(0, -1), ExtendedWeight(5, 0)]
    for w in weights:
        for w2 in weights:
            assert (w + w2).exp_scalar() == w.exp_scalar() * w2.exp_scalar()
    hbar = 0.45
    w, w2 = ExtendedWeight(Fraction(1, 2), 3), ExtendedWeight(1, -2)
    lhs = cmath.exp(hbar * (w + w2).numeric(hbar))
    assert lhs == pytest.approx(cmath.exp(hbar * w.numeric(hbar)) * cmath.exp(hbar * w2.numeric(hbar)))
