from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from knsuper.core.coeffield import (
    ONE,
    ZERO,
    Q2,
    Scalar,
    alpha_pow,
    render_q2,
    render_scalar,
    render_term,
    scalar_eval,
    to_rational,
)
from knsuper.core.errors import DivisionByZero, PoleAtSpecialization
from tests.strategies import q2_to_sympy, scalars, small_fractions

field_settings = settings(max_examples=40, deadline=None)


@field_settings
@given(scalars(), scalars())
def test_addition_and_multiplication_commute(x, y):
    assert x + y == y + x
    assert x * y == y * x


@field_settings
@given(scalars(), scalars(), scalars(allow_denominator=False))
def test_distributive_law(x, y, z):
    assert (x + y) * z == x * z + y * z


@field_settings
@given(scalars(), scalars(), scalars())
def test_multiplication_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@field_settings
@given(scalars())
def test_nonzero_elements_are_invertible(x):
    assume(not x.is_zero())
    assert x * x.inverse() == ONE
    assert x / x == ONE


@field_settings
@given(scalars())
def test_additive_inverse(x):
    assert (x - x).is_zero()
    assert x + (-x) == ZERO


def test_equal_values_hash_alike():
    a = (Scalar.beta() ** 2 - 1) / (Scalar.beta() - 1)
    b = Scalar.beta() + 1
    assert a == b
    assert hash(a) == hash(b)


def test_generators():
    assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar.from_int(2)
    assert Scalar.beta() * Scalar.beta() == Scalar.alpha()
    assert alpha_pow(3) == Scalar.alpha() ** 3
    assert alpha_pow(-1) * Scalar.alpha() == ONE


def test_integer_and_fraction_coercion():
    x = Scalar.alpha()
    assert x * 2 == x + x
    assert 1 - x == -(x - 1)
    assert x * Fraction(1, 2) == x / 2


def test_division_by_zero_is_reported():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(DivisionByZero):
        to_rational("3/0")


@pytest.mark.parametrize(
    "value, text",
    [
        (Scalar.from_int(-6), "-6"),
        (Scalar.from_rational("1/2"), "1/2"),
        (alpha_pow(2) * -48, "-48*al^2"),
        (Scalar.alpha(), "al"),
        (Scalar.beta(), "rt"),
        (Scalar.sqrt2(), "s"),
        (-Scalar.sqrt2(), "-s"),
        (Scalar.alpha() + 1, "al + 1"),
        (Scalar.alpha() ** 2 * 3 - Scalar.alpha() * 2, "3*al^2 - 2*al"),
        (ZERO, "0"),
    ],
)
def test_render_scalar(value, text):
    assert render_scalar(value) == text


def test_render_term_folds_signs():
    assert render_term(alpha_pow(2) * -2, "G*[-1]") == "-2*al^2*G*[-1]"
    assert render_term(Scalar.from_int(-1), "V[0]") == "-V[0]"
    assert render_term(ONE, "V[0]") == "V[0]"
    assert render_term(Scalar.alpha() + 1, "V[0]") == "(al + 1)*V[0]"


@field_settings
@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_q2_arithmetic_matches_sympy(a, b, c, d):
    x, y = Q2.of(a, b), Q2.of(c, d)
    expected = sympy.expand(q2_to_sympy(x) * q2_to_sympy(y))
    assert sympy.simplify(q2_to_sympy(x * y) - expected) == 0
    assume(not y.is_zero())
    expected = q2_to_sympy(x) / q2_to_sympy(y)
    assert sympy.simplify(q2_to_sympy(x / y) - expected) == 0


@field_settings
@given(scalars(allow_denominator=False), st.integers(min_value=1, max_value=4))
def test_specialisation_is_a_ring_map(x, beta):
    y = Scalar.alpha() * x + Scalar.sqrt2()
    lhs = scalar_eval(x * y, beta)
    rhs = scalar_eval(x, beta) * scalar_eval(y, beta)
    assert lhs == rhs


def test_specialisation_values():
    assert scalar_eval(Scalar.alpha(), 3) == Q2.of(9)
    assert scalar_eval(Scalar.sqrt2() / Scalar.beta(), "1/2") == Q2.of(0, 2)
    assert render_q2(scalar_eval(Scalar.alpha(), 3)) == "9"
    assert render_q2(Q2.of(0, -1)) == "-s"


def test_specialisation_at_a_pole():
    x = ONE / (Scalar.beta() - 1)
    with pytest.raises(PoleAtSpecialization):
        scalar_eval(x, 1)
