"""Hypothesis strategies and sympy conversions shared by the tests."""
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from knsuper.core.coeffield import Q2, Scalar

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@st.composite
def scalars(draw, allow_denominator: bool = True) -> Scalar:
    """a + b*s + c*rt + d*s*rt + e*al, optionally over (rt + f)."""
    a, b, c, d, e = (draw(small_fractions) for _ in range(5))
    s, rt = Scalar.sqrt2(), Scalar.beta()
    x = (
        Scalar.from_rational(a)
        + Scalar.from_rational(b) * s
        + Scalar.from_rational(c) * rt
        + Scalar.from_rational(d) * s * rt
        + Scalar.from_rational(e) * Scalar.alpha()
    )
    if allow_denominator and draw(st.booleans()):
        f = draw(small_fractions.filter(lambda v: v != 0))
        x = x / (rt + Scalar.from_rational(f))
    return x


def q2_to_sympy(value: Q2) -> sympy.Expr:
    a = sympy.Rational(int(value.a.numerator), int(value.a.denominator))
    b = sympy.Rational(int(value.b.numerator), int(value.b.denominator))
    return a + b * sympy.sqrt(2)


def fraction_to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)
