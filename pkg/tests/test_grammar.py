from fractions import Fraction

import pytest

from knsuper.cli.expr import (
    Add,
    AlphaSym,
    BasisAtom,
    Call,
    Div,
    Mul,
    Neg,
    Pow,
    ScalarLit,
    Sub,
    ZVar,
    render_expr,
)
from knsuper.cli.grammar import parse
from knsuper.core.densities import HalfInt
from knsuper.core.errors import ParseError


def lit(n):
    return ScalarLit(Fraction(n))


def test_call_with_basis_atoms():
    assert parse("c2(V[2], V[-2])") == Call(
        "c2", (BasisAtom("V", HalfInt(4)), BasisAtom("V", HalfInt(-4)))
    )


@pytest.mark.parametrize(
    "text, family, twice",
    [
        ("V*[-4]", "Vdual", -8),
        ("phi[5/2]", "phi", 5),
        ("phi*[-1/2]", "phidual", -1),
        ("eps[0]", "eps", 0),
        ("e*[3]", "edual", 6),
        ("a[-3/2]", "a", -3),
        ("G*[1]", "Gdual", 2),
    ],
)
def test_basis_atoms(text, family, twice):
    assert parse(text) == BasisAtom(family, HalfInt(twice))


def test_precedence():
    assert parse("1 + 2*3") == Add(lit(1), Mul(lit(2), lit(3)))
    assert parse("1 - 2 - 3") == Sub(Sub(lit(1), lit(2)), lit(3))
    assert parse("2/3/4") == Div(Div(lit(2), lit(3)), lit(4))
    assert parse("-z^2") == Neg(Pow(ZVar(), 2))
    assert parse("2*al^2") == Mul(lit(2), Pow(AlphaSym(), 2))
    assert parse("(z - al)^(-1)") == Pow(Sub(ZVar(), AlphaSym()), -1)
    assert parse("z^-2") == Pow(ZVar(), -2)


def test_signed_coefficients_bind_to_the_literal():
    assert parse("-2*al^2*G*[-1]") == Mul(
        Mul(Neg(lit(2)), Pow(AlphaSym(), 2)), BasisAtom("Gdual", HalfInt(-2))
    )


@pytest.mark.parametrize(
    "text",
    [
        "c2(V[2], V[-2])",
        "-2*al^2*G*[-1]",
        "-3*G*[-3] - 2*al^2*G*[-1]",
        "(z^2 - al^2)^(-1)",
        "bracket(V[0], phi[1/2] + 2*phi[-1/2])",
        "1 / 2*rt*s",
        "pair(C1J(G[3]), G[3])",
        "iota(a[1/2])",
        "-(z + 1)",
    ],
)
def test_rendering_is_canonical(text):
    assert render_expr(parse(text)) == text


def test_rendering_parses_back_to_the_same_tree():
    tree = parse("1/2 - (3 - z)*z^(-1)")
    assert parse(render_expr(tree)) == tree


@pytest.mark.parametrize(
    "text, offset",
    [
        ("V[1/2]", 2),
        ("phi[1]", 4),
        ("V[1/0]", 2),
        ("V[3/4]", 2),
        ("foo(V[1])", 0),
        ("V[1] +", 6),
        ("V[1] ? 2", 5),
        ("c2(V[1],", 8),
    ],
)
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.exit_code == 2
    assert f"at byte {offset}" in str(info.value)


def test_unknown_function_lists_the_known_ones():
    with pytest.raises(ParseError) as info:
        parse("brackett(V[0], V[1])")
    assert "bracket" in info.value.expected
