import pytest

from knsuper.cli.evaluator import DensitySum, describe, evaluate, evaluate_connection
from knsuper.cli.grammar import parse
from knsuper.core.coeffield import ONE, Scalar, alpha_pow
from knsuper.core.densities import basis
from knsuper.core.errors import DivisionByZero, ExprTypeError, IncompatibleConfig
from knsuper.core.merofun import MeroFun


def run(text, cfg, connection=None):
    return evaluate(parse(text), cfg, connection)


def test_scalars(cfg3):
    assert run("2*al^2 - al*al", cfg3) == alpha_pow(2)
    assert run("1/2 + 1/2", cfg3) == ONE
    assert run("rt^2", cfg3) == Scalar.alpha()
    assert run("s*s", cfg3) == Scalar.from_int(2)


def test_cocycle_value(cfg3):
    assert run("c2(V[2], V[-2])", cfg3) == Scalar.from_int(-6)


def test_pairing_of_dual_bases(cfg3):
    assert run("pair(V*[2], V[2])", cfg3) == ONE
    assert run("pair(V*[2], V[0])", cfg3).is_zero()


def test_bracket_expands_into_basis_densities(cfg3):
    value = run("bracket(V[0], V[2])", cfg3)
    expected = basis("V", 2, cfg3).scale(Scalar.from_int(2)) + basis("V", 0, cfg3).scale(alpha_pow(2) * 2)
    assert isinstance(value, DensitySum)
    assert value.weights() == (-2,)
    assert value.component(-2) == expected


def test_linear_combinations(cfg3):
    value = run("V[1] + 2*V[1] - 3*V[1]", cfg3)
    assert value.is_zero()


def test_functions_multiply_densities(cfg3):
    value = run("z*V[0]", cfg3)
    assert value.component(-2).f == MeroFun.z_power(2, cfg3)


def test_function_division(cfg3):
    value = run("z^2 / (z^2 - al^2) - 1 - al^2*(z^2 - al^2)^(-1)", cfg3)
    assert value.is_zero()


def test_one_cocycle_of_the_antialgebra(cfg3):
    value = run("C1J(G[3]) + 3*G*[-3] + 2*al^2*G*[-1]", cfg3)
    assert value.is_zero()


def test_iota_lands_in_the_three_point_antialgebra(cfg2, cfg3):
    value = run("jprod(iota(a[1/2]), iota(a[-1/2]))", cfg3)
    assert value.component(0).f == MeroFun.constant(Scalar.from_rational("-1/2"), cfg3)
    with pytest.raises(IncompatibleConfig):
        run("iota(eps[0])", cfg2)
    with pytest.raises(ExprTypeError):
        run("iota(G[0])", cfg3)


def test_connection_enters_the_cocycle(cfg3):
    R = evaluate_connection("1", cfg3)
    assert run("c2(V[2], V[-2])", cfg3, R) == Scalar.from_int(-6) + alpha_pow(2) * 4


def test_type_errors(cfg3):
    with pytest.raises(ExprTypeError):
        run("V[0]*V[1]", cfg3)
    with pytest.raises(ExprTypeError):
        run("bracket(G[0], V[1])", cfg3)
    with pytest.raises(ExprTypeError):
        run("c2(V[1])", cfg3)
    with pytest.raises(ExprTypeError):
        run("pair(V[0], V[1])", cfg3)
    with pytest.raises(ExprTypeError):
        run("V[0]^2", cfg3)


def test_division_by_zero(cfg3):
    with pytest.raises(DivisionByZero):
        run("V[0] / 0", cfg3)
    with pytest.raises(DivisionByZero):
        run("1 / (z - z)", cfg3)


def test_connection_must_be_a_function(cfg3):
    with pytest.raises(ExprTypeError):
        evaluate_connection("V[0]", cfg3)
    assert evaluate_connection("0", cfg3).is_zero()


def test_describe(cfg3):
    assert describe(Scalar.from_int(1)) == "scalar"
    assert describe(run("V[0] + phi[1/2]", cfg3)) == "density of weight(s) -1, -1/2"
