from fractions import Fraction

import pytest

from knsuper.core.coeffield import ONE, ZERO, Scalar, alpha_pow
from knsuper.core.densities import (
    FAMILIES,
    WEIGHT_FUNCTION,
    WEIGHT_VECTOR,
    BasisIndex,
    Density,
    HalfInt,
    basis,
    degree_spread,
    dens_dot,
    dens_poisson,
    expand_in_basis,
    expand_in_dual_basis,
    kn_pairing,
    window_indices,
)
from knsuper.core.errors import (
    InvalidFamilyForConfig,
    ParityMismatch,
    ResidualNonzero,
    WeightMismatch,
)
from knsuper.core.merofun import MeroFun, PunctureConfig

PRIMAL = {
    "ThreePoint": ("V", "phi", "G"),
    "TwoPoint": ("e", "b", "eps", "a"),
}


def test_half_integers():
    assert HalfInt.of("5/2") == HalfInt(5)
    assert HalfInt.of(-3) == HalfInt(-6)
    assert str(HalfInt(-3)) == "-3/2"
    assert str(HalfInt(4)) == "2"
    assert HalfInt(1) + HalfInt(1) == HalfInt(2)
    with pytest.raises(ParityMismatch):
        HalfInt.of("1/3")


def test_window_indices_are_ascending():
    assert [h.twice for h in window_indices("V", 2)] == [-4, -2, 0, 2, 4]
    assert [h.twice for h in window_indices("phi", 2)] == [-3, -1, 1, 3]


def test_basis_labels():
    assert BasisIndex.of("V*", -2) == BasisIndex("Vdual", HalfInt(-4))
    assert str(BasisIndex.of("phi*", "3/2")) == "phi*[3/2]"
    with pytest.raises(ParityMismatch):
        BasisIndex.of("V", "1/2")
    with pytest.raises(ParityMismatch):
        BasisIndex.of("phi", 1)
    with pytest.raises(InvalidFamilyForConfig):
        BasisIndex.of("W", 1)


def test_families_belong_to_one_configuration(cfg2, cfg3):
    with pytest.raises(InvalidFamilyForConfig):
        basis("V", 1, cfg2)
    with pytest.raises(InvalidFamilyForConfig):
        basis("e", 1, cfg3)


@pytest.mark.parametrize("cfg", [PunctureConfig.three_point(), PunctureConfig.two_point()], ids=["three", "two"])
def test_primal_and_dual_bases_are_biorthogonal(cfg):
    for family in PRIMAL[cfg.mode]:
        partner = FAMILIES[family].partner
        indices = list(window_indices(family, 8))
        for n in indices:
            for m in indices:
                value = kn_pairing(basis(partner, m, cfg), basis(family, n, cfg), cfg)
                assert value == (ONE if n == m else ZERO), (family, n, m)


def test_pairing_needs_complementary_weights(cfg3):
    with pytest.raises(WeightMismatch):
        kn_pairing(basis("V", 0, cfg3), basis("V", 0, cfg3), cfg3)


def test_three_point_basis_functions(cfg3):
    z = MeroFun.z_power(1, cfg3)
    p = z * z - MeroFun.constant(Scalar.alpha() ** 2, cfg3)
    assert basis("V", 0, cfg3).f == z
    assert basis("V", 1, cfg3).f == p
    assert basis("G", 3, cfg3).f == z * p
    assert basis("phi", "1/2", cfg3).f == z.scale(Scalar.sqrt2())
    assert basis("phi", "-1/2", cfg3).f == MeroFun.constant(Scalar.sqrt2(), cfg3)


def test_dot_and_poisson(cfg2):
    e1, em1 = basis("e", 1, cfg2), basis("e", -1, cfg2)
    assert dens_poisson(e1, em1) == basis("e", 0, cfg2).scale(Scalar.from_int(-2))
    product = dens_dot(basis("eps", 2, cfg2), basis("eps", -1, cfg2))
    assert product == basis("eps", 1, cfg2)


def test_poisson_weight_is_shifted(cfg3):
    x = dens_poisson(basis("phi", "1/2", cfg3), basis("phi", "-1/2", cfg3))
    assert x.weight == HalfInt(0)


def test_expansion_in_basis(cfg3):
    cube = Density(MeroFun.z_power(3, cfg3), WEIGHT_VECTOR)
    expansion = expand_in_basis(cube, 4, cfg3)
    assert expansion.exact
    assert expansion.as_dict() == {
        BasisIndex("V", HalfInt(4)): ONE,
        BasisIndex("V", HalfInt(0)): alpha_pow(2),
    }


def test_expansion_reports_the_residual(cfg3):
    cube = Density(MeroFun.z_power(3, cfg3), WEIGHT_VECTOR)
    expansion = expand_in_basis(cube, 1, cfg3)
    assert not expansion.exact
    with pytest.raises(ResidualNonzero):
        expansion.require_exact()


def test_expansion_in_dual_basis(cfg2):
    u = basis("edual", 3, cfg2).scale(Scalar.from_int(5))
    assert expand_in_dual_basis(u, 4, cfg2).as_dict() == {BasisIndex("edual", HalfInt(6)): Scalar.from_int(5)}


def test_two_point_spinor_flavours(cfg2):
    a = basis("a", "1/2", cfg2)
    assert expand_in_basis(a, 2, cfg2, "J").as_dict() == {BasisIndex("a", HalfInt(1)): ONE}
    as_b = expand_in_basis(a, 2, cfg2, "L").as_dict()
    assert as_b == {BasisIndex("b", HalfInt(1)): Scalar.sqrt2() / 2}


def test_no_basis_for_function_duals_of_spinors(cfg3):
    d = Density(MeroFun.constant(1, cfg3), HalfInt(6))
    with pytest.raises(WeightMismatch):
        expand_in_basis(d, 2, cfg3)


def test_locality_spread_of_the_bracket_like_product(cfg3):
    x, y = BasisIndex("V", HalfInt(2)), BasisIndex("V", HalfInt(4))
    low, high = degree_spread(x, y, dens_poisson, cfg3)
    assert Fraction(-2) <= low <= high <= Fraction(0)
    assert degree_spread(BasisIndex("G", HalfInt(0)), BasisIndex("G", HalfInt(0)), dens_dot, cfg3) == (0, 0)


def test_zero_density(cfg3):
    zero = Density.zero(WEIGHT_FUNCTION, cfg3)
    assert zero.is_zero()
    assert expand_in_basis(zero, 2, cfg3).coeffs == ()
