import itertools

import pytest

from knsuper.algebras.antijordan import (
    IOTA_GENERATORS,
    DualJordanElement,
    JordanElement,
    ak1_product,
    check_antialgebra_axioms,
    check_coadjoint_duality_J,
    check_onecocycle_J,
    closed_form_C1_J,
    coad_J,
    iota,
    jordan_labels,
    jproduct,
    onecocycle_J,
    table_C1_J,
)
from knsuper.algebras.liesuper import ProjectiveConnection
from knsuper.core.coeffield import Scalar, alpha_pow
from knsuper.core.densities import BasisIndex, basis, expand_in_dual_basis, window_indices
from knsuper.core.errors import IncompatibleConfig, InvalidFamilyForConfig, UnknownGenerator
from knsuper.core.merofun import MeroFun, PunctureConfig


def element(family, index, cfg):
    return JordanElement.of_basis(BasisIndex.of(family, index), cfg)


def _sample(cfg):
    even, odd = ("G", "phi") if cfg.mode == "ThreePoint" else ("eps", "a")
    labels = [(even, n) for n in (-1, 0, 3)] + [(odd, i) for i in ("-1/2", "3/2")]
    return [element(f, i, cfg) for f, i in labels]


def test_one_cocycle_of_G3(cfg3):
    image = onecocycle_J(element("G", 3, cfg3))
    assert image.odd.is_zero()
    coeffs = expand_in_dual_basis(image.even, 6, cfg3, "J").require_exact().as_dict()
    assert coeffs == {
        BasisIndex.of("G*", -3): Scalar.from_int(-3),
        BasisIndex.of("G*", -1): alpha_pow(2) * -2,
    }
    assert closed_form_C1_J(BasisIndex.of("G", 3)) == coeffs


def test_tables_match_closed_forms(cfg2, cfg3):
    table_C1_J(3, cfg3)
    table_C1_J(3, cfg2)


def test_full_one_cocycle_table(cfg3):
    table = table_C1_J(8, cfg3)
    assert table.coeffs(BasisIndex.of("G", 3)) == {
        BasisIndex.of("G*", -3): Scalar.from_int(-3),
        BasisIndex.of("G*", -1): alpha_pow(2) * -2,
    }


def test_closed_form_rejects_lie_labels():
    with pytest.raises(InvalidFamilyForConfig):
        closed_form_C1_J(BasisIndex.of("V", 0))


def test_function_product_is_multiplication(cfg3):
    product = jproduct(element("G", 1, cfg3), element("G", 1, cfg3))
    z2 = MeroFun.z_power(2, cfg3)
    assert product.even.f == z2
    assert product.odd.is_zero()


@pytest.mark.parametrize("cfg", [PunctureConfig.three_point(), PunctureConfig.two_point()], ids=["three", "two"])
def test_antialgebra_axioms(cfg):
    sample = _sample(cfg)
    assert check_antialgebra_axioms(itertools.product(sample, repeat=3))


@pytest.mark.parametrize(
    "cfg, window",
    [(PunctureConfig.three_point(), 4), (PunctureConfig.two_point(), 6)],
    ids=["three", "two"],
)
def test_antialgebra_axioms_on_every_basis_triple(cfg, window):
    elements = [JordanElement.of_basis(label, cfg) for label in jordan_labels(window, cfg)]
    assert check_antialgebra_axioms(itertools.product(elements, repeat=3))


@pytest.mark.parametrize("cfg", [PunctureConfig.three_point(), PunctureConfig.two_point()], ids=["three", "two"])
def test_one_cocycle_identity(cfg):
    sample = _sample(cfg)
    z = MeroFun.z_power(1, cfg)
    for R in (None, ProjectiveConnection(z), ProjectiveConnection(MeroFun.constant(1, cfg))):
        for x, y in itertools.product(sample, repeat=2):
            assert check_onecocycle_J(x, y, R)


def test_coadjoint_duality(cfg3):
    sample = _sample(cfg3)
    duals = [
        DualJordanElement.from_density(basis("Gdual", 1, cfg3)),
        DualJordanElement.from_density(basis("phidual", "1/2", cfg3)),
        onecocycle_J(element("phi", "3/2", cfg3)),
    ]
    for x, y in itertools.product(sample, repeat=2):
        for u in duals:
            assert check_coadjoint_duality_J(x, u, y, cfg3)


def test_coadjoint_action_of_the_unit(cfg3):
    u = DualJordanElement.from_density(basis("Gdual", 2, cfg3))
    assert coad_J(element("G", 0, cfg3), u) == u


def _ak1_labels(window):
    labels = [BasisIndex("eps", n) for n in window_indices("eps", window)]
    return labels + [BasisIndex("a", i) for i in window_indices("a", window)]


def test_iota_is_a_homomorphism():
    for x, y in itertools.product(_ak1_labels(2), repeat=2):
        coeff, target = ak1_product(x, y)
        assert jproduct(iota(x), iota(y)) == iota(target).scale(coeff), (x, y)


def test_ak1_structure_constants():
    half = Scalar.from_rational("1/2")
    a_minus, a_plus = BasisIndex.of("a", "-1/2"), BasisIndex.of("a", "1/2")
    assert ak1_product(a_plus, a_minus) == (-half, BasisIndex.of("eps", 0))
    assert ak1_product(BasisIndex.of("eps", 1), a_minus) == (half, a_plus)
    with pytest.raises(UnknownGenerator):
        ak1_product(BasisIndex.of("G", 0), a_plus)


def test_one_cocycle_vanishes_on_the_k3_image(cfg3):
    for label in (BasisIndex.of("eps", 0), BasisIndex.of("a", "-1/2"), BasisIndex.of("a", "1/2")):
        assert onecocycle_J(iota(label)).is_zero()
    assert not onecocycle_J(iota(IOTA_GENERATORS[0])).is_zero()


def test_iota_rejects_other_labels():
    with pytest.raises(UnknownGenerator):
        iota(BasisIndex.of("G", 1))


def test_one_cocycle_rejects_a_connection_on_another_configuration(cfg2, cfg3):
    foreign = ProjectiveConnection(MeroFun.constant(1, cfg2))
    with pytest.raises(IncompatibleConfig):
        onecocycle_J(element("G", 1, cfg3), foreign)
