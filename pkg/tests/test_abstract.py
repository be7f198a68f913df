import json

import pytest

from knsuper.algebras.abstract import (
    adjoint_superalgebra,
    ak1_truncated,
    derivation_algebra,
    derivations,
    kaplansky_k3,
    osp12_table,
    osp12_witness,
    structure_match,
    vadd,
)
from knsuper.core.coeffield import ONE, Scalar
from knsuper.core.errors import NotFiniteDimensional


def test_k3_is_an_antialgebra():
    k3 = kaplansky_k3()
    assert k3.dims == (1, 2)
    assert k3.check_symmetry()
    assert k3.basis_product("a", "b") == {"eps": Scalar.from_rational("1/2")}


def test_osp12_table_is_a_lie_superalgebra():
    osp = osp12_table()
    assert osp.dims == (3, 2)
    assert osp.check_super_jacobi()
    witness = osp12_witness(osp)
    assert witness is not None


def test_adjoint_superalgebra_of_k3_is_osp12():
    g = adjoint_superalgebra(kaplansky_k3())
    assert g.dims == (3, 2)
    assert g.check_super_jacobi()
    assert structure_match(g)


def test_derivations_of_k3():
    k3 = kaplansky_k3()
    assert derivations(k3).dims == (3, 2)
    der = derivation_algebra(k3)
    assert der.check_super_jacobi()
    assert osp12_witness(der) is not None


def test_truncated_ak1():
    ak1 = ak1_truncated(2)
    assert ak1.dims == (5, 4)
    assert not ak1.is_finite()
    assert ak1.basis_product("eps[1]", "eps[1]") == {"eps[2]": ONE}
    assert ak1.basis_product("eps[2]", "eps[1]") is None
    with pytest.raises(NotFiniteDimensional):
        derivations(ak1)


def test_witness_rejects_wrong_dimensions():
    assert osp12_witness(kaplansky_k3()) is None


def test_vector_arithmetic_drops_zeros():
    assert vadd({"x": ONE}, {"x": ONE}, -ONE) == {}


def test_json_dump():
    payload = json.loads(kaplansky_k3().to_json())
    assert payload["name"] == "K3"
