import json

import pytest

from knsuper.algebras.uniqueness import expected_lambda, expected_mu, unique_solver
from knsuper.core.coeffield import Scalar
from knsuper.core.densities import HalfInt
from knsuper.core.errors import DomainError


@pytest.fixture(scope="module")
def solved():
    return unique_solver(4)


@pytest.fixture(scope="module", params=[4, 6, 8])
def solved_at(request):
    return unique_solver(request.param)


def test_normalisation_and_interior_values(solved):
    assert solved.lam(1, -1) == Scalar.from_int(-1)
    assert solved.lam(2, -2) == Scalar.from_int(-2)
    assert solved.lam(1, 0).is_zero()
    assert solved.mu("1/2", "-1/2").is_zero()
    assert solved.mu("3/2", "-3/2") == Scalar.from_int(2)
    assert solved.mu("-3/2", "3/2") == Scalar.from_int(2)


def test_interior_agrees_with_the_expected_family(solved_at):
    inner = solved_at.window - 2
    ints = range(-inner, inner + 1)
    for n in ints:
        for r in ints:
            if abs(n + r) <= inner:
                assert (n, r) in solved_at.lambdas
                assert solved_at.lam(n, r) == expected_lambda(n, r)
    halves = [HalfInt(t) for t in range(-2 * inner + 1, 2 * inner, 2)]
    for i in halves:
        for k in halves:
            if abs((i + k).value) <= inner:
                assert (i.value, k.value) in solved_at.mus
                assert solved_at.mu(i, k) == expected_mu(i, k)


def test_largest_diagonal_spinor_coefficient_is_fixed():
    assert unique_solver(6).mu("7/2", "-7/2") == Scalar.from_int(12)


def test_expected_values():
    assert expected_lambda(3, -3) == Scalar.from_int(-3)
    assert expected_lambda(3, -2).is_zero()
    assert expected_mu(HalfInt(5), HalfInt(-5)) == Scalar.from_int(6)


def test_json_lists_nonzero_values(solved):
    payload = json.loads(solved.to_json())
    assert {"n": 1, "r": -1, "value": "-1"} in payload["lambda"]
    assert {"i": "3/2", "k": "-3/2", "value": "2"} in payload["mu"]


def test_window_must_leave_an_interior():
    with pytest.raises(DomainError):
        unique_solver(1)
