from knsuper.core.coeffield import ONE, Scalar
from knsuper.core.linsolve import LinearSystem, span_rank


def test_square_system_is_determined():
    system = LinearSystem(["x", "y"])
    assert system.add_equation({"x": 1, "y": 1}, 3)
    assert system.add_equation({"x": 1, "y": -1}, 1)
    assert system.determined() == {"x": Scalar.from_int(2), "y": ONE}
    assert system.free_unknowns() == []


def test_symbolic_coefficients():
    alpha = Scalar.alpha()
    system = LinearSystem(["x"])
    system.add_equation({"x": alpha}, alpha * alpha)
    assert system.value("x") == alpha


def test_inconsistency_is_sticky():
    system = LinearSystem(["x"])
    assert system.add_equation({"x": 1}, 1)
    assert not system.add_equation({"x": 2}, 3)
    assert not system.add_equation({"x": 1}, 1)
    assert not system.consistent
    assert system.particular_solution() is None


def test_redundant_equations_keep_the_rank():
    system = LinearSystem(["x", "y", "z"])
    system.add_equation({"x": 1, "y": 1})
    system.add_equation({"x": 2, "y": 2})
    assert system.rank == 1
    assert system.value("x") is None


def test_nullspace_solves_the_homogeneous_system():
    system = LinearSystem(["x", "y", "z"])
    system.add_equation({"x": 1, "y": 1, "z": 1})
    basis = system.nullspace()
    assert len(basis) == 2
    for vector in basis:
        total = sum((vector.get(k, Scalar.from_int(0)) for k in "xyz"), Scalar.from_int(0))
        assert total.is_zero()


def test_unknowns_can_arrive_with_equations():
    system = LinearSystem([])
    system.add_equation({"a": 1}, 5)
    assert system.value("a") == Scalar.from_int(5)


def test_span_rank():
    vectors = [{"x": ONE}, {"y": ONE}, {"x": ONE, "y": ONE}]
    assert span_rank(vectors) == 2
