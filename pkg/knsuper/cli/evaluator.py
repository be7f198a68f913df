"""
Module: evaluator.py

Evaluates expression trees against a puncture configuration. Values are either
a ``Scalar`` or a ``DensitySum``: a finite sum of densities of distinct
weights, which covers functions, Lie and antialgebra elements and their duals.
Calls dispatch to the library operations.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple, Type, Union

from knsuper.algebras.antijordan import (
    DualJordanElement,
    JordanElement,
    coad_J,
    iota,
    jproduct,
    onecocycle_J,
)
from knsuper.algebras.graded import GradedPair
from knsuper.algebras.liesuper import (
    DualSuperElement,
    ProjectiveConnection,
    SuperElement,
    coad_L,
    cocycle2,
    onecocycle_L,
    sbracket,
)
from knsuper.cli.expr import (
    Add,
    AlphaSym,
    BasisAtom,
    BetaSym,
    Call,
    Div,
    Expr,
    Mul,
    Neg,
    Pow,
    ScalarLit,
    Sqrt2Sym,
    Sub,
    ZVar,
)
from knsuper.cli.grammar import parse
from knsuper.core.coeffield import ZERO, Scalar, scalar_pow
from knsuper.core.densities import (
    WEIGHT_FUNCTION,
    BasisIndex,
    Density,
    basis_of,
    dens_dot,
    dens_poisson,
    kn_pairing,
)
from knsuper.core.errors import DivisionByZero, ExprTypeError, IncompatibleConfig
from knsuper.core.merofun import MeroFun, PunctureConfig
from knsuper.logger.logger import log_path, setup_logger

logger = setup_logger("evaluator", log_path("cli"))

ARITY = {
    "bracket": 2, "dot": 2, "jprod": 2, "poisson": 2, "c2": 2, "pair": 2,
    "coad": 2, "coadJ": 2, "C1L": 1, "C1J": 1, "iota": 1,
}

# families whose TwoPoint odd part is read in the antialgebra basis
_J_FAMILIES = frozenset({"a", "adual"})


@dataclass
class DensitySum:
    """Sum of densities keyed by twice their weight; zero parts are dropped."""

    cfg: PunctureConfig
    parts: Dict[int, Density] = field(default_factory=dict)
    flavor: str = "L"

    @classmethod
    def of(cls, cfg: PunctureConfig, *densities: Density, flavor: str = "L") -> "DensitySum":
        out = cls(cfg, {}, flavor)
        for d in densities:
            out._put(d)
        return out

    @classmethod
    def from_pair(cls, x: GradedPair, flavor: str = "L") -> "DensitySum":
        return cls.of(x.cfg, x.even, x.odd, flavor=flavor)

    def _put(self, d: Density) -> None:
        key = d.weight.twice
        total = self.parts[key] + d if key in self.parts else d
        if total.is_zero():
            self.parts.pop(key, None)
        else:
            self.parts[key] = total

    def is_zero(self) -> bool:
        return not self.parts

    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted(self.parts, key=lambda t: (t % 2, t)))

    def component(self, twice: int) -> Optional[Density]:
        return self.parts.get(twice)

    def __add__(self, other: "DensitySum") -> "DensitySum":
        out = DensitySum(self.cfg, dict(self.parts), _flavor(self, other))
        for d in other.parts.values():
            out._put(d)
        return out

    def scale(self, factor: Scalar) -> "DensitySum":
        return DensitySum.of(self.cfg, *(d.scale(factor) for d in self.parts.values()), flavor=self.flavor)

    def __neg__(self) -> "DensitySum":
        return self.scale(Scalar.from_int(-1))

    def __sub__(self, other: "DensitySum") -> "DensitySum":
        return self + (-other)


Value = Union[Scalar, DensitySum]


def _flavor(*values) -> str:
    return "J" if any(isinstance(v, DensitySum) and v.flavor == "J" for v in values) else "L"


def describe(value: Value) -> str:
    if isinstance(value, Scalar):
        return "scalar"
    if value.is_zero():
        return "zero"
    return "density of weight(s) " + ", ".join(f"{t}/2" if t % 2 else str(t // 2) for t in value.weights())


class Evaluator:
    def __init__(self, cfg: PunctureConfig, connection: Optional[ProjectiveConnection] = None):
        self.cfg = cfg
        self.connection = connection

    # -- coercions --

    def _as_sum(self, v: Value) -> DensitySum:
        if isinstance(v, DensitySum):
            return v
        if v.is_zero():
            return DensitySum(self.cfg)
        return DensitySum.of(self.cfg, Density(MeroFun.constant(v, self.cfg), WEIGHT_FUNCTION))

    def _as_function(self, v: Value) -> Optional[MeroFun]:
        """The weight-0 function behind v, or None when v has other weights."""
        if isinstance(v, Scalar):
            return MeroFun.constant(v, self.cfg)
        if set(v.parts) - {0}:
            return None
        part = v.component(0)
        return part.f if part is not None else MeroFun.zero(self.cfg)

    def _as_pair(self, v: Value, kind: Type[GradedPair], call: str) -> GradedPair:
        s = self._as_sum(v)
        allowed = {kind.EVEN_WEIGHT.twice, kind.ODD_WEIGHT.twice}
        if set(s.parts) - allowed:
            raise ExprTypeError(f"{call}: expected an element of weights "
                                f"({kind.EVEN_WEIGHT}, {kind.ODD_WEIGHT}), got {describe(v)}")
        even = s.component(kind.EVEN_WEIGHT.twice) or Density.zero(kind.EVEN_WEIGHT, self.cfg)
        odd = s.component(kind.ODD_WEIGHT.twice) or Density.zero(kind.ODD_WEIGHT, self.cfg)
        return kind(even, odd)

    # -- evaluation --

    def evaluate(self, e: Expr) -> Value:
        if isinstance(e, ScalarLit):
            return Scalar.from_rational(e.value)
        if isinstance(e, AlphaSym):
            return Scalar.alpha()
        if isinstance(e, BetaSym):
            return Scalar.beta()
        if isinstance(e, Sqrt2Sym):
            return Scalar.sqrt2()
        if isinstance(e, ZVar):
            return DensitySum.of(self.cfg, Density(MeroFun.z_power(1, self.cfg), WEIGHT_FUNCTION))
        if isinstance(e, BasisAtom):
            label = BasisIndex(e.family, e.index)
            flavor = "J" if e.family in _J_FAMILIES else "L"
            return DensitySum.of(self.cfg, basis_of(label, self.cfg), flavor=flavor)
        if isinstance(e, Neg):
            v = self.evaluate(e.arg)
            return -v
        if isinstance(e, (Add, Sub)):
            return self._additive(e)
        if isinstance(e, Mul):
            return self._multiply(self.evaluate(e.left), self.evaluate(e.right))
        if isinstance(e, Div):
            return self._divide(self.evaluate(e.left), self.evaluate(e.right))
        if isinstance(e, Pow):
            return self._power(self.evaluate(e.base), e.exponent)
        if isinstance(e, Call):
            return self._call(e)
        raise ExprTypeError(f"cannot evaluate {e!r}")

    def _additive(self, e: Union[Add, Sub]) -> Value:
        left, right = self.evaluate(e.left), self.evaluate(e.right)
        if isinstance(left, Scalar) and isinstance(right, Scalar):
            return left + right if isinstance(e, Add) else left - right
        a, b = self._as_sum(left), self._as_sum(right)
        return a + b if isinstance(e, Add) else a - b

    def _multiply(self, left: Value, right: Value) -> Value:
        if isinstance(left, Scalar) and isinstance(right, Scalar):
            return left * right
        if isinstance(left, Scalar):
            return right.scale(left)
        if isinstance(right, Scalar):
            return left.scale(right)
        f = self._as_function(left)
        other = right
        if f is None:
            f, other = self._as_function(right), left
        if f is None:
            raise ExprTypeError(f"'*' multiplies by scalars or functions; got {describe(left)} "
                                f"and {describe(right)} (use dot)")
        g = Density(f, WEIGHT_FUNCTION)
        return DensitySum.of(self.cfg, *(dens_dot(g, d) for d in other.parts.values()),
                             flavor=_flavor(left, right))

    def _divide(self, left: Value, right: Value) -> Value:
        if isinstance(right, Scalar):
            if right.is_zero():
                raise DivisionByZero("division by zero")
            return left / right if isinstance(left, Scalar) else left.scale(right.inverse())
        f = self._as_function(right)
        if f is None:
            raise ExprTypeError(f"cannot divide by a {describe(right)}")
        if f.is_zero():
            raise DivisionByZero("division by the zero function")
        inverse = DensitySum.of(self.cfg, Density(f.inverse(), WEIGHT_FUNCTION))
        return self._multiply(left, inverse)

    def _power(self, base: Value, k: int) -> Value:
        if isinstance(base, Scalar):
            return scalar_pow(base, k)
        f = self._as_function(base)
        if f is None:
            raise ExprTypeError(f"'^' applies to scalars and functions, not a {describe(base)}")
        return DensitySum.of(self.cfg, Density(f.power(k), WEIGHT_FUNCTION))

    # -- calls --

    def _call(self, e: Call) -> Value:
        expected = ARITY[e.name]
        if len(e.args) != expected:
            raise ExprTypeError(f"{e.name} takes {expected} argument(s), got {len(e.args)}")
        if e.name == "iota":
            return self._iota(e.args[0])
        args = [self.evaluate(a) for a in e.args]
        handler: Callable[..., Value] = getattr(self, f"_call_{e.name}")
        logger.debug("Evaluating %s on %s", e.name, ", ".join(describe(a) for a in args))
        return handler(*args)

    def _bilinear(self, x: Value, y: Value, op: Callable[[Density, Density], Density]) -> DensitySum:
        a, b = self._as_sum(x), self._as_sum(y)
        return DensitySum.of(self.cfg, *(op(u, v) for u in a.parts.values() for v in b.parts.values()),
                             flavor=_flavor(x, y))

    def _call_dot(self, x: Value, y: Value) -> Value:
        return self._bilinear(x, y, dens_dot)

    def _call_poisson(self, x: Value, y: Value) -> Value:
        return self._bilinear(x, y, dens_poisson)

    def _call_bracket(self, x: Value, y: Value) -> Value:
        a = self._as_pair(x, SuperElement, "bracket")
        b = self._as_pair(y, SuperElement, "bracket")
        return DensitySum.from_pair(sbracket(a, b))

    def _call_jprod(self, x: Value, y: Value) -> Value:
        a = self._as_pair(x, JordanElement, "jprod")
        b = self._as_pair(y, JordanElement, "jprod")
        return DensitySum.from_pair(jproduct(a, b), flavor="J")

    def _call_c2(self, x: Value, y: Value) -> Value:
        a = self._as_pair(x, SuperElement, "c2")
        b = self._as_pair(y, SuperElement, "c2")
        return cocycle2(a, b, self.connection, self.cfg)

    def _call_C1L(self, x: Value) -> Value:
        return DensitySum.from_pair(onecocycle_L(self._as_pair(x, SuperElement, "C1L"), self.connection))

    def _call_C1J(self, x: Value) -> Value:
        image = onecocycle_J(self._as_pair(x, JordanElement, "C1J"), self.connection)
        return DensitySum.from_pair(image, flavor="J")

    def _call_coad(self, x: Value, u: Value) -> Value:
        a = self._as_pair(x, SuperElement, "coad")
        w = self._as_pair(u, DualSuperElement, "coad")
        return DensitySum.from_pair(coad_L(a, w))

    def _call_coadJ(self, x: Value, u: Value) -> Value:
        a = self._as_pair(x, JordanElement, "coadJ")
        w = self._as_pair(u, DualJordanElement, "coadJ")
        return DensitySum.from_pair(coad_J(a, w), flavor="J")

    def _call_pair(self, u: Value, v: Value) -> Value:
        a, b = self._as_sum(u), self._as_sum(v)
        total, matched = ZERO, False
        for s, x in a.parts.items():
            y = b.component(2 - s)
            if y is not None:
                total = total + kn_pairing(x, y, self.cfg)
                matched = True
        if not matched and not (a.is_zero() or b.is_zero()):
            raise ExprTypeError(f"pair needs weights summing to 1; got {describe(u)} and {describe(v)}")
        return total

    def _iota(self, arg: Expr) -> Value:
        if not isinstance(arg, BasisAtom) or arg.family not in ("eps", "a"):
            raise ExprTypeError("iota takes a single AK(1) basis element eps[n] or a[p/2]")
        if self.cfg.mode != "ThreePoint":
            raise IncompatibleConfig("iota lands in the three-point antialgebra; use --points 3")
        image = iota(BasisIndex(arg.family, arg.index))
        return DensitySum.from_pair(image, flavor="J")


def evaluate(expr: Expr, cfg: PunctureConfig, connection: Optional[ProjectiveConnection] = None) -> Value:
    return Evaluator(cfg, connection).evaluate(expr)


def evaluate_connection(text: str, cfg: PunctureConfig) -> ProjectiveConnection:
    """Parse ``text`` as a weight-0 function and wrap it as a projective connection."""
    value = evaluate(parse(text), cfg)
    f = Evaluator(cfg)._as_function(value)
    if f is None:
        raise ExprTypeError(f"a connection must be a function (weight 0), got {describe(value)}")
    return ProjectiveConnection(f)
