"""
Module: densities.py

Tensor densities f(z) (dz)^lambda with half-integer weight, the Poisson-algebra
operations between them, the Krichever-Novikov pairing, and every primal and
dual basis family of the two configurations.

Basis families (P = z^2 - alpha^2, s = sqrt2):

    TwoPoint    e_n = z^(n+1) dz^-1        b_i = s z^(i+1/2) dz^-1/2
                eps_n = z^n                a_i = z^(i+1/2) dz^-1/2
                e*_n = z^(-n-2) dz^2       b*_i = (1/s) z^(-i-3/2) dz^3/2
                eps*_n = z^(-n-1) dz       a*_i = z^(-i-3/2) dz^3/2
    ThreePoint  V_2k = z P^k, V_2k+1 = P^(k+1)                     (dz^-1)
                phi_2k+1/2 = s z P^k, phi_2k-1/2 = s P^k           (dz^-1/2)
                G_2k = P^k, G_2k+1 = z P^k                         (dz^0)
                V*_2k = P^(-k-1), V*_2k+1 = z P^(-k-2)             (dz^2)
                phi*_2k-1/2 = (1/s) z P^(-k-1), phi*_2k+1/2 = (1/s) P^(-k-1)
                G*_2k = z P^(-k-1), G*_2k+1 = P^(-k-1)             (dz^1)
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from knsuper.core.coeffield import Scalar, as_scalar, join_terms, render_term
from knsuper.core.errors import InvalidFamilyForConfig, ParityMismatch, ResidualNonzero, WeightMismatch
from knsuper.core.merofun import MeroFun, PunctureConfig, cycle_integral, merge_configs, render_merofun


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """lambda = twice / 2."""

    twice: int

    @classmethod
    def of(cls, value: Union[int, str, Fraction, "HalfInt"]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return cls(2 * value)
        value = Fraction(value)
        doubled = 2 * value
        if doubled.denominator != 1:
            raise ParityMismatch(f"{value} is not a half-integer")
        return cls(int(doubled))

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def as_scalar(self) -> Scalar:
        return Scalar.from_rational(self.value)

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __lt__(self, other: "HalfInt") -> bool:
        return self.twice < HalfInt.of(other).twice

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


WEIGHT_VECTOR = HalfInt(-2)
WEIGHT_SPINOR = HalfInt(-1)
WEIGHT_FUNCTION = HalfInt(0)
WEIGHT_ONE_FORM = HalfInt(2)
WEIGHT_THREE_HALVES = HalfInt(3)
WEIGHT_QUADRATIC = HalfInt(4)


class Density:
    """f(z) (dz)^weight."""

    __slots__ = ("f", "weight")

    def __init__(self, f: MeroFun, weight: HalfInt):
        self.f = f
        self.weight = HalfInt.of(weight)

    @classmethod
    def zero(cls, weight: HalfInt, cfg: PunctureConfig) -> "Density":
        return cls(MeroFun.zero(cfg), weight)

    @property
    def cfg(self) -> PunctureConfig:
        return self.f.cfg

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def _check_weight(self, other: "Density") -> None:
        if self.weight != other.weight:
            raise WeightMismatch(f"cannot add densities of weights {self.weight} and {other.weight}")

    def __add__(self, other: "Density") -> "Density":
        self._check_weight(other)
        return Density(self.f + other.f, self.weight)

    def __sub__(self, other: "Density") -> "Density":
        self._check_weight(other)
        return Density(self.f - other.f, self.weight)

    def __neg__(self) -> "Density":
        return Density(-self.f, self.weight)

    def scale(self, factor) -> "Density":
        return Density(self.f.scale(as_scalar(factor)), self.weight)

    def __rmul__(self, factor) -> "Density":
        return self.scale(factor)

    def derivative(self) -> MeroFun:
        return self.f.derivative()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Density):
            return NotImplemented
        return self.weight == other.weight and self.f == other.f

    def __hash__(self) -> int:
        return hash((self.f, self.weight))

    def __repr__(self) -> str:
        return f"Density({render_density(self)})"


def dens_dot(x: Density, y: Density) -> Density:
    """x . y = (f g) dz^(lambda+mu)."""
    return Density(x.f * y.f, x.weight + y.weight)


def dens_poisson(x: Density, y: Density) -> Density:
    """{x, y} = (mu f' g - lambda f g') dz^(lambda+mu+1)."""
    lam, mu = x.weight.as_scalar(), y.weight.as_scalar()
    f, g = x.f, y.f
    value = (f.derivative() * g).scale(mu) - (f * g.derivative()).scale(lam)
    return Density(value, x.weight + y.weight + HalfInt(2))


def render_density(x: Density) -> str:
    return f"{render_merofun(x.f)} (dz)^{{{x.weight}}}"


# -- basis families --

@dataclass(frozen=True)
class FamilySpec:
    mode: str
    integral: bool
    weight: HalfInt
    partner: str
    label: str


FAMILIES: Dict[str, FamilySpec] = {
    "e": FamilySpec("TwoPoint", True, WEIGHT_VECTOR, "edual", "e"),
    "b": FamilySpec("TwoPoint", False, WEIGHT_SPINOR, "bdual", "b"),
    "eps": FamilySpec("TwoPoint", True, WEIGHT_FUNCTION, "epsdual", "eps"),
    "a": FamilySpec("TwoPoint", False, WEIGHT_SPINOR, "adual", "a"),
    "edual": FamilySpec("TwoPoint", True, WEIGHT_QUADRATIC, "e", "e*"),
    "bdual": FamilySpec("TwoPoint", False, WEIGHT_THREE_HALVES, "b", "b*"),
    "epsdual": FamilySpec("TwoPoint", True, WEIGHT_ONE_FORM, "eps", "eps*"),
    "adual": FamilySpec("TwoPoint", False, WEIGHT_THREE_HALVES, "a", "a*"),
    "V": FamilySpec("ThreePoint", True, WEIGHT_VECTOR, "Vdual", "V"),
    "phi": FamilySpec("ThreePoint", False, WEIGHT_SPINOR, "phidual", "phi"),
    "G": FamilySpec("ThreePoint", True, WEIGHT_FUNCTION, "Gdual", "G"),
    "Vdual": FamilySpec("ThreePoint", True, WEIGHT_QUADRATIC, "V", "V*"),
    "phidual": FamilySpec("ThreePoint", False, WEIGHT_THREE_HALVES, "phi", "phi*"),
    "Gdual": FamilySpec("ThreePoint", True, WEIGHT_ONE_FORM, "G", "G*"),
}

LABEL_TO_FAMILY = {spec.label: name for name, spec in FAMILIES.items()}


@total_ordering
@dataclass(frozen=True)
class BasisIndex:
    family: str
    index: HalfInt

    @classmethod
    def of(cls, family: str, index) -> "BasisIndex":
        family = LABEL_TO_FAMILY.get(family, family)
        if family not in FAMILIES:
            raise InvalidFamilyForConfig(f"unknown basis family {family!r}")
        index = HalfInt.of(index)
        if FAMILIES[family].integral != index.is_integer():
            kind = "an integer" if FAMILIES[family].integral else "a half-odd integer"
            raise ParityMismatch(f"family {FAMILIES[family].label} needs {kind} index, got {index}")
        return cls(family, index)

    @property
    def spec(self) -> FamilySpec:
        return FAMILIES[self.family]

    @property
    def weight(self) -> HalfInt:
        return self.spec.weight

    @property
    def parity(self) -> int:
        return 0 if self.spec.integral else 1

    def dual(self) -> "BasisIndex":
        return BasisIndex(self.spec.partner, self.index)

    def __lt__(self, other: "BasisIndex") -> bool:
        return (self.family, self.index.twice) < (other.family, other.index.twice)

    def __str__(self) -> str:
        return f"{self.spec.label}[{self.index}]"


def render_label(label: BasisIndex) -> str:
    return str(label)


def _p_power(k: int, cfg: PunctureConfig) -> MeroFun:
    alpha = Scalar.alpha()
    return MeroFun.linear_power(alpha, k, cfg) * MeroFun.linear_power(-alpha, k, cfg)


def _z(cfg: PunctureConfig, n: int = 1) -> MeroFun:
    return MeroFun.z_power(n, cfg)


_SQRT2 = Scalar.sqrt2()
_INV_SQRT2 = Scalar.sqrt2() / 2


def _coefficient(family: str, index: HalfInt, cfg: PunctureConfig) -> MeroFun:
    t = index.twice
    if family in ("e", "b", "eps", "a", "edual", "bdual", "epsdual", "adual"):
        if family == "e":
            return _z(cfg, t // 2 + 1)
        if family == "eps":
            return _z(cfg, t // 2)
        if family == "a":
            return _z(cfg, (t + 1) // 2)
        if family == "b":
            return _z(cfg, (t + 1) // 2).scale(_SQRT2)
        if family == "edual":
            return _z(cfg, -t // 2 - 2)
        if family == "epsdual":
            return _z(cfg, -t // 2 - 1)
        if family == "adual":
            return _z(cfg, -(t + 3) // 2)
        return _z(cfg, -(t + 3) // 2).scale(_INV_SQRT2)

    if family in ("V", "G", "Vdual", "Gdual"):
        n = t // 2
        k, odd = divmod(n, 2)
        if family == "V":
            return _p_power(k + 1, cfg) if odd else _z(cfg) * _p_power(k, cfg)
        if family == "G":
            return _z(cfg) * _p_power(k, cfg) if odd else _p_power(k, cfg)
        if family == "Vdual":
            return _z(cfg) * _p_power(-k - 2, cfg) if odd else _p_power(-k - 1, cfg)
        return _p_power(-k - 1, cfg) if odd else _z(cfg) * _p_power(-k - 1, cfg)

    # phi families: index 2k + 1/2 (twice = 4k + 1) or 2k - 1/2 (twice = 4k - 1)
    if (t - 1) % 4 == 0:
        k = (t - 1) // 4
        if family == "phi":
            return (_z(cfg) * _p_power(k, cfg)).scale(_SQRT2)
        return _p_power(-k - 1, cfg).scale(_INV_SQRT2)
    k = (t + 1) // 4
    if family == "phi":
        return _p_power(k, cfg).scale(_SQRT2)
    return (_z(cfg) * _p_power(-k - 1, cfg)).scale(_INV_SQRT2)


@lru_cache(maxsize=4096)
def _basis_cached(family: str, twice: int, mode: str) -> Density:
    cfg = PunctureConfig(mode)
    return Density(_coefficient(family, HalfInt(twice), cfg), FAMILIES[family].weight)


def basis(family: str, index, cfg: PunctureConfig) -> Density:
    """The basis density X_index of ``family`` in configuration ``cfg``."""
    label = BasisIndex.of(family, index)
    if label.spec.mode != cfg.mode:
        raise InvalidFamilyForConfig(f"family {label.spec.label} is not defined for {cfg.mode}")
    return _basis_cached(label.family, label.index.twice, cfg.mode)


def basis_of(label: BasisIndex, cfg: PunctureConfig) -> Density:
    return basis(label.family, label.index, cfg)


def kn_pairing(u: Density, v: Density, cfg: PunctureConfig) -> Scalar:
    """<u, v> = (1/2 pi i) integral of u . v over the separating cycle."""
    if (u.weight + v.weight).twice != 2:
        raise WeightMismatch(f"pairing needs weights summing to 1, got {u.weight} and {v.weight}")
    merge_configs(u.cfg, v.cfg)
    return cycle_integral(u.f * v.f, cfg)


# -- expansions --

_PRIMAL = {
    "ThreePoint": {-2: "V", -1: "phi", 0: "G"},
    "TwoPoint": {-2: "e", 0: "eps"},
}
_DUAL = {
    "ThreePoint": {4: "Vdual", 3: "phidual", 2: "Gdual"},
    "TwoPoint": {4: "edual", 2: "epsdual"},
}


def primal_family(weight: HalfInt, cfg: PunctureConfig, flavor: str = "L") -> str:
    if cfg.mode == "TwoPoint" and weight.twice == -1:
        return "b" if flavor == "L" else "a"
    try:
        return _PRIMAL[cfg.mode][weight.twice]
    except KeyError:
        raise WeightMismatch(f"no primal basis of weight {weight} in {cfg.mode}") from None


def dual_family(weight: HalfInt, cfg: PunctureConfig, flavor: str = "L") -> str:
    if cfg.mode == "TwoPoint" and weight.twice == 3:
        return "bdual" if flavor == "L" else "adual"
    try:
        return _DUAL[cfg.mode][weight.twice]
    except KeyError:
        raise WeightMismatch(f"no dual basis of weight {weight} in {cfg.mode}") from None


def window_indices(family: str, window: int) -> Iterator[HalfInt]:
    if FAMILIES[family].integral:
        for n in range(-window, window + 1):
            yield HalfInt(2 * n)
    else:
        for t in range(-2 * window + 1, 2 * window, 2):
            yield HalfInt(t)


@dataclass(frozen=True)
class Expansion:
    coeffs: Tuple[Tuple[BasisIndex, Scalar], ...]
    residual: Density

    @property
    def exact(self) -> bool:
        return self.residual.is_zero()

    def as_dict(self) -> Dict[BasisIndex, Scalar]:
        return dict(self.coeffs)

    def require_exact(self) -> "Expansion":
        if not self.exact:
            raise ResidualNonzero(f"density not in the window span; residual {render_density(self.residual)}")
        return self

    def render(self) -> str:
        terms = [render_term(c, str(label)) for label, c in self.coeffs]
        if not self.exact:
            terms.append(f"[{render_density(self.residual)}]")
        return join_terms(terms)


def _expand(u: Density, family: str, window: int, cfg: PunctureConfig, dual_side: bool) -> Expansion:
    partner = FAMILIES[family].partner
    coeffs: List[Tuple[BasisIndex, Scalar]] = []
    rebuilt = Density.zero(u.weight, cfg)
    if not u.is_zero():
        for index in window_indices(family, window):
            probe = basis(partner, index, cfg)
            c = kn_pairing(u, probe, cfg) if dual_side else kn_pairing(probe, u, cfg)
            if not c.is_zero():
                coeffs.append((BasisIndex(family, index), c))
                rebuilt = rebuilt + basis(family, index, cfg).scale(c)
    return Expansion(tuple(coeffs), u - rebuilt)


def expand_in_dual_basis(u: Density, window: int, cfg: PunctureConfig, flavor: str = "L") -> Expansion:
    """Coefficient of X*_n is <u, X_n>; the residual reports out-of-window content."""
    return _expand(u, dual_family(u.weight, cfg, flavor), window, cfg, dual_side=True)


def expand_in_basis(u: Density, window: int, cfg: PunctureConfig, flavor: str = "L") -> Expansion:
    """Coefficient of X_n is <X*_n, u>."""
    return _expand(u, primal_family(u.weight, cfg, flavor), window, cfg, dual_side=False)


def degree_spread(x: BasisIndex, y: BasisIndex, op: Callable[[Density, Density], Density],
                  cfg: PunctureConfig, flavor: str = "L") -> Optional[Tuple[Fraction, Fraction]]:
    """Offsets (min, max) of the basis degrees of op(X_p, Y_q) relative to p + q.

    Returns None when the product vanishes.
    """
    result = op(basis_of(x, cfg), basis_of(y, cfg))
    if result.is_zero():
        return None
    total = (x.index + y.index).value
    window = int(abs(total)) + 6
    expansion = expand_in_basis(result, window, cfg, flavor).require_exact()
    offsets = [label.index.value - total for label, _ in expansion.coeffs]
    return min(offsets), max(offsets)
