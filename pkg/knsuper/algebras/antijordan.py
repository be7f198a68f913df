"""
Module: antijordan.py

The Jordan superalgebra (Lie antialgebra) of Krichever-Novikov type:
functions e plus spinors psi dz^-1/2 with the product

    e . f     = e f
    e . psi   = 1/2 e psi dz^-1/2
    phi . psi = {phi dz^-1/2, psi dz^-1/2} = (-1/2 phi' psi + 1/2 phi psi')

together with the embedding of AK(1), the dual-valued 1-cocycle
C(eps) = -eps' dz, C(psi) = (psi'' - 1/2 R psi) dz^3/2 and its tables.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from knsuper.algebras.graded import GradedPair, sign
from knsuper.algebras.liesuper import ProjectiveConnection, closed_form_C1_L, connection_function
from knsuper.algebras.structure_table import StructureTable
from knsuper.core.coeffield import Scalar, alpha_pow
from knsuper.core.densities import (
    WEIGHT_FUNCTION,
    WEIGHT_ONE_FORM,
    WEIGHT_SPINOR,
    WEIGHT_THREE_HALVES,
    BasisIndex,
    Density,
    HalfInt,
    basis_of,
    dens_dot,
    dens_poisson,
    expand_in_dual_basis,
    kn_pairing,
    window_indices,
)
from knsuper.core.errors import InvalidFamilyForConfig, TableMismatch, UnknownGenerator
from knsuper.core.merofun import MeroFun, PunctureConfig, merge_configs
from knsuper.logger.logger import log_path, setup_logger

logger = setup_logger("antijordan", log_path("antijordan"))

HALF = Scalar.from_rational("1/2")


class JordanElement(GradedPair):
    EVEN_WEIGHT = WEIGHT_FUNCTION
    ODD_WEIGHT = WEIGHT_SPINOR
    __slots__ = ()

    @classmethod
    def of_basis(cls, label: BasisIndex, cfg: PunctureConfig) -> "JordanElement":
        if label.family not in ("G", "phi", "eps", "a"):
            raise InvalidFamilyForConfig(f"{label} is not a basis element of the antialgebra")
        return cls.from_density(basis_of(label, cfg))


class DualJordanElement(GradedPair):
    EVEN_WEIGHT = WEIGHT_ONE_FORM
    ODD_WEIGHT = WEIGHT_THREE_HALVES
    __slots__ = ()


def jproduct(x: JordanElement, y: JordanElement) -> JordanElement:
    merge_configs(x.cfg, y.cfg)
    even = dens_dot(x.even, y.even) + dens_poisson(x.odd, y.odd)
    odd = (dens_dot(x.even, y.odd) + dens_dot(y.even, x.odd)).scale(HALF)
    return JordanElement(even, odd)


def check_supercommutative(x: JordanElement, y: JordanElement) -> bool:
    return jproduct(x, y) == jproduct(y, x).scale(sign(x.parity() * y.parity()))


def check_odd_derivation(x: JordanElement, y: JordanElement, a: JordanElement) -> bool:
    """(x.y).a = (x.a).y + (-1)^|x| x.(y.a) for odd a."""
    lhs = jproduct(jproduct(x, y), a)
    rhs = jproduct(jproduct(x, a), y) + jproduct(x, jproduct(y, a)).scale(sign(x.parity()))
    return lhs == rhs


def check_antialgebra_axioms(sample: Iterable[Tuple[JordanElement, JordanElement, JordanElement]]) -> bool:
    """Supercommutativity, associativity of the even part and the odd-derivation rule."""
    for x, y, z in sample:
        px, py, pz = x.parity(), y.parity(), z.parity()
        if not (check_supercommutative(x, y) and check_supercommutative(y, z)):
            return False
        if px == py == pz == 0:
            if jproduct(jproduct(x, y), z) != jproduct(x, jproduct(y, z)):
                return False
        if pz == 1 and not check_odd_derivation(x, y, z):
            return False
    return True


# -- AK(1) embedding --

IOTA_GENERATORS = (
    BasisIndex.of("eps", -1),
    BasisIndex.of("eps", 0),
    BasisIndex.of("eps", 1),
    BasisIndex.of("a", "-1/2"),
    BasisIndex.of("a", "1/2"),
)


def iota(label: BasisIndex) -> JordanElement:
    """AK(1) -> J_{0,3}: eps_n -> ((z-al)/(z+al))^n, a_i -> s/(2 rt) (z-al)^(i+1/2) (z+al)^(1/2-i)."""
    cfg = PunctureConfig.three_point()
    alpha = Scalar.alpha()
    if label.family == "eps":
        n = label.index.twice // 2
        f = MeroFun.linear_power(alpha, n, cfg) * MeroFun.linear_power(-alpha, -n, cfg)
        return JordanElement.from_density(Density(f, WEIGHT_FUNCTION))
    if label.family == "a":
        p = (label.index.twice + 1) // 2
        coeff = Scalar.sqrt2() / (Scalar.beta() * 2)
        f = (MeroFun.linear_power(alpha, p, cfg) * MeroFun.linear_power(-alpha, 1 - p, cfg)).scale(coeff)
        return JordanElement.from_density(Density(f, WEIGHT_SPINOR))
    raise UnknownGenerator(f"{label} is not a generator of AK(1)")


def ak1_product(x: BasisIndex, y: BasisIndex) -> Tuple[Scalar, Optional[BasisIndex]]:
    """Structure constants of AK(1): returns (coefficient, label) with x.y = coefficient*label."""
    if x.family == "eps" and y.family == "eps":
        return Scalar.from_int(1), BasisIndex("eps", x.index + y.index)
    if x.family == "eps" and y.family == "a":
        return HALF, BasisIndex("a", x.index + y.index)
    if x.family == "a" and y.family == "eps":
        return HALF, BasisIndex("a", x.index + y.index)
    if x.family == "a" and y.family == "a":
        c = Scalar.from_rational((y.index - x.index).value / 2)
        return c, BasisIndex("eps", x.index + y.index)
    raise UnknownGenerator(f"({x}, {y}) are not AK(1) generators")


# -- 1-cocycle --

def onecocycle_J(x: JordanElement, R: Optional[ProjectiveConnection] = None) -> DualJordanElement:
    """C(eps) = -eps' dz,  C(psi) = (psi'' - 1/2 R psi) dz^3/2."""
    cfg = x.cfg
    r = connection_function(R, cfg)
    psi = x.odd.f
    even = -x.even.f.derivative()
    odd = psi.derivative().derivative() - (r * psi).scale(HALF)
    return DualJordanElement(Density(even, WEIGHT_ONE_FORM), Density(odd, WEIGHT_THREE_HALVES))


def coad_J(x: JordanElement, u: DualJordanElement) -> DualJordanElement:
    """rho*_x on F_1 + F_3/2."""
    merge_configs(x.cfg, u.cfg)
    even = dens_dot(x.even, u.even) - dens_dot(x.odd, u.odd).scale(HALF)
    odd = dens_dot(x.even, u.odd).scale(HALF) - dens_poisson(x.odd, u.even)
    return DualJordanElement(even, odd)


def pair_dual_J(u: DualJordanElement, x: JordanElement, cfg: PunctureConfig) -> Scalar:
    return kn_pairing(u.even, x.even, cfg) + kn_pairing(u.odd, x.odd, cfg)


def check_onecocycle_J(x: JordanElement, y: JordanElement, R: Optional[ProjectiveConnection]) -> bool:
    """C(x.y) = rho_x C(y) + (-1)^{|x||y|} rho_y C(x)."""
    lhs = onecocycle_J(jproduct(x, y), R)
    rhs = coad_J(x, onecocycle_J(y, R)) + coad_J(y, onecocycle_J(x, R)).scale(sign(x.parity() * y.parity()))
    return lhs == rhs


def check_coadjoint_duality_J(x: JordanElement, u: DualJordanElement, y: JordanElement,
                              cfg: PunctureConfig) -> bool:
    """<rho*_x u, y> = (-1)^{|x||u|} <u, x.y>."""
    lhs = pair_dual_J(coad_J(x, u), y, cfg)
    rhs = pair_dual_J(u, jproduct(x, y), cfg) * sign(x.parity() * u.parity())
    return lhs == rhs


# -- tables --

def jordan_families(cfg: PunctureConfig) -> Tuple[str, str]:
    return ("G", "phi") if cfg.mode == "ThreePoint" else ("eps", "a")


def jordan_labels(window: int, cfg: PunctureConfig) -> List[BasisIndex]:
    labels = []
    for family in jordan_families(cfg):
        labels.extend(BasisIndex(family, i) for i in window_indices(family, window))
    return labels


def closed_form_C1_J(label: BasisIndex) -> Dict[BasisIndex, Scalar]:
    out: Dict[BasisIndex, Scalar] = {}

    def put(family: str, twice: int, value: Scalar) -> None:
        if not value.is_zero():
            out[BasisIndex(family, HalfInt(twice))] = value

    t = label.index.twice
    if label.family == "G":
        n = t // 2
        put("Gdual", -t, Scalar.from_int(-n))
        if n % 2:
            put("Gdual", -t + 4, alpha_pow(2) * (-(n - 1)))
        return out
    if label.family == "phi":
        return closed_form_C1_L(label)
    if label.family == "eps":
        put("epsdual", -t, Scalar.from_int(-(t // 2)))
        return out
    if label.family == "a":
        v = label.index.value
        put("adual", -t, Scalar.from_rational(v * v - Fraction(1, 4)))
        return out
    raise InvalidFamilyForConfig(f"{label} is not a basis element of the antialgebra")


def table_C1_J(window: int, cfg: PunctureConfig, R: Optional[ProjectiveConnection] = None,
               check: bool = True) -> StructureTable:
    logger.info("Building antialgebra 1-cocycle table for %s, window %d", cfg.mode, window)
    table = StructureTable("C1J", cfg.mode)
    for label in jordan_labels(window, cfg):
        image = onecocycle_J(JordanElement.of_basis(label, cfg), R)
        part = image.odd if label.parity else image.even
        coeffs = expand_in_dual_basis(part, window + 4, cfg, "J").require_exact().as_dict()
        if check and R is None and coeffs != closed_form_C1_J(label):
            raise TableMismatch(f"C({label}) does not match its closed form")
        table.set_map(label, coeffs)
    return table
