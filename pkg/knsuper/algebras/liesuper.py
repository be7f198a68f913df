"""
Module: liesuper.py

The Krichever-Novikov Lie superalgebra on the sphere with two or three
punctures: vector fields e dz^-1 together with spinors phi dz^-1/2.

Brackets:
    [e, f]     = (-e'f + ef') dz^-1
    [e, psi]   = (-1/2 e'psi + e psi') dz^-1/2
    [phi, psi] = 1/2 phi psi dz^-1

Implements the local 2-cocycle c_R, its dual-valued 1-cocycle C_R, the
coadjoint action on F_2 + F_3/2, the osp(1|2) vanishing check, the golden
tables with their closed forms, and the window-bounded non-triviality test.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from knsuper.algebras.graded import GradedPair, sign
from knsuper.algebras.structure_table import StructureTable
from knsuper.core.coeffield import ZERO, Scalar, alpha_pow
from knsuper.core.densities import (
    WEIGHT_QUADRATIC,
    WEIGHT_SPINOR,
    WEIGHT_THREE_HALVES,
    WEIGHT_VECTOR,
    BasisIndex,
    Density,
    HalfInt,
    basis_of,
    dens_dot,
    dens_poisson,
    expand_in_basis,
    expand_in_dual_basis,
    kn_pairing,
    window_indices,
)
from knsuper.core.errors import InvalidFamilyForConfig, ParityMismatch, TableMismatch
from knsuper.core.linsolve import LinearSystem
from knsuper.core.merofun import MeroFun, PunctureConfig, cycle_integral, merge_configs
from knsuper.logger.logger import log_path, setup_logger

logger = setup_logger("liesuper", log_path("liesuper"))

HALF = Scalar.from_rational("1/2")


class SuperElement(GradedPair):
    EVEN_WEIGHT = WEIGHT_VECTOR
    ODD_WEIGHT = WEIGHT_SPINOR
    __slots__ = ()

    @classmethod
    def of_basis(cls, label: BasisIndex, cfg: PunctureConfig) -> "SuperElement":
        if label.family not in ("V", "phi", "e", "b"):
            raise InvalidFamilyForConfig(f"{label} is not a basis element of the Lie superalgebra")
        return cls.from_density(basis_of(label, cfg))


class DualSuperElement(GradedPair):
    EVEN_WEIGHT = WEIGHT_QUADRATIC
    ODD_WEIGHT = WEIGHT_THREE_HALVES
    __slots__ = ()


@dataclass(frozen=True)
class ProjectiveConnection:
    """R(z) in the single global chart of the sphere."""

    R: MeroFun

    @classmethod
    def zero(cls, cfg: PunctureConfig) -> "ProjectiveConnection":
        return cls(MeroFun.zero(cfg))

    def is_zero(self) -> bool:
        return self.R.is_zero()


def connection_function(R: Optional[ProjectiveConnection], cfg: PunctureConfig) -> MeroFun:
    """R as a function on ``cfg``; zero when no connection is given."""
    if R is None:
        return MeroFun.zero(cfg)
    merge_configs(R.R.cfg, cfg)
    return R.R


# -- bracket --

def sbracket(x: SuperElement, y: SuperElement) -> SuperElement:
    merge_configs(x.cfg, y.cfg)
    even = dens_poisson(x.even, y.even) + dens_dot(x.odd, y.odd).scale(HALF)
    odd = dens_poisson(x.even, y.odd) - dens_poisson(y.even, x.odd)
    return SuperElement(even, odd)


def check_super_skew(x: SuperElement, y: SuperElement) -> bool:
    px, py = x.parity(), y.parity()
    return sbracket(x, y) == sbracket(y, x).scale(-sign(px * py))


def check_super_jacobi(x: SuperElement, y: SuperElement, z: SuperElement) -> bool:
    px, py, pz = x.parity(), y.parity(), z.parity()
    total = (
        sbracket(x, sbracket(y, z)).scale(sign(px * pz))
        + sbracket(y, sbracket(z, x)).scale(sign(py * px))
        + sbracket(z, sbracket(x, y)).scale(sign(pz * py))
    )
    return total.is_zero()


# -- 2-cocycle --

def _even_integrand(e: MeroFun, f: MeroFun, R: MeroFun) -> MeroFun:
    e1, f1 = e.derivative(), f.derivative()
    e3, f3 = e1.derivative().derivative(), f1.derivative().derivative()
    third = (e3 * f - e * f3).scale(HALF)
    return -(third - R * (e1 * f - e * f1))


def _odd_integrand(phi: MeroFun, psi: MeroFun, R: MeroFun) -> MeroFun:
    second = (phi.derivative().derivative() * psi + phi * psi.derivative().derivative()).scale(HALF)
    return second - (R * phi * psi).scale(HALF)


def cocycle2(x: SuperElement, y: SuperElement, R: Optional[ProjectiveConnection],
             cfg: PunctureConfig) -> Scalar:
    """c_R(x, y); mixed even-odd pairs contribute zero."""
    r = connection_function(R, cfg)
    value = ZERO
    if not x.even.is_zero() and not y.even.is_zero():
        value = value + cycle_integral(_even_integrand(x.even.f, y.even.f, r), cfg)
    if not x.odd.is_zero() and not y.odd.is_zero():
        value = value + cycle_integral(_odd_integrand(x.odd.f, y.odd.f, r), cfg)
    return value


def check_cocycle2_identities(x: SuperElement, y: SuperElement, z: SuperElement,
                              R: Optional[ProjectiveConnection], cfg: PunctureConfig) -> bool:
    """Super skew-symmetry of c on (x, y) and the cocycle Jacobi identity on (x, y, z)."""
    px, py, pz = x.parity(), y.parity(), z.parity()
    skew = cocycle2(x, y, R, cfg) == -sign(px * py) * cocycle2(y, x, R, cfg)
    cyclic = (
        cocycle2(x, sbracket(y, z), R, cfg) * sign(px * pz)
        + cocycle2(y, sbracket(z, x), R, cfg) * sign(py * px)
        + cocycle2(z, sbracket(x, y), R, cfg) * sign(pz * py)
    )
    return skew and cyclic.is_zero()


def closed_form_c(i: BasisIndex, j: BasisIndex) -> Scalar:
    """Tabulated value of c_0(X_i, X_j) on the basis."""
    families = {i.family, j.family}
    if families == {"V"}:
        n, m = i.index.twice // 2, j.index.twice // 2
        if n % 2 != m % 2:
            return ZERO
        if n % 2 == 0:
            k, l = n // 2, m // 2
            if k + l == 0:
                return Scalar.from_int(-2 * k * (4 * k * k - 1))
            if k + l == 1:
                return alpha_pow(2) * (-8 * k * (k - 1) * (2 * k - 1))
            if k + l == 2:
                return alpha_pow(4) * (-8 * k * (k - 1) * (k - 2))
            return ZERO
        k, l = (n - 1) // 2, (m - 1) // 2
        if k + l == 0:
            return alpha_pow(2) * (-8 * (k + 1) * k * (k - 1))
        if k + l == -1:
            return Scalar.from_int(-4 * k * (k + 1) * (2 * k + 1))
        return ZERO
    if families == {"phi"}:
        ti, tj = i.index.twice, j.index.twice
        plus_i, plus_j = (ti - 1) % 4 == 0, (tj - 1) % 4 == 0
        if plus_i == plus_j:
            return ZERO
        if not plus_i:
            ti, tj = tj, ti
        k, l = (ti - 1) // 4, (tj + 1) // 4
        if k + l == 0:
            return Scalar.from_int(4 * k * (2 * k + 1))
        if k + l == 1:
            return alpha_pow(2) * (8 * k * (k - 1))
        return ZERO
    if families == {"e"}:
        n, m = i.index.twice // 2, j.index.twice // 2
        return Scalar.from_int(-(n ** 3 - n)) if n + m == 0 else ZERO
    if families == {"b"}:
        if i.index.twice + j.index.twice != 0:
            return ZERO
        v = i.index.value
        return Scalar.from_rational(2 * (v * v - Fraction(1, 4)))
    if families <= {"V", "phi"} or families <= {"e", "b"}:
        return ZERO
    raise ParityMismatch(f"no tabulated cocycle value for ({i}, {j})")


def coboundary_witness_check(R: ProjectiveConnection, x: SuperElement, y: SuperElement,
                             cfg: PunctureConfig) -> bool:
    """c_R(x,y) - c_0(x,y) equals f([x,y]) for f(Z) = -<R dz^2, Z_even>."""
    r = connection_function(R, cfg)
    difference = cocycle2(x, y, R, cfg) - cocycle2(x, y, None, cfg)
    bracket = sbracket(x, y)
    if bracket.even.is_zero():
        witness = ZERO
    else:
        witness = -cycle_integral(r * bracket.even.f, cfg)
    return difference == witness


# -- 1-cocycle and coadjoint action --

def onecocycle_L(x: SuperElement, R: Optional[ProjectiveConnection] = None) -> DualSuperElement:
    """C(e) = -(e''' - 2Re' - R'e) dz^2,  C(phi) = (phi'' - 1/2 R phi) dz^3/2."""
    cfg = x.cfg
    r = connection_function(R, cfg)
    e, phi = x.even.f, x.odd.f
    e1 = e.derivative()
    even = -(e1.derivative().derivative() - (r * e1).scale(2) - r.derivative() * e)
    odd = phi.derivative().derivative() - (r * phi).scale(HALF)
    return DualSuperElement(Density(even, WEIGHT_QUADRATIC), Density(odd, WEIGHT_THREE_HALVES))


def coad_L(x: SuperElement, u: DualSuperElement) -> DualSuperElement:
    merge_configs(x.cfg, u.cfg)
    even = dens_poisson(x.even, u.even) - dens_poisson(x.odd, u.odd)
    odd = dens_poisson(x.even, u.odd) - dens_dot(x.odd, u.even).scale(HALF)
    return DualSuperElement(even, odd)


def pair_dual(u: DualSuperElement, x: SuperElement, cfg: PunctureConfig) -> Scalar:
    return kn_pairing(u.even, x.even, cfg) + kn_pairing(u.odd, x.odd, cfg)


def check_onecocycle_L(x: SuperElement, y: SuperElement, R: Optional[ProjectiveConnection],
                       cfg: PunctureConfig) -> bool:
    """C([x,y]) = ad*_x C(y) - (-1)^{|x||y|} ad*_y C(x), and <C(x), y> = c(x, y)."""
    px, py = x.parity(), y.parity()
    lhs = onecocycle_L(sbracket(x, y), R)
    rhs = coad_L(x, onecocycle_L(y, R)) - coad_L(y, onecocycle_L(x, R)).scale(sign(px * py))
    if lhs != rhs:
        logger.debug("1-cocycle identity fails on %r, %r", x, y)
        return False
    return pair_dual(onecocycle_L(x, R), y, cfg) == cocycle2(x, y, R, cfg)


def check_coadjoint_duality(x: SuperElement, u: DualSuperElement, y: SuperElement,
                            cfg: PunctureConfig) -> bool:
    """<ad*_x u, y> = -(-1)^{|x||u|} <u, [x, y]>."""
    px, pu = x.parity(), u.parity()
    lhs = pair_dual(coad_L(x, u), y, cfg)
    rhs = pair_dual(u, sbracket(x, y), cfg) * (-sign(px * pu))
    return lhs == rhs


# -- osp(1|2) --

def osp12_generators(cfg: PunctureConfig) -> List[SuperElement]:
    """dz^-1, z dz^-1, z^2 dz^-1, s dz^-1/2, s z dz^-1/2."""
    s = Scalar.sqrt2()
    out = []
    for k in range(3):
        out.append(SuperElement.from_density(Density(MeroFun.z_power(k, cfg), WEIGHT_VECTOR)))
    for k in range(2):
        out.append(SuperElement.from_density(Density(MeroFun.z_power(k, cfg).scale(s), WEIGHT_SPINOR)))
    return out


def _in_osp12_span(x: SuperElement) -> bool:
    even, odd = x.even.f, x.odd.f
    if not (even.is_polynomial() and odd.is_polynomial()):
        return False
    return len(even.numer) <= 3 and len(odd.numer) <= 2


def osp12_vanishing_check(cfg: PunctureConfig) -> bool:
    """Closure of the polynomial osp(1|2) under the bracket and c_0 = 0 on all its pairs."""
    gens = osp12_generators(cfg)
    ok = True
    for a in range(len(gens)):
        for b in range(a, len(gens)):
            x, y = gens[a], gens[b]
            if not _in_osp12_span(sbracket(x, y)):
                logger.info("osp(1|2) not closed on generator pair (%d, %d)", a, b)
                ok = False
            if not cocycle2(x, y, None, cfg).is_zero():
                logger.info("cocycle does not vanish on generator pair (%d, %d)", a, b)
                ok = False
    return ok


# -- tables --

def lie_families(cfg: PunctureConfig) -> Tuple[str, str]:
    return ("V", "phi") if cfg.mode == "ThreePoint" else ("e", "b")


def lie_labels(window: int, cfg: PunctureConfig) -> List[BasisIndex]:
    labels = []
    for family in lie_families(cfg):
        labels.extend(BasisIndex(family, i) for i in window_indices(family, window))
    return labels


def table_c2(window: int, cfg: PunctureConfig, R: Optional[ProjectiveConnection] = None,
             check: bool = True) -> StructureTable:
    """All c(X_p, Y_q) with |p|, |q| <= window; asserted against the closed forms when R = 0."""
    logger.info("Building 2-cocycle table for %s, window %d", cfg.mode, window)
    table = StructureTable("c2", cfg.mode)
    labels = lie_labels(window, cfg)
    elements = {label: SuperElement.of_basis(label, cfg) for label in labels}
    for left in labels:
        for right in labels:
            if left.parity != right.parity:
                continue
            value = cocycle2(elements[left], elements[right], R, cfg)
            if check and R is None and value != closed_form_c(left, right):
                raise TableMismatch(f"c({left}, {right}) = {value}, expected {closed_form_c(left, right)}")
            table.set_pair(left, right, value)
    logger.info("2-cocycle table has %d nonzero entries", len(table.pairs))
    return table


def closed_form_C1_L(label: BasisIndex) -> Dict[BasisIndex, Scalar]:
    """Tabulated dual expansion of C_0(X_n), line by line: X*_{-n}, X*_{-n+2}, X*_{-n+4}."""
    out: Dict[BasisIndex, Scalar] = {}
    t = label.index.twice

    def put(family: str, twice: int, value: Scalar) -> None:
        if not value.is_zero():
            out[BasisIndex(family, HalfInt(twice))] = value

    if label.family == "V":
        n = t // 2
        if n % 2 == 0:
            put("Vdual", -t, Scalar.from_int(-n * (n - 1) * (n + 1)))
            put("Vdual", -t + 4, alpha_pow(2) * (-2 * n * (n - 2) * (n - 1)))
            put("Vdual", -t + 8, alpha_pow(4) * (-n * (n - 2) * (n - 4)))
        else:
            put("Vdual", -t, Scalar.from_int(-(n + 1) * n * (n - 1)))
            put("Vdual", -t + 4, alpha_pow(2) * (-(n + 1) * (n - 1) * (n - 3)))
        return out
    if label.family == "phi":
        i = label.index.value
        half = Fraction(1, 2)
        put("phidual", -t, Scalar.from_rational(2 * (i + half) * (i - half)))
        if (t - 1) % 4 == 0:
            tail = 2 * (i - half) * (i - 5 * half)
        else:
            tail = 2 * (i + half) * (i - 3 * half)
        put("phidual", -t + 4, alpha_pow(2) * Scalar.from_rational(tail))
        return out
    if label.family == "e":
        n = t // 2
        put("edual", -t, Scalar.from_int(-(n ** 3 - n)))
        return out
    if label.family == "b":
        i = label.index.value
        put("bdual", -t, Scalar.from_rational(2 * (i * i - Fraction(1, 4))))
        return out
    raise InvalidFamilyForConfig(f"{label} is not a basis element of the Lie superalgebra")


def table_C1_L(window: int, cfg: PunctureConfig, R: Optional[ProjectiveConnection] = None,
               check: bool = True) -> StructureTable:
    logger.info("Building Lie 1-cocycle table for %s, window %d", cfg.mode, window)
    table = StructureTable("C1L", cfg.mode)
    for label in lie_labels(window, cfg):
        image = onecocycle_L(SuperElement.of_basis(label, cfg), R)
        part = image.odd if label.parity else image.even
        coeffs = expand_in_dual_basis(part, window + 4, cfg, "L").require_exact().as_dict()
        if check and R is None and coeffs != closed_form_C1_L(label):
            raise TableMismatch(f"C({label}) does not match its closed form")
        table.set_map(label, coeffs)
    return table


# -- non-triviality --

def nontriviality_check(cfg: PunctureConfig, pair_window: int = 4, support_window: int = 6) -> bool:
    """True when no functional f on window-bounded coefficients has c_0(x,y) = f([x,y]).

    The unknowns are f(X_n) for basis labels with |n| <= support_window; one
    equation per basis pair with indices within pair_window.
    """
    logger.info("Non-triviality solve for %s: pairs %d, support %d", cfg.mode, pair_window, support_window)
    unknowns = lie_labels(support_window, cfg)
    system: LinearSystem = LinearSystem(unknowns)
    labels = lie_labels(pair_window, cfg)
    elements = {label: SuperElement.of_basis(label, cfg) for label in labels}
    for left in labels:
        for right in labels:
            if left.parity != right.parity or right < left:
                continue
            x, y = elements[left], elements[right]
            bracket = sbracket(x, y)
            row: Dict[BasisIndex, Scalar] = {}
            inside = True
            for part in (bracket.even, bracket.odd):
                if part.is_zero():
                    continue
                expansion = expand_in_basis(part, support_window, cfg)
                inside = inside and expansion.exact
                row.update(expansion.as_dict())
            # brackets leaving the support would involve unknowns we do not carry
            if not inside:
                continue
            if not system.add_equation(row, cocycle2(x, y, None, cfg)):
                logger.info("Inconsistent at pair (%s, %s) after %d equations", left, right, system.equations)
                return True
    return not system.consistent

