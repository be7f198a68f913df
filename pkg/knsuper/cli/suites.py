"""
Module: suites.py

Named verification suites behind ``knsuper verify``. A suite returns a list of
checks; a check fails instead of raising, so one report always comes back.
Randomized checks draw basis labels from the window with ``random.Random(seed)``
and report the sample count or the first counterexample.
"""
import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Type

from knsuper.algebras.abstract import (
    adjoint_superalgebra,
    ak1_truncated,
    derivation_algebra,
    derivations,
    kaplansky_k3,
    osp12_witness,
    structure_match,
)
from knsuper.algebras.antijordan import (
    IOTA_GENERATORS,
    DualJordanElement,
    JordanElement,
    ak1_product,
    check_antialgebra_axioms,
    check_coadjoint_duality_J,
    check_onecocycle_J,
    iota,
    jordan_families,
    jordan_labels,
    jproduct,
    onecocycle_J,
    table_C1_J,
)
from knsuper.algebras.graded import GradedPair
from knsuper.algebras.liesuper import (
    DualSuperElement,
    ProjectiveConnection,
    SuperElement,
    check_coadjoint_duality,
    check_cocycle2_identities,
    check_onecocycle_L,
    check_super_jacobi,
    check_super_skew,
    coboundary_witness_check,
    lie_families,
    lie_labels,
    nontriviality_check,
    osp12_vanishing_check,
    table_C1_L,
    table_c2,
)
from knsuper.algebras.uniqueness import unique_solver
from knsuper.cli.evaluator import evaluate_connection
from knsuper.cli.models import Check, RunConfig, SuiteReport
from knsuper.core.coeffield import ONE, ZERO, Scalar
from knsuper.core.densities import (
    FAMILIES,
    BasisIndex,
    HalfInt,
    basis,
    basis_of,
    degree_spread,
    dens_dot,
    dens_poisson,
    kn_pairing,
    window_indices,
)
from knsuper.core.errors import KNError
from knsuper.core.merofun import MeroFun, PunctureConfig, residue_at, residue_at_infinity
from knsuper.logger.logger import log_path, setup_logger
from knsuper.monitoring.metrics import CHECKS_TOTAL

logger = setup_logger("suites", log_path("cli"))

TEST_CONNECTIONS = {
    "ThreePoint": ("1", "(z^2 - al^2)^(-1)", "z*(z^2 - al^2)^(-1)"),
    "TwoPoint": ("1", "z^(-1)", "z^(-2)"),
}
THREE_POINT_SUPPORT = {-2, 0, 1, 2, 4}

Suite = Callable[[RunConfig], List[Check]]


def _passed(check_id: str, detail: str = "") -> Check:
    return Check(id=check_id, status="pass", detail=detail)


def _failed(check_id: str, detail: str) -> Check:
    return Check(id=check_id, status="fail", detail=detail)


def _guarded(check_id: str, body: Callable[[], Check]) -> Check:
    try:
        return body()
    except KNError as exc:
        logger.error("Check %s raised %s", check_id, exc, exc_info=True)
        return _failed(check_id, f"{type(exc).__name__}: {exc}")


def _sampled(check_id: str, cases: Iterable[Tuple[str, tuple]], predicate: Callable[..., bool]) -> Check:
    def body() -> Check:
        count = 0
        for text, args in cases:
            if not predicate(*args):
                return _failed(check_id, f"counterexample {text} after {count} samples")
            count += 1
        return _passed(check_id, f"{count} samples")

    return _guarded(check_id, body)


class Sampler:
    """Seeded homogeneous elements: X_p or X_p + c X_q with p, q of one parity."""

    def __init__(self, seed: int, cfg: PunctureConfig, window: int):
        self.rng = random.Random(seed)
        self.cfg = cfg
        self.window = window

    def label(self, families: Sequence[str]) -> BasisIndex:
        family = self.rng.choice(list(families))
        return BasisIndex(family, self.rng.choice(list(window_indices(family, self.window))))

    def element(self, kind: Type[GradedPair], families: Sequence[str]) -> Tuple[str, GradedPair]:
        first = self.label(families)
        x = kind.from_density(basis_of(first, self.cfg))
        if self.rng.random() < 0.3:
            second = self.label([first.family])
            c = self.rng.choice([-2, -1, 1, 2, 3])
            x = x + kind.from_density(basis_of(second, self.cfg).scale(Scalar.from_int(c)))
            return f"{first} + {c}*{second}", x
        return str(first), x

    def cases(self, count: int, arity: int, kind: Type[GradedPair], families: Sequence[str]):
        for _ in range(count):
            drawn = [self.element(kind, families) for _ in range(arity)]
            yield "(" + ", ".join(t for t, _ in drawn) + ")", tuple(x for _, x in drawn)


def _connections(run: RunConfig) -> List[Tuple[str, Optional[ProjectiveConnection]]]:
    cfg = run.puncture
    out: List[Tuple[str, Optional[ProjectiveConnection]]] = [("0", None)]
    texts = list(TEST_CONNECTIONS[cfg.mode])
    if run.connection and run.connection not in texts:
        texts.append(run.connection)
    out.extend((text, evaluate_connection(text, cfg)) for text in texts)
    return out


# -- suites --

def suite_axioms(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    sampler = Sampler(run.seed, cfg, run.window)
    lie = lie_families(cfg)
    elements = {label: JordanElement.of_basis(label, cfg) for label in jordan_labels(run.window, cfg)}

    def basis_triples():
        for triple in itertools.product(elements, repeat=3):
            yield "(" + ", ".join(map(str, triple)) + ")", tuple(elements[label] for label in triple)

    checks = [
        _sampled("lie-skew", sampler.cases(run.samples, 2, SuperElement, lie), check_super_skew),
        _sampled("lie-jacobi", sampler.cases(run.samples, 3, SuperElement, lie), check_super_jacobi),
        # every basis triple of the window, not a sample
        _sampled("antialgebra-axioms", basis_triples(),
                 lambda x, y, z: check_antialgebra_axioms([(x, y, z)])),
    ]

    def embedding() -> Check:
        for x in IOTA_GENERATORS:
            for y in IOTA_GENERATORS:
                coeff, label = ak1_product(x, y)
                if jproduct(iota(x), iota(y)) != iota(label).scale(coeff):
                    return _failed("ak1-embedding", f"iota({x})*iota({y}) != {coeff}*iota({label})")
        return _passed("ak1-embedding", f"{len(IOTA_GENERATORS) ** 2} generator products")

    checks.append(_guarded("ak1-embedding", embedding))
    return checks


def suite_cocycle2(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    checks = []
    for text, R in _connections(run):
        sampler = Sampler(run.seed, cfg, run.window)
        cases = sampler.cases(run.samples, 3, SuperElement, lie_families(cfg))
        checks.append(_sampled(f"cocycle2[R={text}]", cases,
                               lambda x, y, z, R=R: check_cocycle2_identities(x, y, z, R, cfg)))
    return checks


def suite_onecocycle_L(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    checks = []
    for text, R in _connections(run):
        sampler = Sampler(run.seed, cfg, run.window)
        cases = sampler.cases(run.samples, 2, SuperElement, lie_families(cfg))
        checks.append(_sampled(f"onecocycleL[R={text}]", cases,
                               lambda x, y, R=R: check_onecocycle_L(x, y, R, cfg)))
    return checks


def suite_onecocycle_J(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    checks = []
    for text, R in _connections(run):
        sampler = Sampler(run.seed, cfg, run.window)
        cases = sampler.cases(run.samples, 2, JordanElement, jordan_families(cfg))
        checks.append(_sampled(f"onecocycleJ[R={text}]", cases,
                               lambda x, y, R=R: check_onecocycle_J(x, y, R)))

    def vanishing() -> Check:
        even, odd = jordan_families(cfg)
        k3 = [BasisIndex.of(even, 0), BasisIndex.of(odd, "-1/2"), BasisIndex.of(odd, "1/2")]
        for label in k3:
            if not onecocycle_J(JordanElement.of_basis(label, cfg)).is_zero():
                return _failed("vanishes-on-K3", f"C({label}) is nonzero")
        return _passed("vanishes-on-K3", ", ".join(str(k) for k in k3))

    checks.append(_guarded("vanishes-on-K3", vanishing))
    return checks


def suite_duality(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    checks = []
    primal = [name for name, spec in FAMILIES.items()
              if spec.mode == cfg.mode and spec.weight.twice <= 0]
    for family in primal:
        def body(family=family) -> Check:
            partner = FAMILIES[family].partner
            indices = list(window_indices(family, run.window))
            for n in indices:
                for m in indices:
                    value = kn_pairing(basis(partner, n, cfg), basis(family, m, cfg), cfg)
                    if value != (ONE if n == m else ZERO):
                        return _failed(f"biorthogonal[{family}]",
                                       f"<{FAMILIES[partner].label}[{n}], {FAMILIES[family].label}[{m}]> = {value}")
            return _passed(f"biorthogonal[{family}]", f"{len(indices)}x{len(indices)} pairings")

        checks.append(_guarded(f"biorthogonal[{family}]", body))

    sampler = Sampler(run.seed, cfg, run.window)

    def lie_cases():
        duals = [FAMILIES[f].partner for f in lie_families(cfg)]
        for _ in range(run.samples):
            tx, x = sampler.element(SuperElement, lie_families(cfg))
            ty, y = sampler.element(SuperElement, lie_families(cfg))
            u = sampler.label(duals)
            yield f"({tx}, {u}, {ty})", (x, DualSuperElement.from_density(basis_of(u, cfg)), y)

    def jordan_cases():
        duals = [FAMILIES[f].partner for f in jordan_families(cfg)]
        for _ in range(run.samples):
            tx, x = sampler.element(JordanElement, jordan_families(cfg))
            ty, y = sampler.element(JordanElement, jordan_families(cfg))
            u = sampler.label(duals)
            yield f"({tx}, {u}, {ty})", (x, DualJordanElement.from_density(basis_of(u, cfg)), y)

    checks.append(_sampled("coadjoint-L", lie_cases(),
                           lambda x, u, y: check_coadjoint_duality(x, u, y, cfg)))
    checks.append(_sampled("coadjoint-J", jordan_cases(),
                           lambda x, u, y: check_coadjoint_duality_J(x, u, y, cfg)))
    return checks


def _render_support(support: Iterable[Fraction]) -> str:
    return "{" + ", ".join(str(HalfInt.of(s)) for s in sorted(support)) + "}"


def _lie_op(x: BasisIndex, y: BasisIndex):
    return dens_dot if x.parity and y.parity else dens_poisson


def _jordan_op(x: BasisIndex, y: BasisIndex):
    return dens_poisson if x.parity and y.parity else dens_dot


def suite_locality(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    allowed = THREE_POINT_SUPPORT if cfg.mode == "ThreePoint" else {0}

    def cocycle_support() -> Check:
        table = table_c2(run.window, cfg, check=False)
        support = {(left.index + right.index).value for left, right in table.pairs}
        detail = f"support {_render_support(support)} within {_render_support(allowed)}"
        if not support <= allowed:
            return _failed("c2-support", detail)
        return _passed("c2-support", detail)

    checks = [_guarded("c2-support", cocycle_support)]

    def spread(check_id: str, labels: List[BasisIndex], op_for, flavor: str) -> Check:
        low, high = Fraction(0), Fraction(0)
        for x in labels:
            for y in labels:
                bounds = degree_spread(x, y, op_for(x, y), cfg, flavor)
                if bounds is None:
                    continue
                low, high = min(low, bounds[0]), max(high, bounds[1])
                if bounds[0] < -2 or bounds[1] > 0:
                    return _failed(check_id, f"({x}, {y}) spreads over {bounds[0]}..{bounds[1]}")
        return _passed(check_id, f"degrees within [{low}, {high}] of p+q")

    checks.append(_guarded("bracket-spread", lambda: spread(
        "bracket-spread", lie_labels(run.window, cfg), _lie_op, "L")))
    checks.append(_guarded("product-spread", lambda: spread(
        "product-spread", jordan_labels(run.window, cfg), _jordan_op, "J")))
    return checks


def suite_connection_independence(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    labels = lie_labels(run.window, cfg)
    elements = {label: SuperElement.of_basis(label, cfg) for label in labels}
    checks = []
    for text, R in _connections(run)[1:]:
        def body(R=R, text=text) -> Check:
            count = 0
            for x in labels:
                for y in labels:
                    if x.parity != y.parity:
                        continue
                    if not coboundary_witness_check(R, elements[x], elements[y], cfg):
                        return _failed(f"coboundary[R={text}]", f"witness fails on ({x}, {y})")
                    count += 1
            return _passed(f"coboundary[R={text}]", f"{count} pairs")

        checks.append(_guarded(f"coboundary[R={text}]", body))
    return checks


def suite_uniqueness(run: RunConfig) -> List[Check]:
    window = max(run.window, 2)

    def body() -> Check:
        solved = unique_solver(window)
        return _passed("ak1-cocycle-unique",
                       f"window {window}: lambda_2^-2 = {solved.lam(2, -2)}, mu_3/2^-3/2 = {solved.mu('3/2', '-3/2')}")

    return [_guarded("ak1-cocycle-unique", body)]


def suite_adjoint(run: RunConfig) -> List[Check]:
    checks = []
    k3 = kaplansky_k3()

    def adjoint_k3() -> Check:
        G = adjoint_superalgebra(k3)
        if not structure_match(G):
            return _failed("adjoint-K3", f"dims {G.dims}; no osp(1|2) match")
        return _passed("adjoint-K3", "dims (3|2), super Jacobi, osp(1|2) witness")

    def derivations_k3() -> Check:
        D = derivations(k3)
        if D.dims != (3, 2):
            return _failed("derivations-K3", f"dims {D.dims}")
        if osp12_witness(derivation_algebra(k3)) is None:
            return _failed("derivations-K3", "no osp(1|2) witness")
        return _passed("derivations-K3", "dims (3|2), osp(1|2) witness")

    def adjoint_ak1() -> Check:
        G = adjoint_superalgebra(ak1_truncated(3))
        if not G.check_super_jacobi():
            return _failed("adjoint-AK1", "super Jacobi fails")
        even, odd = G.dims
        return _passed("adjoint-AK1", f"window 3: dims ({even}|{odd}), super Jacobi")

    checks.append(_guarded("adjoint-K3", adjoint_k3))
    checks.append(_guarded("derivations-K3", derivations_k3))
    checks.append(_guarded("adjoint-AK1", adjoint_ak1))
    return checks


def suite_golden(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    checks = []
    for check_id, build in (("table-c2", table_c2), ("table-C1L", table_C1_L), ("table-C1J", table_C1_J)):
        def body(check_id=check_id, build=build) -> Check:
            table = build(run.window, cfg)
            return _passed(check_id, f"window {run.window}: {len(table.pairs) or len(table.maps)} entries")

        checks.append(_guarded(check_id, body))
    return checks


def _pole_points(rng: random.Random, count: int) -> Set[Fraction]:
    points: Set[Fraction] = set()
    while len(points) < count:
        points.add(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    return points


def _random_merofun(rng: random.Random, cfg: PunctureConfig) -> MeroFun:
    points = _pole_points(rng, rng.randint(1, 3))
    poles = {Scalar.from_rational(p): rng.randint(1, 5) for p in points}
    numer = [Scalar.from_int(rng.randint(-6, 6)) for _ in range(rng.randint(1, 7))]
    return MeroFun(numer, poles, cfg)


def suite_residues(run: RunConfig) -> List[Check]:
    rng = random.Random(run.seed)
    cfg = PunctureConfig.three_point().as_oracle()

    def cases():
        for _ in range(run.samples):
            f = _random_merofun(rng, cfg)
            yield str(f), (f,)

    def total_zero(f: MeroFun) -> bool:
        total = residue_at_infinity(f)
        for p in f.poles:
            total = total + residue_at(f, p)
        return total.is_zero()

    def printed_values() -> Check:
        alpha = Scalar.alpha()
        a_inv = alpha.inverse()
        f = MeroFun((ONE,), {ZERO: 3, a_inv: 1, -a_inv: 1}, cfg).scale(-(a_inv * a_inv))
        g = MeroFun((ONE,), {ZERO: 3}, cfg)
        if residue_at(f, ZERO) != alpha * alpha:
            return _failed("printed-residues", f"Res_0 = {residue_at(f, ZERO)}, expected al^2")
        if not residue_at(g, ZERO).is_zero():
            return _failed("printed-residues", "Res_0(1/z^3) is nonzero")
        return _passed("printed-residues", "Res_0(1/(z^3 (1 - al^2 z^2))) = al^2, Res_0(1/z^3) = 0")

    return [_sampled("total-residue-zero", cases(), total_zero), _guarded("printed-residues", printed_values)]


def suite_osp12(run: RunConfig) -> List[Check]:
    cfg = run.puncture

    def body() -> Check:
        if osp12_vanishing_check(cfg):
            return _passed("osp12-vanishing", "closed under the bracket; c vanishes on all 15 pairs")
        return _failed("osp12-vanishing", "see the suites log for the failing generator pair")

    return [_guarded("osp12-vanishing", body)]


def suite_nontriviality(run: RunConfig) -> List[Check]:
    cfg = run.puncture
    pair_window = min(run.window, 4)

    def body() -> Check:
        detail = f"pairs within {pair_window}, support within {pair_window + 2}"
        if nontriviality_check(cfg, pair_window, pair_window + 2):
            return _passed("nontrivial", f"no coboundary witness: {detail}")
        return _failed("nontrivial", f"a coboundary witness exists: {detail}")

    return [_guarded("nontrivial", body)]


SUITES: Dict[str, Suite] = {
    "axioms": suite_axioms,
    "cocycle2": suite_cocycle2,
    "onecocycleL": suite_onecocycle_L,
    "onecocycleJ": suite_onecocycle_J,
    "duality": suite_duality,
    "locality": suite_locality,
    "connection-independence": suite_connection_independence,
    "uniqueness": suite_uniqueness,
    "adjoint": suite_adjoint,
    "golden": suite_golden,
    "residues": suite_residues,
    "osp12": suite_osp12,
    "nontriviality": suite_nontriviality,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, run: RunConfig) -> SuiteReport:
    names = list(SUITES) if name == "all" else [name]
    report = SuiteReport(suite=name, config=run.summary())
    for suite in names:
        logger.info("Running suite %s (window %d, seed %d, samples %d)", suite, run.window, run.seed, run.samples)
        checks = SUITES[suite](run)
        for check in checks:
            CHECKS_TOTAL.labels(suite=suite, status=check.status).inc()
            if name == "all":
                check = check.model_copy(update={"id": f"{suite}/{check.id}"})
            report.checks.append(check)
        logger.info("Suite %s: %d checks, %d failed", suite, len(checks),
                    sum(c.status == "fail" for c in checks))
    return report
