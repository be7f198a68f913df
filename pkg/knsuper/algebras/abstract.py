"""
Module: abstract.py

Finite-dimensional super algebras given by structure constants: the tiny
Kaplansky superalgebra K_3, window truncations of AK(1), osp(1|2), and the two
Lie superalgebras attached to an antialgebra (the adjoint superalgebra G_A and
the derivation superalgebra Der(A)), with an explicit osp(1|2) witness search.

Vectors are dicts label -> Scalar. Products of truncated algebras may be
undefined; every operation that meets one returns None.
"""
import json
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Set, Tuple

from knsuper.algebras.antijordan import ak1_product
from knsuper.algebras.graded import sign
from knsuper.core.coeffield import ONE, ZERO, Scalar, render_scalar
from knsuper.core.densities import BasisIndex, HalfInt, window_indices
from knsuper.core.errors import NotFiniteDimensional
from knsuper.core.linsolve import LinearSystem, span_rank
from knsuper.logger.logger import log_path, setup_logger

logger = setup_logger("abstract", log_path("abstract"))

Vector = Dict[str, Scalar]
HALF = Scalar.from_rational("1/2")


def vadd(u: Vector, v: Vector, factor: Scalar = ONE) -> Vector:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, ZERO) + factor * c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vscale(u: Vector, factor) -> Vector:
    return vadd({}, u, Scalar.from_rational(factor) if not isinstance(factor, Scalar) else factor)


@dataclass
class AbstractAlgebra:
    """Graded basis, parities and a (possibly partial) bilinear product."""

    name: str
    kind: Literal["jordan", "lie"]
    parity: Dict[str, int]
    table: Dict[Tuple[str, str], Vector] = field(default_factory=dict)
    undefined: Set[Tuple[str, str]] = field(default_factory=set)

    @property
    def labels(self) -> List[str]:
        return list(self.parity)

    @property
    def even(self) -> List[str]:
        return [x for x, p in self.parity.items() if p == 0]

    @property
    def odd(self) -> List[str]:
        return [x for x, p in self.parity.items() if p == 1]

    @property
    def dims(self) -> Tuple[int, int]:
        return len(self.even), len(self.odd)

    def is_finite(self) -> bool:
        return not self.undefined

    def set(self, x: str, y: str, value: Vector) -> None:
        self.table[(x, y)] = {k: v for k, v in value.items() if not v.is_zero()}

    def basis_product(self, x: str, y: str) -> Optional[Vector]:
        if (x, y) in self.undefined:
            return None
        return self.table.get((x, y), {})

    def mul(self, u: Optional[Vector], v: Optional[Vector]) -> Optional[Vector]:
        if u is None or v is None:
            return None
        out: Vector = {}
        for x, a in u.items():
            for y, b in v.items():
                prod = self.basis_product(x, y)
                if prod is None:
                    return None
                out = vadd(out, prod, a * b)
        return out

    def check_symmetry(self) -> bool:
        """x.y = (-1)^{|x||y|} y.x (jordan) or [x,y] = -(-1)^{|x||y|} [y,x] (lie)."""
        base = 1 if self.kind == "jordan" else -1
        for x in self.labels:
            for y in self.labels:
                a, b = self.basis_product(x, y), self.basis_product(y, x)
                if a is None or b is None:
                    continue
                if a != vscale(b, base * sign(self.parity[x] * self.parity[y])):
                    return False
        return True

    def check_super_jacobi(self) -> bool:
        labels = self.labels
        for x in labels:
            for y in labels:
                for z in labels:
                    px, py, pz = self.parity[x], self.parity[y], self.parity[z]
                    terms = [
                        (self.mul({x: ONE}, self.mul({y: ONE}, {z: ONE})), sign(px * pz)),
                        (self.mul({y: ONE}, self.mul({z: ONE}, {x: ONE})), sign(py * px)),
                        (self.mul({z: ONE}, self.mul({x: ONE}, {y: ONE})), sign(pz * py)),
                    ]
                    if any(t is None for t, _ in terms):
                        continue
                    total: Vector = {}
                    for t, s in terms:
                        total = vadd(total, t, Scalar.from_int(s))
                    if total:
                        logger.debug("super Jacobi fails on (%s, %s, %s)", x, y, z)
                        return False
        return True

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "even": self.even,
            "odd": self.odd,
            "constants": [
                {"left": x, "right": y, "out": k, "value": render_scalar(v)}
                for (x, y), vec in sorted(self.table.items())
                for k, v in sorted(vec.items())
            ],
        }
        return json.dumps(payload, indent=2)


# -- concrete algebras --

def kaplansky_k3() -> AbstractAlgebra:
    """eps.eps = eps, eps.a = 1/2 a, eps.b = 1/2 b, a.b = 1/2 eps."""
    A = AbstractAlgebra("K3", "jordan", {"eps": 0, "a": 1, "b": 1})
    A.set("eps", "eps", {"eps": ONE})
    for odd in ("a", "b"):
        A.set("eps", odd, {odd: HALF})
        A.set(odd, "eps", {odd: HALF})
        A.set(odd, odd, {})
    A.set("a", "b", {"eps": HALF})
    A.set("b", "a", {"eps": -HALF})
    return A


def ak1_truncated(window: int) -> AbstractAlgebra:
    """AK(1) on eps_n, |n| <= window, and a_i, |i| < window; products leaving the window are undefined."""
    labels = [BasisIndex("eps", n) for n in window_indices("eps", window)]
    labels += [BasisIndex("a", i) for i in window_indices("a", window)]
    names = {label: str(label) for label in labels}
    A = AbstractAlgebra(f"AK1[{window}]", "jordan", {names[x]: x.parity for x in labels})
    for x in labels:
        for y in labels:
            coeff, out = ak1_product(x, y)
            if out not in names:
                A.undefined.add((names[x], names[y]))
            else:
                A.set(names[x], names[y], {names[out]: coeff})
    return A


def osp12_table() -> AbstractAlgebra:
    """[e_n,e_m] = (m-n) e_{n+m}, [e_n,b_i] = (i - n/2) b_{i+n}, [b_i,b_j] = e_{i+j}."""
    evens = [BasisIndex("e", HalfInt(2 * n)) for n in (-1, 0, 1)]
    odds = [BasisIndex("b", HalfInt(t)) for t in (-1, 1)]
    A = AbstractAlgebra("osp12", "lie", {**{str(x): 0 for x in evens}, **{str(x): 1 for x in odds}})

    def name(family: str, twice: int) -> Optional[str]:
        label = str(BasisIndex(family, HalfInt(twice)))
        return label if label in A.parity else None

    for x in evens:
        n = x.index.value
        for y in evens:
            m = y.index.value
            target = name("e", x.index.twice + y.index.twice)
            A.set(str(x), str(y), {target: Scalar.from_rational(m - n)} if target else {})
        for y in odds:
            i = y.index.value
            target = name("b", x.index.twice + y.index.twice)
            value = {target: Scalar.from_rational(i - n / 2)} if target else {}
            A.set(str(x), str(y), value)
            A.set(str(y), str(x), vscale(value, -1))
    for x in odds:
        for y in odds:
            A.set(str(x), str(y), {name("e", x.index.twice + y.index.twice): ONE})
    return A


# -- adjoint superalgebra --

def _sym_label(a: str, b: str) -> str:
    return f"{a}@{b}"


def adjoint_superalgebra(A: AbstractAlgebra) -> AbstractAlgebra:
    """G_A = (A_1 (x) A_1)/S + A_1 with the bracket built from the product of A."""
    odd, even = A.odd, A.even
    logger.info("Building adjoint superalgebra of %s (%d odd generators)", A.name, len(odd))
    pairs = [(a, b) for a in odd for b in odd]
    relations = LinearSystem(pairs, prefer_last=True)
    for a in odd:
        for b in odd:
            if a != b:
                relations.add_equation({(a, b): ONE, (b, a): -ONE})
            for alpha in even:
                left = A.basis_product(a, alpha)
                right = A.basis_product(b, alpha)
                if left is None or right is None:
                    continue
                row: Dict = {}
                for x, c in left.items():
                    row[(x, b)] = row.get((x, b), ZERO) + c
                for y, c in right.items():
                    row[(a, y)] = row.get((a, y), ZERO) - c
                row = {k: v for k, v in row.items() if not v.is_zero()}
                if row:
                    relations.add_equation(row)
    classes = relations.free_unknowns()

    def sym(u: Optional[Vector], v: Optional[Vector]) -> Optional[Vector]:
        """Class of u (x) v in G_0."""
        if u is None or v is None:
            return None
        tensor = {}
        for x, a in u.items():
            for y, b in v.items():
                tensor[(x, y)] = tensor.get((x, y), ZERO) + a * b
        reduced, _ = relations.reduce(tensor)
        return {_sym_label(*k): c for k, c in reduced.items()}

    parity = {_sym_label(a, b): 0 for a, b in classes}
    parity.update({a: 1 for a in odd})
    G = AbstractAlgebra(f"G[{A.name}]", "lie", parity)

    def mark(x: str, y: str, value: Optional[Vector]) -> None:
        if value is None:
            G.undefined.add((x, y))
        else:
            G.set(x, y, value)

    def times(u: str, v: Optional[Vector]) -> Optional[Vector]:
        return A.mul({u: ONE}, v)

    for a in odd:
        for b in odd:
            mark(a, b, sym({a: ONE}, {b: ONE}))
    for a, b in classes:
        ab = _sym_label(a, b)
        for c in odd:
            first = times(a, times(b, {c: ONE}))
            second = times(b, times(a, {c: ONE}))
            value = None if first is None or second is None else vadd(first, second)
            mark(ab, c, value)
            mark(c, ab, None if value is None else vscale(value, -1))
        for c, d in classes:
            cd = _sym_label(c, d)
            u = times(a, times(b, {c: ONE}))
            v = times(b, times(a, {d: ONE}))
            left = sym(u, {d: ONE})
            right = sym(v, {c: ONE})
            if left is None or right is None:
                mark(ab, cd, None)
            else:
                mark(ab, cd, vadd(vscale(left, 2), vscale(right, 2)))
    logger.info("Adjoint superalgebra has dimension (%d|%d)", *G.dims)
    return G


# -- derivations --

@dataclass
class DerivationSpace:
    even: List[Dict[Tuple[str, str], Scalar]]
    odd: List[Dict[Tuple[str, str], Scalar]]

    @property
    def dims(self) -> Tuple[int, int]:
        return len(self.even), len(self.odd)


def apply_map(D: Dict[Tuple[str, str], Scalar], u: Vector) -> Vector:
    out: Vector = {}
    for (x, y), c in D.items():
        if x in u:
            out = vadd(out, {y: c}, u[x])
    return out


def _derivations_of_parity(A: AbstractAlgebra, p: int) -> List[Dict[Tuple[str, str], Scalar]]:
    labels = A.labels
    unknowns = [(x, y) for x in labels for y in labels if (A.parity[x] + p) % 2 == A.parity[y]]
    system = LinearSystem(unknowns)
    for x in labels:
        for y in labels:
            px = A.parity[x]
            xy = A.basis_product(x, y)
            # D(x.y) - D(x).y - (-1)^{p|x|} x.D(y), coordinate by coordinate
            rows: Dict[str, Dict] = {}

            def add(w: str, key, c: Scalar) -> None:
                row = rows.setdefault(w, {})
                row[key] = row.get(key, ZERO) + c

            for u, cu in xy.items():
                for key in unknowns:
                    if key[0] == u:
                        add(key[1], key, cu)
            for key in unknowns:
                if key[0] == x:
                    for w, c in A.basis_product(key[1], y).items():
                        add(w, key, -c)
                if key[0] == y:
                    for w, c in A.basis_product(x, key[1]).items():
                        add(w, key, -c * sign(p * px))
            for row in rows.values():
                row = {k: v for k, v in row.items() if not v.is_zero()}
                if row:
                    system.add_equation(row)
    return system.nullspace()


def derivations(A: AbstractAlgebra) -> DerivationSpace:
    """Bases of even and odd maps D with D(x.y) = D(x).y + (-1)^{|D||x|} x.D(y)."""
    if not A.is_finite():
        raise NotFiniteDimensional(f"{A.name} has undefined products")
    logger.info("Solving derivation equations for %s", A.name)
    return DerivationSpace(_derivations_of_parity(A, 0), _derivations_of_parity(A, 1))


def derivation_algebra(A: AbstractAlgebra) -> AbstractAlgebra:
    """Der(A) with the supercommutator, in the basis returned by ``derivations``."""
    space = derivations(A)
    basis = [(f"D0_{k}", 0, D) for k, D in enumerate(space.even)]
    basis += [(f"D1_{k}", 1, D) for k, D in enumerate(space.odd)]
    G = AbstractAlgebra(f"Der[{A.name}]", "lie", {name: p for name, p, _ in basis})

    def compose(D: Dict, E: Dict) -> Dict[Tuple[str, str], Scalar]:
        out: Dict[Tuple[str, str], Scalar] = {}
        for x in A.labels:
            image = apply_map(D, apply_map(E, {x: ONE}))
            for y, c in image.items():
                out[(x, y)] = c
        return out

    def coordinates(M: Dict[Tuple[str, str], Scalar]) -> Vector:
        names = [name for name, _, _ in basis]
        system: LinearSystem = LinearSystem(names)
        keys = set(M)
        for _, _, D in basis:
            keys.update(D)
        for key in keys:
            row = {name: D[key] for name, _, D in basis if key in D}
            system.add_equation(row, M.get(key, ZERO))
        if not system.consistent:
            raise NotFiniteDimensional("supercommutator left the derivation space")
        return {name: v for name, v in system.determined().items() if not v.is_zero()}

    for x, px, D in basis:
        for y, py, E in basis:
            commutator = compose(D, E)
            for key, c in compose(E, D).items():
                commutator[key] = commutator.get(key, ZERO) - c * sign(px * py)
            commutator = {k: v for k, v in commutator.items() if not v.is_zero()}
            G.set(x, y, coordinates(commutator))
    return G


# -- osp(1|2) witness --

def osp12_witness(G: AbstractAlgebra) -> Optional[Dict[str, Vector]]:
    """An explicit isomorphism osp(1|2) -> G, or None.

    Images of b[-1/2], b[1/2] are x and y = w/mu where [[x,x],w] = mu x; the even
    images are [x,x], [x,y], [y,y]. The map is accepted after checking every
    structure constant and that the five images are independent.
    """
    if G.dims != (3, 2):
        return None
    o1, o2 = ({k: ONE} for k in G.odd)
    candidates = [o1, o2, vadd(o1, o2), vadd(o1, o2, -ONE)]
    target = osp12_table()
    for x in candidates:
        xx = G.mul(x, x)
        for w in candidates:
            v = G.mul(xx, w)
            if not v or set(v) != set(x):
                continue
            ratio = {v[k] / x[k] for k in x}
            if len(ratio) != 1:
                continue
            mu = ratio.pop()
            y = vscale(w, mu.inverse())
            images = {
                "b[-1/2]": x,
                "b[1/2]": y,
                "e[-1]": xx,
                "e[0]": G.mul(x, y),
                "e[1]": G.mul(y, y),
            }
            if any(img is None for img in images.values()):
                continue
            if span_rank(images.values()) != 5:
                continue
            if _is_homomorphism(target, G, images):
                return images
    return None


def _is_homomorphism(source: AbstractAlgebra, G: AbstractAlgebra, images: Dict[str, Vector]) -> bool:
    for x in source.labels:
        for y in source.labels:
            expected: Vector = {}
            for k, c in source.basis_product(x, y).items():
                expected = vadd(expected, images[k], c)
            if G.mul(images[x], images[y]) != expected:
                return False
    return True


def structure_match(A: AbstractAlgebra) -> bool:
    """Dimension (3|2), super Jacobi and an explicit osp(1|2) witness."""
    return A.dims == (3, 2) and A.check_super_jacobi() and osp12_witness(A) is not None
