"""
Module: merofun.py

Rational functions of z over K whose poles sit on linear factors (z - p).

A ``MeroFun`` stores an expanded numerator and an exponent map over the pole
points, so pole confinement and residues are structural. In strict mode the
pole points must belong to the puncture set of the ``PunctureConfig``
(TwoPoint: {0}, ThreePoint: {alpha, -alpha}); oracle mode accepts any
K-rational point and is used for the z -> 1/z substitution.

Residues use the Taylor coefficient of order p-1 of (z-z0)^p f at z0,
computed from the binomial series of the remaining linear factors, which is
the same number as 1/(p-1)! * lim D^(p-1) ((z-z0)^p f(z)).
"""
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Literal, Optional, Sequence, Tuple

from knsuper.core.coeffield import ONE, ZERO, Scalar, as_scalar, join_terms, render_scalar, render_term
from knsuper.core.errors import DomainError, IncompatibleConfig, StrayPole

Poly = Tuple[Scalar, ...]


@dataclass(frozen=True)
class PunctureConfig:
    mode: Literal["TwoPoint", "ThreePoint"]
    oracle: bool = False

    @classmethod
    def two_point(cls) -> "PunctureConfig":
        return cls("TwoPoint")

    @classmethod
    def three_point(cls) -> "PunctureConfig":
        return cls("ThreePoint")

    @property
    def in_points(self) -> Tuple[Scalar, ...]:
        if self.mode == "TwoPoint":
            return (ZERO,)
        alpha = Scalar.alpha()
        return (alpha, -alpha)

    @property
    def out_points(self) -> Tuple[str, ...]:
        return ("inf",)

    def allowed_points(self) -> Tuple[Scalar, ...]:
        return self.in_points

    def as_oracle(self) -> "PunctureConfig":
        return replace(self, oracle=True)

    def as_strict(self) -> "PunctureConfig":
        return replace(self, oracle=False)


def merge_configs(a: PunctureConfig, b: PunctureConfig) -> PunctureConfig:
    if a.mode != b.mode:
        raise IncompatibleConfig(f"cannot combine {a.mode} and {b.mode} functions")
    return a if a.oracle or not b.oracle else b


# -- dense polynomials in z, coefficient tuples from low to high degree --

def _trim(coeffs: Iterable[Scalar]) -> Poly:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def _padd(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    return _trim([c + g[k] if k < len(g) else c for k, c in enumerate(f)])


def _pscale(f: Poly, c: Scalar) -> Poly:
    if c.is_zero():
        return ()
    return _trim(x * c for x in f)


def _pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _pderiv(f: Poly) -> Poly:
    return _trim(c * k for k, c in enumerate(f) if k > 0)


def _peval(f: Poly, point: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(f):
        acc = acc * point + c
    return acc


def _pdiv_linear(f: Poly, point: Scalar) -> Tuple[Poly, Scalar]:
    """Synthetic division by (z - point): quotient and remainder f(point)."""
    if not f:
        return (), ZERO
    quot = [ZERO] * (len(f) - 1)
    acc = ZERO
    for k in range(len(f) - 1, 0, -1):
        acc = acc * point + f[k]
        quot[k - 1] = acc
    return tuple(quot), acc * point + f[0]


@lru_cache(maxsize=1024)
def _linear_power(point: Scalar, k: int) -> Poly:
    """(z - point)^k expanded, k >= 0."""
    base = (-point, ONE) if not point.is_zero() else (ZERO, ONE)
    out: Poly = (ONE,)
    for _ in range(k):
        out = _pmul(out, base)
    return out


class MeroFun:
    """numerator / prod (z - p)^e_p, reduced so no pole factor divides the numerator."""

    __slots__ = ("numer", "poles", "cfg", "_hash")

    def __init__(self, numer: Sequence[Scalar], poles: Optional[Dict[Scalar, int]], cfg: PunctureConfig):
        numer = _trim(as_scalar(c) for c in numer)
        poles = {p: e for p, e in (poles or {}).items() if e > 0}
        if not numer:
            poles = {}
        for p in list(poles):
            e = poles[p]
            while e > 0:
                quot, rem = _pdiv_linear(numer, p)
                if not rem.is_zero():
                    break
                numer = quot
                e -= 1
            if e:
                poles[p] = e
            else:
                del poles[p]
        if not cfg.oracle:
            allowed = cfg.allowed_points()
            for p in poles:
                if p not in allowed:
                    raise StrayPole(f"pole at z = {render_scalar(p)} outside the {cfg.mode} puncture set")
        self.numer = numer
        self.poles = poles
        self.cfg = cfg
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, value, cfg: PunctureConfig) -> "MeroFun":
        return cls((as_scalar(value),), None, cfg)

    @classmethod
    def zero(cls, cfg: PunctureConfig) -> "MeroFun":
        return cls((), None, cfg)

    @classmethod
    def polynomial(cls, coeffs: Sequence, cfg: PunctureConfig) -> "MeroFun":
        return cls(tuple(as_scalar(c) for c in coeffs), None, cfg)

    @classmethod
    def linear_power(cls, point, k: int, cfg: PunctureConfig) -> "MeroFun":
        point = as_scalar(point)
        if k >= 0:
            return cls(_linear_power(point, k), None, cfg)
        return cls((ONE,), {point: -k}, cfg)

    @classmethod
    def z_power(cls, n: int, cfg: PunctureConfig) -> "MeroFun":
        return cls.linear_power(ZERO, n, cfg)

    # queries

    def is_zero(self) -> bool:
        return not self.numer

    def is_polynomial(self) -> bool:
        return not self.poles

    def degree(self) -> int:
        """Order of growth at infinity: deg numerator minus total pole order."""
        if not self.numer:
            raise DomainError("degree of the zero function")
        return len(self.numer) - 1 - sum(self.poles.values())

    def pole_order(self, point: Scalar) -> int:
        return self.poles.get(point, 0)

    def evaluate(self, point) -> Scalar:
        point = as_scalar(point)
        if point in self.poles:
            raise DomainError(f"evaluation at the pole z = {render_scalar(point)}")
        value = _peval(self.numer, point)
        for p, e in self.poles.items():
            value = value / (point - p) ** e
        return value

    # arithmetic

    def _common(self, other: "MeroFun") -> PunctureConfig:
        return merge_configs(self.cfg, other.cfg)

    def __add__(self, other) -> "MeroFun":
        if not isinstance(other, MeroFun):
            other = MeroFun.constant(as_scalar(other), self.cfg)
        cfg = self._common(other)
        if not other.numer:
            return self.with_config(cfg)
        if not self.numer:
            return other.with_config(cfg)
        poles = dict(self.poles)
        for p, e in other.poles.items():
            poles[p] = max(poles.get(p, 0), e)
        left, right = self.numer, other.numer
        for p, e in poles.items():
            left = _pmul(left, _linear_power(p, e - self.poles.get(p, 0)))
            right = _pmul(right, _linear_power(p, e - other.poles.get(p, 0)))
        return MeroFun(_padd(left, right), poles, cfg)

    __radd__ = __add__

    def __neg__(self) -> "MeroFun":
        return MeroFun(tuple(-c for c in self.numer), self.poles, self.cfg)

    def __sub__(self, other) -> "MeroFun":
        if not isinstance(other, MeroFun):
            other = MeroFun.constant(as_scalar(other), self.cfg)
        return self + (-other)

    def __rsub__(self, other) -> "MeroFun":
        return (-self) + other

    def __mul__(self, other) -> "MeroFun":
        if not isinstance(other, MeroFun):
            return self.scale(as_scalar(other))
        cfg = self._common(other)
        poles = dict(self.poles)
        for p, e in other.poles.items():
            poles[p] = poles.get(p, 0) + e
        return MeroFun(_pmul(self.numer, other.numer), poles, cfg)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "MeroFun":
        return MeroFun(_pscale(self.numer, as_scalar(factor)), self.poles, self.cfg)

    def power(self, k: int) -> "MeroFun":
        if k < 0:
            return self.inverse().power(-k)
        result = MeroFun.constant(ONE, self.cfg)
        for _ in range(k):
            result = result * self
        return result

    def __pow__(self, k: int) -> "MeroFun":
        return self.power(k)

    def inverse(self) -> "MeroFun":
        """1/f, defined when the numerator splits over the allowed points."""
        if not self.numer:
            raise DomainError("inverse of the zero function")
        numer = self.numer
        zeros: Dict[Scalar, int] = {}
        candidates = set(self.cfg.allowed_points()) | {ZERO}
        for p in candidates:
            while len(numer) > 1:
                quot, rem = _pdiv_linear(numer, p)
                if not rem.is_zero():
                    break
                numer = quot
                zeros[p] = zeros.get(p, 0) + 1
        if len(numer) != 1:
            raise DomainError("numerator does not split over the puncture set; 1/f would have stray poles")
        lead = numer[0].inverse()
        out: Poly = (lead,)
        for p, e in self.poles.items():
            out = _pmul(out, _linear_power(p, e))
        return MeroFun(out, zeros, self.cfg)

    def derivative(self) -> "MeroFun":
        if not self.poles:
            return MeroFun(_pderiv(self.numer), None, self.cfg)
        points = list(self.poles)
        full: Poly = (ONE,)
        for p in points:
            full = _pmul(full, _linear_power(p, 1))
        numer = _pmul(_pderiv(self.numer), full)
        for p in points:
            rest: Poly = (ONE,)
            for q in points:
                if q != p:
                    rest = _pmul(rest, _linear_power(q, 1))
            numer = _padd(numer, _pscale(_pmul(self.numer, rest), as_scalar(-self.poles[p])))
        return MeroFun(numer, {p: e + 1 for p, e in self.poles.items()}, self.cfg)

    def with_config(self, cfg: PunctureConfig) -> "MeroFun":
        if cfg == self.cfg:
            return self
        return MeroFun(self.numer, self.poles, cfg)

    def substitute_inverse(self) -> "MeroFun":
        """f(1/z), returned in oracle mode (poles move to 1/p and possibly 0)."""
        cfg = self.cfg.as_oracle()
        if not self.numer:
            return MeroFun.zero(cfg)
        n = len(self.numer) - 1
        reversed_numer = tuple(reversed(self.numer))
        shift = sum(self.poles.values()) - n
        const = ONE
        poles: Dict[Scalar, int] = {}
        for p, e in self.poles.items():
            if p.is_zero():
                continue
            const = const * (-p) ** (-e)
            poles[p.inverse()] = e
        numer = _pscale(reversed_numer, const)
        if shift >= 0:
            numer = (ZERO,) * shift + numer
        else:
            poles[ZERO] = -shift
        return MeroFun(numer, poles, cfg)

    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeroFun):
            return NotImplemented
        return (
            self.cfg.mode == other.cfg.mode
            and self.numer == other.numer
            and self.poles == other.poles
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cfg.mode, self.numer, frozenset(self.poles.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MeroFun({render_merofun(self)})"

    def __str__(self) -> str:
        return render_merofun(self)


def mf_arith(f: MeroFun, g: MeroFun, op: str) -> MeroFun:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unsupported function operation: {op}")


def mf_derivative(f: MeroFun) -> MeroFun:
    return f.derivative()


def residue_at(f: MeroFun, z0) -> Scalar:
    """Residue of f dz at the finite point z0 (zero where f is holomorphic)."""
    z0 = as_scalar(z0)
    order = f.poles.get(z0, 0)
    if order == 0:
        return ZERO
    top = order - 1

    # Taylor coefficients of the numerator at z0, up to t^top.
    numer = f.numer
    if z0.is_zero():
        series = [numer[j] if j < len(numer) else ZERO for j in range(order)]
    else:
        powers = [ONE]
        for _ in range(len(numer)):
            powers.append(powers[-1] * z0)
        series = []
        for j in range(order):
            acc = ZERO
            for k in range(j, len(numer)):
                if not numer[k].is_zero():
                    acc = acc + numer[k] * (comb(k, j) * powers[k - j])
            series.append(acc)

    # (z0 - q + t)^(-e) = c^(-e) * sum_j binom(-e, j) (t/c)^j with c = z0 - q.
    for q, e in f.poles.items():
        if q == z0:
            continue
        inv = (z0 - q).inverse()
        lead = inv ** e
        factor = []
        step = lead
        for j in range(order):
            sign = -1 if j % 2 else 1
            factor.append(step * (sign * comb(e + j - 1, j)))
            step = step * inv
        series = [
            sum((series[i] * factor[j - i] for i in range(j + 1)), ZERO)
            for j in range(order)
        ]
    return series[top]


def residue_at_infinity(f: MeroFun) -> Scalar:
    """Res_inf(f) = -Res_0(f(1/z) / z^2)."""
    if f.is_zero():
        return ZERO
    g = f.substitute_inverse() * MeroFun.z_power(-2, f.cfg.as_oracle())
    return -residue_at(g, ZERO)


def cycle_integral(f: MeroFun, cfg: PunctureConfig) -> Scalar:
    """(1/2 pi i) times the integral over a cycle separating in-points from infinity."""
    merge_configs(f.cfg, cfg)
    allowed = cfg.allowed_points()
    for p in f.poles:
        if p not in allowed:
            raise StrayPole(f"pole at z = {render_scalar(p)} outside the {cfg.mode} puncture set")
    total = ZERO
    for p in cfg.in_points:
        total = total + residue_at(f, p)
    return total


def _render_point_factor(point: Scalar) -> str:
    if point.is_zero():
        return "z"
    neg = -point
    text = render_scalar(neg)
    if " " in text or text.startswith("("):
        text = f"({text})"
    if text.startswith("-"):
        return f"(z - {text[1:]})"
    return f"(z + {text})"


def render_polynomial(numer: Poly) -> str:
    terms = []
    for k in range(len(numer) - 1, -1, -1):
        c = numer[k]
        if c.is_zero():
            continue
        if k == 0:
            text = render_scalar(c)
            terms.append(f"({text})" if text.startswith("(") and " " not in text else text)
            continue
        mono = "z" if k == 1 else f"z^{k}"
        terms.append(render_term(c, mono))
    return join_terms(terms)


def render_merofun(f: MeroFun) -> str:
    """Expanded numerator over ``z^a*(z-al)^b*(z+al)^c``."""
    numer = render_polynomial(f.numer)
    if not f.poles:
        return numer
    factors = []
    for p in sorted(f.poles, key=render_scalar):
        base = _render_point_factor(p)
        e = f.poles[p]
        factors.append(base if e == 1 else f"{base}^{e}")
    if " " in numer:
        numer = f"({numer})"
    return f"{numer}/({'*'.join(factors)})"
