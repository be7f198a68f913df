"""
Module: coeffield.py

Exact arithmetic in the coefficient field K = Q(sqrt2)(beta), where beta is a
formal square root of the puncture parameter alpha (alpha = beta**2).

Three layers:

* ``Rational``: the exact rational type of sympy's ``QQ`` domain.
* ``Q2``: elements a + b*s of Q(sqrt2), with s**2 = 2.
* ``BetaPoly``: sparse polynomials in beta with Q2 coefficients, and
  ``Scalar``: reduced fractions of two BetaPolys with a monic denominator.

Scalars are immutable and always canonical, so equality and hashing are
structural.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple, Union

from sympy.polys.domains import QQ

from knsuper.core.errors import DivisionByZero, PoleAtSpecialization

Rational = QQ.dtype
RationalLike = Union[int, Fraction, str, "Rational"]

_QZERO = QQ(0)
_QONE = QQ(1)


def to_rational(value: RationalLike) -> Rational:
    """Coerce ints, fractions and ``"p/q"`` strings into ``Rational``."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            if int(q) == 0:
                raise DivisionByZero("zero denominator in rational literal %r" % value)
            return QQ(int(p), int(q))
        return QQ(int(text))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def render_rational(value: Rational) -> str:
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


class Q2:
    """a + b*s with a, b rational and s**2 = 2."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational, b: Rational = _QZERO):
        self.a = a
        self.b = b

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike = 0) -> "Q2":
        return cls(to_rational(a), to_rational(b))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_one(self) -> bool:
        return self.a == 1 and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def __add__(self, other: "Q2") -> "Q2":
        return Q2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Q2") -> "Q2":
        return Q2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Q2":
        return Q2(-self.a, -self.b)

    def __mul__(self, other: "Q2") -> "Q2":
        if not self.b and not other.b:
            return Q2(self.a * other.a, _QZERO)
        return Q2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def conj(self) -> "Q2":
        return Q2(self.a, -self.b)

    def norm(self) -> Rational:
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "Q2":
        if not self.b:
            if not self.a:
                raise DivisionByZero("inverse of zero in Q(sqrt2)")
            return Q2(_QONE / self.a, _QZERO)
        n = self.norm()
        return Q2(self.a / n, -self.b / n)

    def __truediv__(self, other: "Q2") -> "Q2":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Q2):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"Q2({render_rational(self.a)}, {render_rational(self.b)})"


Q2_ZERO = Q2(_QZERO, _QZERO)
Q2_ONE = Q2(_QONE, _QZERO)
Q2_S = Q2(_QZERO, _QONE)


class BetaPoly:
    """Sparse polynomial in beta: exponent -> nonzero Q2 coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[int, Q2]):
        self.terms = terms
        self._hash = None

    @classmethod
    def monomial(cls, coeff: Q2, exponent: int = 0) -> "BetaPoly":
        if coeff.is_zero():
            return BETA_ZERO
        return cls({exponent: coeff})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Q2]) -> "BetaPoly":
        return cls({k: c for k, c in enumerate(coeffs) if not c.is_zero()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        c = self.terms.get(0)
        return c is not None and c.is_one()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def valuation(self) -> int:
        return min(self.terms)

    def leading(self) -> Q2:
        return self.terms[self.degree()]

    def dense(self) -> List[Q2]:
        out = [Q2_ZERO] * (self.degree() + 1)
        for k, c in self.terms.items():
            out[k] = c
        return out

    def __add__(self, other: "BetaPoly") -> "BetaPoly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return BetaPoly(out)

    def __neg__(self) -> "BetaPoly":
        return BetaPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BetaPoly") -> "BetaPoly":
        return self + (-other)

    def __mul__(self, other: "BetaPoly") -> "BetaPoly":
        if not self.terms or not other.terms:
            return BETA_ZERO
        if len(other.terms) == 1:
            (j, d), = other.terms.items()
            return BetaPoly({k + j: c * d for k, c in self.terms.items()})
        out: Dict[int, Q2] = {}
        for k, c in self.terms.items():
            for j, d in other.terms.items():
                e = k + j
                prev = out.get(e)
                out[e] = c * d if prev is None else prev + c * d
        return BetaPoly({k: c for k, c in out.items() if not c.is_zero()})

    def scale(self, factor: Q2) -> "BetaPoly":
        if factor.is_zero():
            return BETA_ZERO
        return BetaPoly({k: c * factor for k, c in self.terms.items()})

    def shift(self, exponent: int) -> "BetaPoly":
        return BetaPoly({k + exponent: c for k, c in self.terms.items()})

    def conj(self) -> "BetaPoly":
        return BetaPoly({k: c.conj() for k, c in self.terms.items()})

    def monic(self) -> "BetaPoly":
        lc = self.leading()
        if lc.is_one():
            return self
        return self.scale(lc.inverse())

    def evaluate(self, point: Q2) -> Q2:
        acc = Q2_ZERO
        for c in reversed(self.dense()):
            acc = acc * point + c
        return acc

    def divmod(self, other: "BetaPoly") -> Tuple["BetaPoly", "BetaPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = self.dense()
        div = other.dense()
        dd = len(div) - 1
        inv = div[dd].inverse()
        quot = [Q2_ZERO] * max(len(rem) - dd, 0)
        for pos in range(len(rem) - 1, dd - 1, -1):
            c = rem[pos]
            if c.is_zero():
                continue
            q = c * inv
            quot[pos - dd] = q
            for j in range(dd + 1):
                rem[pos - dd + j] = rem[pos - dd + j] - q * div[j]
        return BetaPoly.from_dense(quot), BetaPoly.from_dense(rem[:dd])

    def exact_div(self, other: "BetaPoly") -> "BetaPoly":
        if other.is_monomial():
            (j, d), = other.terms.items()
            inv = d.inverse()
            return BetaPoly({k - j: c * inv for k, c in self.terms.items()})
        quot, rem = self.divmod(other)
        assert rem.is_zero(), "inexact polynomial division"
        return quot

    def __eq__(self, other) -> bool:
        if not isinstance(other, BetaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BetaPoly({self.terms!r})"


BETA_ZERO = BetaPoly({})
BETA_ONE = BetaPoly({0: Q2_ONE})


def poly_gcd(f: BetaPoly, g: BetaPoly) -> BetaPoly:
    """Monic gcd by the Euclidean algorithm, with a shortcut for monomials."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else BETA_ONE
    if g.is_zero():
        return f.monic()
    if f.is_monomial() or g.is_monomial():
        mono, other = (f, g) if f.is_monomial() else (g, f)
        return BetaPoly({min(mono.degree(), other.valuation()): Q2_ONE})
    a, b = f, g
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class Scalar:
    """num/den over Q2[beta]; reduced, with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: BetaPoly, den: BetaPoly = BETA_ONE):
        num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _trusted(cls, num: BetaPoly, den: BetaPoly) -> "Scalar":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_q2(cls, value: Q2) -> "Scalar":
        return cls._trusted(BetaPoly.monomial(value), BETA_ONE)

    @classmethod
    def from_rational(cls, value: RationalLike) -> "Scalar":
        return cls.from_q2(Q2(to_rational(value), _QZERO))

    @classmethod
    def from_int(cls, value: int) -> "Scalar":
        return cls.from_q2(Q2(QQ(value), _QZERO))

    @classmethod
    def beta_power(cls, k: int, coeff: Q2 = Q2_ONE) -> "Scalar":
        if k >= 0:
            return cls._trusted(BetaPoly.monomial(coeff, k), BETA_ONE)
        return cls(BetaPoly.monomial(coeff), BetaPoly.monomial(Q2_ONE, -k))

    @classmethod
    def beta(cls) -> "Scalar":
        return cls.beta_power(1)

    @classmethod
    def alpha(cls) -> "Scalar":
        return cls.beta_power(2)

    @classmethod
    def sqrt2(cls) -> "Scalar":
        return cls.from_q2(Q2_S)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar._trusted(self.num + other.num, BETA_ONE)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._trusted(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar._trusted(self.num * other.num, BETA_ONE)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise DivisionByZero("division by the zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZero("division by the zero scalar")
        if self.num.is_zero():
            return ZERO
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int) -> "Scalar":
        return scalar_pow(self, k)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({render_scalar(self)})"

    def __str__(self) -> str:
        return render_scalar(self)


def _normalize(num: BetaPoly, den: BetaPoly) -> Tuple[BetaPoly, BetaPoly]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return BETA_ZERO, BETA_ONE
    if den.is_one():
        return num, den
    g = poly_gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.leading()
    if not lc.is_one():
        inv = lc.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, Rational)):
        return Scalar.from_rational(value)
    if isinstance(value, Q2):
        return Scalar.from_q2(value)
    return NotImplemented


def as_scalar(value) -> Scalar:
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a scalar")
    return out


ZERO = Scalar._trusted(BETA_ZERO, BETA_ONE)
ONE = Scalar._trusted(BETA_ONE, BETA_ONE)


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Field operation named by ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unsupported scalar operation: {op}")


def scalar_pow(x: Scalar, k: int) -> Scalar:
    if k < 0:
        return scalar_pow(x.inverse(), -k)
    result = ONE
    base = x
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


@lru_cache(maxsize=256)
def alpha_pow(k: int) -> Scalar:
    return Scalar.beta_power(2 * k)


def scalar_eval(x: Scalar, beta_value: RationalLike) -> Q2:
    """Substitute beta <- beta_value exactly."""
    point = Q2(to_rational(beta_value), _QZERO)
    den = x.den.evaluate(point)
    if den.is_zero():
        raise PoleAtSpecialization(
            "denominator of %s vanishes at beta = %s" % (render_scalar(x), render_rational(point.a))
        )
    return x.num.evaluate(point) / den


def _rational_part(poly: BetaPoly, which: str) -> BetaPoly:
    out = {}
    for k, c in poly.terms.items():
        v = c.a if which == "a" else c.b
        if v:
            out[k] = Q2(v, _QZERO)
    return BetaPoly(out)


def _join_terms(terms: List[str]) -> str:
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _render_rational_poly(poly: BetaPoly, var: str, step: int) -> str:
    parts = []
    for k in sorted(poly.terms, reverse=True):
        c = poly.terms[k].a
        e = k // step
        if e == 0:
            parts.append(render_rational(c))
            continue
        mono = var if e == 1 else f"{var}^{e}"
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{render_rational(c)}*{mono}")
    return _join_terms(parts) if parts else "0"


def render_scalar(x: Scalar) -> str:
    """Canonical text: ``(p(al) + q(al)*s)/(r(al))``, with ``rt`` for beta when needed."""
    if x.is_zero():
        return "0"
    num, den = x.num, x.den
    if any(not c.is_rational() for c in den.terms.values()):
        num = num * den.conj()
        den = den * den.conj()
    p = _rational_part(num, "a")
    q = _rational_part(num, "b")
    g = poly_gcd(poly_gcd(den, p), q)
    if not g.is_one():
        p, q, den = p.exact_div(g), q.exact_div(g), den.exact_div(g)
    lc = den.leading()
    if not lc.is_one():
        inv = lc.inverse()
        p, q, den = p.scale(inv), q.scale(inv), den.scale(inv)

    exponents = list(p.terms) + list(q.terms) + list(den.terms)
    var, step = ("al", 2) if all(k % 2 == 0 for k in exponents) else ("rt", 1)

    text = ""
    if not p.is_zero():
        text = _render_rational_poly(p, var, step)
    if not q.is_zero():
        qt = _render_rational_poly(q, var, step)
        if len(q.terms) > 1:
            qs = f"({qt})*s"
        elif qt == "1":
            qs = "s"
        elif qt == "-1":
            qs = "-s"
        else:
            qs = f"{qt}*s"
        text = qs if not text else _join_terms([text, qs])
    if den.is_one():
        return text
    return f"({text})/({_render_rational_poly(den, var, step)})"


def render_q2(value: Q2) -> str:
    return render_scalar(Scalar.from_q2(value))


def render_term(coeff: Scalar, label: str) -> str:
    """Render ``coeff*label`` with the sign folded in and compound scalars parenthesised."""
    if coeff.is_one():
        return label
    if (-coeff).is_one():
        return "-" + label
    text = render_scalar(coeff)
    if " " in text or text.startswith("("):
        text = f"({text})"
    return f"{text}*{label}"


def join_terms(terms: List[str]) -> str:
    if not terms:
        return "0"
    return _join_terms(terms)
