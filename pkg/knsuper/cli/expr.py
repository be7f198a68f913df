"""
Expression syntax tree for the command line, and its canonical rendering.

``render_expr`` prints the minimal parenthesisation for the grammar's
precedence (``+ -`` < ``* /`` < unary ``-`` < ``^``), so parsing the rendering
gives back an equal tree.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from knsuper.core.densities import FAMILIES, HalfInt

CALLS = frozenset(
    {"bracket", "dot", "jprod", "c2", "C1L", "C1J", "pair", "coad", "coadJ", "poisson", "iota"}
)


@dataclass(frozen=True)
class BasisAtom:
    family: str
    index: HalfInt


@dataclass(frozen=True)
class ScalarLit:
    value: Fraction


@dataclass(frozen=True)
class AlphaSym:
    pass


@dataclass(frozen=True)
class BetaSym:
    pass


@dataclass(frozen=True)
class Sqrt2Sym:
    pass


@dataclass(frozen=True)
class ZVar:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]


Expr = Union[BasisAtom, ScalarLit, AlphaSym, BetaSym, Sqrt2Sym, ZVar, Neg, Add, Sub, Mul, Div, Pow, Call]

_ATOM = 5


def _precedence(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return _ATOM


def _wrap(e: Expr, minimum: int) -> str:
    text = render_expr(e)
    return f"({text})" if _precedence(e) < minimum else text


def render_expr(e: Expr) -> str:
    if isinstance(e, BasisAtom):
        return f"{FAMILIES[e.family].label}[{e.index}]"
    if isinstance(e, ScalarLit):
        v = e.value
        text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return f"({text})" if v < 0 else text
    if isinstance(e, AlphaSym):
        return "al"
    if isinstance(e, BetaSym):
        return "rt"
    if isinstance(e, Sqrt2Sym):
        return "s"
    if isinstance(e, ZVar):
        return "z"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, Add):
        return f"{_wrap(e.left, 1)} + {_wrap(e.right, 2)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, 1)} - {_wrap(e.right, 2)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, 2)}*{_wrap(e.right, 3)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, 2)} / {_wrap(e.right, 3)}"
    if isinstance(e, Pow):
        exponent = str(e.exponent) if e.exponent >= 0 else f"({e.exponent})"
        return f"{_wrap(e.base, _ATOM)}^{exponent}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(render_expr(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")
