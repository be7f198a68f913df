"""
Module: grammar.py

LALR grammar of the ``knsuper eval`` expression language and the transformer
producing ``knsuper.cli.expr`` nodes.

    bracket(V[0], V[1])          C1J(G[3])          2*al*G[-1] + G[0]
    c2(phi[5/2], phi[-5/2])      pair(V*[2], V[2])  (z^2 - al^2)^(-1)
"""
from fractions import Fraction
from functools import lru_cache

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from knsuper.cli.expr import (
    CALLS,
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
from knsuper.core.densities import FAMILIES, LABEL_TO_FAMILY, HalfInt
from knsuper.core.errors import KNError, ParseError

GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product          -> add
    | sum "-" product          -> sub

?product: unary
    | product "*" unary        -> mul
    | product "/" unary        -> div

?unary: power
    | "-" unary                -> neg

?power: atom
    | atom "^" INT             -> pow_pos
    | atom "^" "(" INT ")"     -> pow_pos
    | atom "^" "(" "-" INT ")" -> pow_neg
    | atom "^" "-" INT         -> pow_neg

?atom: FAMILY "[" INDEX "]"    -> basis
    | CALL "(" [sum ("," sum)*] ")" -> call
    | INT                      -> integer
    | "al"                     -> alpha
    | "rt"                     -> beta
    | "s"                      -> sqrt2
    | "z"                      -> zvar
    | "(" sum ")"

FAMILY: /(V|phi|G|eps|e|b|a)\*?(?=\[)/
CALL: /[A-Za-z_][A-Za-z0-9_]*(?=\()/
INDEX: /-?\d+(\/\d+)?/
INT: /\d+/

%import common.WS
%ignore WS
"""


@v_args(inline=True)
class ExprBuilder(Transformer):
    def add(self, left, right) -> Expr:
        return Add(left, right)

    def sub(self, left, right) -> Expr:
        return Sub(left, right)

    def mul(self, left, right) -> Expr:
        return Mul(left, right)

    def div(self, left, right) -> Expr:
        return Div(left, right)

    def neg(self, arg) -> Expr:
        return Neg(arg)

    def pow_pos(self, base, exponent: Token) -> Expr:
        return Pow(base, int(exponent))

    def pow_neg(self, base, exponent: Token) -> Expr:
        return Pow(base, -int(exponent))

    def basis(self, family: Token, index: Token) -> Expr:
        name = LABEL_TO_FAMILY[str(family)]
        try:
            value = Fraction(str(index))
        except ZeroDivisionError:
            value = None
        if value is None or value.denominator not in (1, 2):
            raise ParseError(f"index {index} is neither an integer nor p/2", index.start_pos, ("INDEX",))
        half = HalfInt(int(2 * value))
        if FAMILIES[name].integral != half.is_integer():
            kind = "an integer" if FAMILIES[name].integral else "a half-odd"
            raise ParseError(f"{family} needs {kind} index, got {index}", index.start_pos, ("INDEX",))
        return BasisAtom(name, half)

    def call(self, name: Token, *args) -> Expr:
        if str(name) not in CALLS:
            raise ParseError(f"unknown function {name}", name.start_pos, sorted(CALLS))
        return Call(str(name), tuple(a for a in args if a is not None))

    def integer(self, token: Token) -> Expr:
        return ScalarLit(Fraction(int(token)))

    def alpha(self) -> Expr:
        return AlphaSym()

    def beta(self) -> Expr:
        return BetaSym()

    def sqrt2(self) -> Expr:
        return Sqrt2Sym()

    def zvar(self) -> Expr:
        return ZVar()


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", lexer="contextual", maybe_placeholders=False)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; ParseError carries the byte offset."""
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as exc:
        if isinstance(exc, UnexpectedEOF):
            pos, expected = len(text), exc.expected
        elif isinstance(exc, UnexpectedToken):
            pos, expected = exc.token.start_pos, exc.expected
            if exc.token.type == "$END":
                pos = len(text)
        elif isinstance(exc, UnexpectedCharacters):
            pos, expected = exc.pos_in_stream, exc.allowed
        else:
            pos, expected = exc.pos_in_stream or 0, ()
        raise ParseError(
            "unexpected input", _byte_offset(text, pos or 0), sorted(expected or ())
        ) from None
    try:
        return ExprBuilder().transform(tree)
    except VisitError as exc:
        orig = exc.orig_exc
        if isinstance(orig, ParseError):
            raise ParseError(orig.message, _byte_offset(text, orig.offset), orig.expected) from None
        if isinstance(orig, KNError):
            raise orig from None
        raise
