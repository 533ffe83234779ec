"""
Text expressions for elements of O(SU_q(2)).

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' uint)?
    atom   := 'a' | 'c' | "a'" | "c'" | rational | 'q' | '(' expr ')' | 'star(' expr ')'

A trailing apostrophe stars a single generator; star(...) is the general
involution. Whitespace is insignificant.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

from hopf import algebra
from hopf.algebra import AlgElem
from hopf.scalars import QS
from Qsu2.exceptions import ExponentOverflowError, ExpressionSyntaxError

logger = logging.getLogger(__name__)

MAX_EXPONENT = 64


# AST

@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class QParam:
    pass


@dataclass(frozen=True)
class Generator:
    name: str  # "a" or "c"
    starred: bool = False


@dataclass(frozen=True)
class Star:
    operand: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]  # (sign, node), sign in {1, -1}


Node = Union[Number, QParam, Generator, Star, Power, Product, Sum]


# lexer

class Token(NamedTuple):
    kind: str
    text: str
    position: int


_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<star>star(?=\s*\())
  | (?P<gen>[ac]')
  | (?P<name>[acq])
  | (?P<number>\d+(?:/\d+)?)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "space":
            text = match.group()
            if kind == "name" or kind == "gen":
                kind = "atom"
            elif kind == "op":
                kind = text
            tokens.append(Token(kind, text, pos))
        pos = match.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


# parser

_ATOM_START = {"atom", "number", "star", "("}


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"expected {kind!r}, found {found!r}", self.current.position)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {self.current.text!r}", self.current.position)
        return node

    def expr(self) -> Node:
        sign = 1
        if self.current.kind == "-":
            self.advance()
            sign = -1
        terms = [(sign, self.term())]
        while self.current.kind in ("+", "-"):
            sign = 1 if self.advance().kind == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            if self.current.kind == "*":
                self.advance()
                factors.append(self.factor())
            elif self.current.kind in _ATOM_START:
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.current.kind == "^":
            self.advance()
            token = self.expect("number")
            if "/" in token.text:
                raise ExpressionSyntaxError("exponents must be nonnegative integers", token.position)
            exponent = int(token.text)
            if exponent > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {exponent} exceeds {MAX_EXPONENT}", token.position)
            return Power(base, exponent)
        return base

    def atom(self) -> Node:
        token = self.current
        if token.kind == "atom":
            self.advance()
            if token.text == "q":
                return QParam()
            return Generator(token.text[0], token.text.endswith("'"))
        if token.kind == "number":
            self.advance()
            value = Fraction(token.text)
            return Number(value)
        if token.kind == "star":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Star(inner)
        if token.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"expected an atom, found {found!r}", token.position)


def parse(src: str) -> Node:
    try:
        return Parser(src).parse()
    except ZeroDivisionError:
        raise ExpressionSyntaxError("zero denominator in a rational literal") from None


# evaluation

_GENERATORS = {
    ("a", False): algebra.A,
    ("a", True): algebra.A_STAR,
    ("c", False): algebra.C,
    ("c", True): algebra.C_STAR,
}


def evaluate(node: Node) -> AlgElem:
    if isinstance(node, Number):
        return AlgElem.scalar(node.value)
    if isinstance(node, QParam):
        return AlgElem.scalar(QS)
    if isinstance(node, Generator):
        return _GENERATORS[(node.name, node.starred)]
    if isinstance(node, Star):
        return algebra.star(evaluate(node.operand))
    if isinstance(node, Power):
        return evaluate(node.base) ** node.exponent
    if isinstance(node, Product):
        result = algebra.ONE_ELEM
        for factor in node.factors:
            result = algebra.multiply(result, evaluate(factor))
        return result
    if isinstance(node, Sum):
        total = algebra.ZERO_ELEM
        for sign, term in node.terms:
            value = evaluate(term)
            total = total + value if sign > 0 else total - value
        return total
    raise TypeError(f"not an expression node: {node!r}")


def parse_expression(src: str) -> AlgElem:
    """Parse and normal-order."""
    return evaluate(parse(src))


# printing

def _is_atomic(node: Node) -> bool:
    return isinstance(node, (Number, QParam, Generator, Star))


def pretty(node: Node) -> str:
    if isinstance(node, Number):
        return str(node.value)
    if isinstance(node, QParam):
        return "q"
    if isinstance(node, Generator):
        return node.name + ("'" if node.starred else "")
    if isinstance(node, Star):
        return f"star({pretty(node.operand)})"
    if isinstance(node, Power):
        base = pretty(node.base)
        if not _is_atomic(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Product):
        parts = []
        for factor in node.factors:
            text = pretty(factor)
            parts.append(f"({text})" if isinstance(factor, (Sum, Product)) else text)
        return "*".join(parts)
    if isinstance(node, Sum):
        pieces = []
        for position, (sign, term) in enumerate(node.terms):
            text = pretty(term)
            if isinstance(term, Sum):
                text = f"({text})"
            if position == 0:
                pieces.append(text if sign > 0 else f"-{text}")
            else:
                pieces.append(f" + {text}" if sign > 0 else f" - {text}")
        return "".join(pieces)
    raise TypeError(f"not an expression node: {node!r}")


def unparse(elem: AlgElem) -> Optional[str]:
    """Expression text for an element whose coefficients are rational numbers."""
    pieces = []
    for mono, coeff in elem.sorted_terms():
        if coeff.im or not (coeff.re.numer.is_ground and coeff.re.denom.is_ground):
            return None
        value = Fraction(str(coeff.re.as_expr()))
        word = mono.text()
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        if word == "1":
            body = str(magnitude)
        elif magnitude == 1:
            body = word
        else:
            body = f"{magnitude}*{word}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    text = first if first_sign == "+" else f"-{first}"
    return text + "".join(f" {sign} {body}" for sign, body in pieces[1:])
