"""
Expression parser for noncommutative q-polynomials

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/")? unary)*      juxtaposition is a product
    unary   := ("-" | "+") unary | power
    power   := atom ("^" INTEGER)?
    atom    := NUMBER | IDENT | "(" expr ")"

Identifiers are the scalars ``q``, ``hbar``, ``sqrtq``, ``i`` and the
generator symbols (``x``, ``p``, ``y``, ``L``, ``Linv``, ``a``, ``adag``,
``xt``, ``yt``, ``Lt``, ``Sx``, ``Sy``, ``Sz``). Literals are integers or
decimals and are kept exact. Division is only allowed by scalar monomials.
"""

import collections
import re
from fractions import Fraction
from typing import List

from ..errors import QParseError, UnknownSymbolError
from .coefficients import QCoefficient
from .generators import SYMBOL_TABLE
from .polynomial import QPolynomial

_Token = collections.namedtuple('_Token', ['type', 'data', 'pos'])

_TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)

_SCALARS = {
    'q': lambda: QCoefficient.q(),
    'hbar': lambda: QCoefficient.hbar(),
    'sqrtq': lambda: QCoefficient.q_power(1),
    'i': lambda: QCoefficient.imaginary_unit(),
}

_ATOM_START = ('number', 'ident', '(')


def tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        if not match:
            raise QParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        data = match.group()
        if kind == 'op':
            tokens.append(_Token(data, data, pos))
        elif kind != 'space':
            tokens.append(_Token(kind, data, pos))
        pos = match.end()
    tokens.append(_Token('end', '', len(text)))
    return tokens


class _Parser:

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, kind: str) -> _Token:
        if self.current.type != kind:
            found = self.current.data or "end of input"
            raise QParseError(f"expected {kind!r}, found {found!r}", self.current.pos)
        return self.advance()

    def parse(self) -> QPolynomial:
        if self.current.type == 'end':
            raise QParseError("empty expression", 0)
        result = self.expr()
        if self.current.type != 'end':
            raise QParseError(f"unexpected {self.current.data!r}", self.current.pos)
        return result

    def expr(self) -> QPolynomial:
        result = self.term()
        while self.current.type in ('+', '-'):
            op = self.advance().type
            right = self.term()
            result = result + right if op == '+' else result - right
        return result

    def term(self) -> QPolynomial:
        result = self.unary()
        while True:
            kind = self.current.type
            if kind == '*':
                self.advance()
                result = result * self.unary()
            elif kind == '/':
                token = self.advance()
                result = result * _scalar_inverse(self.unary(), token.pos)
            elif kind in _ATOM_START:
                result = result * self.unary()
            else:
                return result

    def unary(self) -> QPolynomial:
        if self.current.type == '-':
            self.advance()
            return -self.unary()
        if self.current.type == '+':
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> QPolynomial:
        base = self.atom()
        if self.current.type == '^':
            self.advance()
            token = self.current
            if token.type != 'number' or not token.data.isdigit():
                raise QParseError("exponent must be a non-negative integer", token.pos)
            self.advance()
            return base ** int(token.data)
        return base

    def atom(self) -> QPolynomial:
        token = self.current
        if token.type == 'number':
            self.advance()
            return QPolynomial.scalar(Fraction(token.data))
        if token.type == 'ident':
            self.advance()
            if token.data in _SCALARS:
                return QPolynomial.scalar(_SCALARS[token.data]())
            if token.data in SYMBOL_TABLE:
                return QPolynomial.generator(SYMBOL_TABLE[token.data])
            raise UnknownSymbolError(f"unknown symbol {token.data!r}", token.pos)
        if token.type == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        found = token.data or "end of input"
        raise QParseError(f"expected an operand, found {found!r}", token.pos)


def _scalar_inverse(divisor: QPolynomial, pos: int) -> QPolynomial:
    terms = divisor.terms
    if len(terms) != 1 or () not in terms:
        raise QParseError("division is only defined by scalar monomials", pos)
    coefficient = terms[()]
    if not coefficient.is_monomial:
        raise QParseError("division is only defined by scalar monomials", pos)
    return QPolynomial.scalar(coefficient.inverse())


def parse(text: str) -> QPolynomial:
    """
    Parse ``text`` into a raw (not normal-ordered) QPolynomial.

    Raises:
        QParseError: syntax error, with the offending character position
        UnknownSymbolError: identifier that is neither a scalar nor a generator
    """
    return _Parser(text).parse()
