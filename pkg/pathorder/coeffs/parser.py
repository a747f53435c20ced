""" Tokenizer and recursive descent parser of the coefficient language.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := number | 't' | lagref | measref | func '(' expr (',' expr)? ')' | '(' expr ')' | '-' factor
    lagref  := 'x[' int '](' signed-number ')'
    measref := 'E[x[' int '](' signed-number ')]' | 'E[supnorm]'
    func    := 'min' | 'max' | 'exp' | 'tanh' | 'abs'

Whitespace is insignificant. Error offsets are 1-based columns of the offending character.
"""

import math
import re
from typing import List, NamedTuple, Tuple

from .nodes import BinOp, FUNCTION_ARITY, Func, Lag, MeanLag, MeanSupNorm, Neg, Node, Num, Time, depth
from ..common.helpers import CoeffSyntaxError, GridError
from ..segments import TimeGrid

__all__ = ("MAX_DEPTH",
           "Token",
           "tokenize",
           "Parser",
           "parse")

MAX_DEPTH = 64

_TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[-+*/()\[\],])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    """ str: :code:`'number'`, :code:`'name'`, :code:`'punct'` or :code:`'end'`. """
    text: str
    offset: int
    """ int: 1-based column of the first character. """


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if not match:
            raise CoeffSyntaxError(f"unexpected character {src[pos]!r}", pos + 1, src)
        if match.lastgroup != 'space':
            tokens.append(Token(match.lastgroup, match.group(), pos + 1))
        pos = match.end()
    tokens.append(Token('end', '', len(src) + 1))
    return tokens


class Parser:
    """ Parses one coefficient source against dimension `d` and `grid`.
    Lags are snapped to grid columns with :meth:`.TimeGrid.lag_index`.
    """

    def __init__(self, src: str, d: int, grid: TimeGrid):
        self.src = src
        self.d = d
        self.grid = grid
        self.tokens = tokenize(src)
        self.pos = 0
        self.nesting = 0

    def parse(self) -> Node:
        if self.tokens[0].kind == 'end':
            raise CoeffSyntaxError("empty expression", 1, self.src)
        node = self.expr()
        if self.peek.kind != 'end':
            self.fail(f"unexpected {self.peek.text!r}")
        if depth(node) > MAX_DEPTH:
            raise CoeffSyntaxError(f"expression tree deeper than {MAX_DEPTH}", 1, self.src)
        return node

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != 'end':
            self.pos += 1
        return token

    def fail(self, reason: str, token: Token = None):
        token = token or self.peek
        raise CoeffSyntaxError(reason, token.offset, self.src)

    def expect(self, text: str) -> Token:
        token = self.peek
        if token.text != text or token.kind not in ('punct', 'name'):
            found = 'end of input' if token.kind == 'end' else repr(token.text)
            self.fail(f"expected {text!r} but found {found}")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.peek.kind == 'punct' and self.peek.text == text:
            self.advance()
            return True
        return False

    def expr(self) -> Node:
        node = self.term()
        while self.peek.kind == 'punct' and self.peek.text in '+-':
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek.kind == 'punct' and self.peek.text in '*/':
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        self.nesting += 1
        if self.nesting > MAX_DEPTH:
            self.fail(f"expression nested deeper than {MAX_DEPTH}")
        try:
            return self._factor()
        finally:
            self.nesting -= 1

    def _factor(self) -> Node:
        token = self.peek
        if token.kind == 'number':
            self.advance()
            return Num(self._number(token))
        if token.kind == 'punct':
            if self.accept('-'):
                return Neg(self.factor())
            if self.accept('('):
                node = self.expr()
                self.expect(')')
                return node
            self.fail(f"unexpected {token.text!r}")
        if token.kind == 'name':
            self.advance()
            if token.text == 't':
                return Time()
            if token.text == 'x':
                coordinate, theta, column = self._lagref()
                return Lag(coordinate, theta, column)
            if token.text == 'E':
                return self._measref()
            if token.text in FUNCTION_ARITY:
                return self._func(token.text)
            self.fail(f"unknown identifier {token.text!r}", token)
        self.fail("unexpected end of input")

    def _number(self, token: Token) -> float:
        value = float(token.text)
        if not math.isfinite(value):
            self.fail(f"number {token.text!r} is not finite", token)
        return value

    def _lagref(self) -> Tuple[int, float, int]:
        """ Parses :code:`[int](signed-number)` after an :code:`x`. """
        self.expect('[')
        index = self.peek
        if index.kind != 'number' or not index.text.isdigit():
            self.fail("expected a coordinate index")
        self.advance()
        coordinate = int(index.text)
        if not 1 <= coordinate <= self.d:
            self.fail(f"index out of range: coordinate {coordinate} not in [1, {self.d}]", index)
        self.expect(']')
        self.expect('(')
        sign = 1.
        if self.peek.kind == 'punct' and self.peek.text in '+-':
            sign = -1. if self.advance().text == '-' else 1.
        lag = self.peek
        if lag.kind != 'number':
            self.fail("expected a lag")
        self.advance()
        theta = sign * self._number(lag)
        try:
            column = self.grid.lag_index(theta)
        except GridError as e:
            self.fail(str(e), lag)
        self.expect(')')
        return coordinate, (column - self.grid.L) * self.grid.dt, column

    def _measref(self) -> Node:
        self.expect('[')
        token = self.peek
        if token.kind == 'name' and token.text == 'supnorm':
            self.advance()
            node = MeanSupNorm()
        elif token.kind == 'name' and token.text == 'x':
            self.advance()
            node = MeanLag(*self._lagref())
        else:
            self.fail("expected 'x[' or 'supnorm' inside E[...]")
        self.expect(']')
        return node

    def _func(self, name: str) -> Node:
        self.expect('(')
        args = [self.expr()]
        while self.accept(','):
            args.append(self.expr())
        closing = self.peek
        self.expect(')')
        if len(args) != FUNCTION_ARITY[name]:
            self.fail(f"{name} takes {FUNCTION_ARITY[name]} argument(s), got {len(args)}", closing)
        return Func(name, tuple(args))


def parse(src: str, d: int, grid: TimeGrid) -> Node:
    """ Parses `src` into an expression tree.

    Raises
    ------
    CoeffSyntaxError
        On malformed input, unknown identifiers, off-grid lags and out-of-range coordinates.
    """
    if not isinstance(src, str):
        raise TypeError(f"Coefficient source must be a string, got {type(src).__name__}.")
    return Parser(src, d, grid).parse()
