"""Inline right-hand sides and scalar functions in a small arithmetic grammar.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | NAME | "(" expr ")"

Names are ``x1..xn`` (state), ``d1..dm`` (disturbance) and ``r`` (the
argument of a scalar comparison function). ``-x1^2`` reads as ``-(x1^2)``
and ``^`` is right associative.
"""

import logging
import re
from collections.abc import Mapping
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
import sympy

from stabilityx.kfun import FunctionClass
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.types import StateFunctional
from stabilityx.types import StateMap
from stabilityx.types import Vector
from stabilityx.types import VectorField

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


class Token(NamedTuple):
    """A lexical token with its offset in the source text."""

    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into number, name and operator tokens.

    Raises:
        ConfigError: On a character outside the grammar.
    """
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None or match.end() == position:
            msg = f"Unexpected character {stripped[position:].lstrip()[:1]!r} at {position} in {text!r}"
            raise ConfigError(msg)
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, symbols: Mapping[str, sympy.Symbol]) -> None:
        self.text = text
        self.symbols = symbols
        self.tokens = tokenize(text)
        self.index = 0

    def _peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _fail(self, expected: str) -> ConfigError:
        token = self._peek()
        where = "end of input" if token is None else f"{token.text!r} at {token.position}"
        return ConfigError(f"Expected {expected}, found {where} in {self.text!r}")

    def _accept(self, *ops: str) -> str | None:
        token = self._peek()
        if token is not None and token.kind == "op" and token.text in ops:
            self.index += 1
            return token.text
        return None

    def parse(self) -> sympy.Expr:
        if not self.tokens:
            msg = "Empty expression"
            raise ConfigError(msg)
        expr = self._expr()
        if self._peek() is not None:
            raise self._fail("an operator")
        return expr

    def _expr(self) -> sympy.Expr:
        value = self._term()
        while (op := self._accept("+", "-")) is not None:
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> sympy.Expr:
        value = self._unary()
        while (op := self._accept("*", "/")) is not None:
            rhs = self._unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def _unary(self) -> sympy.Expr:
        if (op := self._accept("+", "-")) is not None:
            operand = self._unary()
            return -operand if op == "-" else operand
        return self._power()

    def _power(self) -> sympy.Expr:
        base = self._atom()
        if self._accept("^") is not None:
            return base ** self._unary()
        return base

    def _atom(self) -> sympy.Expr:
        token = self._peek()
        if token is None:
            raise self._fail("a number, a variable or '('")
        if token.kind == "number":
            self.index += 1
            return sympy.Rational(token.text)
        if token.kind == "name":
            if token.text not in self.symbols:
                known = ", ".join(self.symbols) or "none"
                msg = f"Unknown variable {token.text!r} at {token.position} in {self.text!r}; allowed: {known}"
                raise ConfigError(msg)
            self.index += 1
            return self.symbols[token.text]
        if self._accept("(") is not None:
            inner = self._expr()
            if self._accept(")") is None:
                raise self._fail("')'")
            return inner
        raise self._fail("a number, a variable or '('")


def variables(dim_x: int = 0, dim_d: int = 0, *, scalar: bool = False) -> dict[str, sympy.Symbol]:
    """Symbols ``x1..xn``, ``d1..dm`` and, with ``scalar``, ``r``."""
    names = [f"x{i + 1}" for i in range(dim_x)] + [f"d{i + 1}" for i in range(dim_d)]
    if scalar:
        names.append("r")
    return {name: sympy.Symbol(name, real=True) for name in names}


def parse_expression(text: str, symbols: Mapping[str, sympy.Symbol]) -> sympy.Expr:
    """Parse ``text`` into a sympy expression over ``symbols``.

    Raises:
        ConfigError: On syntax errors or unknown variables.
    """
    return _Parser(text, symbols).parse()


def compile_vector_field(rhs: Sequence[str], dim_d: int = 0) -> VectorField:
    """Compile ``f(x, d)`` from one expression per state component."""
    symbols = variables(len(rhs), dim_d)
    exprs = [parse_expression(text, symbols) for text in rhs]
    fn = sympy.lambdify(list(symbols.values()), exprs, modules="numpy")
    dim_x = len(rhs)

    def field(x: Vector, d: Vector) -> Vector:
        d = np.zeros(dim_d) if d.size == 0 and dim_d else d
        return np.asarray(fn(*x[:dim_x], *d[:dim_d]), dtype=np.float64).reshape(dim_x)

    logger.debug("Inline system COMPILED; dim_x=%s dim_d=%s", dim_x, dim_d)
    return field


def compile_functional(text: str, dim: int) -> tuple[StateFunctional, StateMap]:
    """Compile ``V(x)`` and its symbolic gradient."""
    symbols = variables(dim)
    expr = parse_expression(text, symbols)
    args = list(symbols.values())
    value_fn = sympy.lambdify(args, expr, modules="numpy")
    grad_fn = sympy.lambdify(args, [sympy.diff(expr, s) for s in args], modules="numpy")

    def value(x: Vector) -> float:
        return float(value_fn(*x))

    def grad(x: Vector) -> Vector:
        return np.asarray(grad_fn(*x), dtype=np.float64).reshape(dim)

    return value, grad


def compile_scalar(text: str, name: str = "f", function_class: FunctionClass = FunctionClass.K_INFINITY) -> MonotoneScalarFn:
    """Compile a comparison function of ``r`` with its symbolic derivative."""
    symbols = variables(scalar=True)
    expr = parse_expression(text, symbols)
    r = symbols["r"]
    fn = sympy.lambdify(r, expr, modules="math")
    derivative = sympy.lambdify(r, sympy.diff(expr, r), modules="math")
    return MonotoneScalarFn(
        fn=lambda s: float(fn(s)),
        derivative=lambda s: float(derivative(s)),
        function_class=function_class,
        name=name,
    )
