"""A small expression language over classical, deformed and dual operators.

Grammar::

    expr           := additive
    additive       := multiplicative { ("+" | "-" | "@+" | "@-" | "^+") multiplicative }
    multiplicative := unary { ("*" | "/" | "@*" | "@/" | "^*") unary }
    unary          := ["-" | "@-"] primary
    primary        := NUMBER | IDENT | FUNC "(" expr { "," expr } ")" | "(" expr ")"
    FUNC           := "qexp" | "qln" | "exp" | "ln"

``@`` marks the subscript operators (``x @+ y`` is ``x +_a y``), ``^`` the dual
ones.  All binary operators are left-associative.  One deformation parameter
is shared by every operator in an evaluation.

>>> evaluate(parse_expr("0.1 @+ 0.1"), EvalEnv(a=1.0))
0.21000000000000002
"""

import enum
import math
import re
import sys
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Tuple, Union

from . import ops
from .core import DeformParam, EvalPolicy, as_param, q_exp, q_ln
from .errors import (
    DomainViolation,
    LexError,
    NonPositiveArgument,
    Overflow,
    ParseError,
    SingularDenominator,
    UnboundVariable,
)

DEFAULT_MAX_DEPTH = 256

FUNCTIONS = ("qexp", "qln", "exp", "ln")
ADDITIVE = ("+", "-", "@+", "@-", "^+")
MULTIPLICATIVE = ("*", "/", "@*", "@/", "^*")
PRECEDENCE = {**{op: 1 for op in ADDITIVE}, **{op: 2 for op in MULTIPLICATIVE}}


class TokenKind(enum.Enum):
    NUMBER = "Number"
    IDENT = "Ident"
    FUNC = "Func"
    CLASSICAL_OP = "ClassicalOp"
    DEFORMED_OP = "DeformedOp"
    DUAL_OP = "DualOp"
    LPAREN = "LParen"
    RPAREN = "RParen"
    COMMA = "Comma"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Tuple[int, int]
    value: Optional[float] = None

    def __repr__(self):
        if self.kind in (TokenKind.LPAREN, TokenKind.RPAREN, TokenKind.COMMA):
            return self.kind.value
        return f"{self.kind.value}({self.text})"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<deformed>@[-+*/])
  | (?P<dual>\^[+*])
  | (?P<classical>[-+*/])
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
    """,
    re.VERBOSE,
)

_GROUP_KIND = {
    "deformed": TokenKind.DEFORMED_OP,
    "dual": TokenKind.DUAL_OP,
    "classical": TokenKind.CLASSICAL_OP,
    "lparen": TokenKind.LPAREN,
    "rparen": TokenKind.RPAREN,
    "comma": TokenKind.COMMA,
}


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r} at offset {pos}", (pos, pos + 1))
        group = m.lastgroup
        span = m.span()
        lexeme = m.group()
        if group == "number":
            tokens.append(Token(TokenKind.NUMBER, lexeme, span, float(lexeme)))
        elif group == "ident":
            kind = TokenKind.FUNC if lexeme in FUNCTIONS else TokenKind.IDENT
            tokens.append(Token(kind, lexeme, span))
        elif group != "ws":
            tokens.append(Token(_GROUP_KIND[group], lexeme, span))
        pos = m.end()
    return tokens


# -- syntax tree -------------------------------------------------------------------
# Spans are excluded from equality so that trees compare structurally.

@dataclass(frozen=True)
class NumberLit:
    value: float
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "@-"
    operand: "Expr"
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...]
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)


Expr = Union[NumberLit, Var, Unary, Binary, Call]


class _Parser:
    def __init__(self, tokens, source_length, max_depth):
        self.tokens = tokens
        self.pos = 0
        self.end = source_length
        self.max_depth = max_depth
        self.depth = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {expected} at end of input", (self.end, self.end))
        raise ParseError(f"expected {expected}, found {tok.text!r} at offset {tok.span[0]}", tok.span)

    def expect(self, kind, description):
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            self.fail(description)
        return self.advance()

    def nested(self):
        self.depth += 1
        if self.depth > self.max_depth:
            tok = self.peek()
            span = tok.span if tok else (self.end, self.end)
            raise ParseError(f"expression nests deeper than {self.max_depth} levels", span)

    def expression(self):
        return self.binary_level(ADDITIVE, self.multiplicative)

    def multiplicative(self):
        return self.binary_level(MULTIPLICATIVE, self.unary)

    def binary_level(self, operators, operand):
        left = operand()
        while (tok := self.peek()) is not None and tok.text in operators:
            self.advance()
            right = operand()
            left = Binary(tok.text, left, right, (left.span[0], right.span[1]))
        return left

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.text in ("-", "@-"):
            self.advance()
            self.nested()
            operand = self.primary()
            self.depth -= 1
            return Unary(tok.text, operand, (tok.span[0], operand.span[1]))
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok is None:
            self.fail("operand")
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return NumberLit(tok.value, tok.span)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return Var(tok.text, tok.span)
        if tok.kind is TokenKind.FUNC:
            return self.call()
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            self.nested()
            inner = self.expression()
            self.depth -= 1
            close = self.expect(TokenKind.RPAREN, "')'")
            return replace(inner, span=(tok.span[0], close.span[1]))
        self.fail("operand")

    def call(self):
        name = self.advance()
        self.expect(TokenKind.LPAREN, f"'(' after {name.text}")
        self.nested()
        args = [self.expression()]
        while (tok := self.peek()) is not None and tok.kind is TokenKind.COMMA:
            self.advance()
            args.append(self.expression())
        self.depth -= 1
        close = self.expect(TokenKind.RPAREN, "',' or ')'")
        span = (name.span[0], close.span[1])
        if len(args) != 1:
            raise ParseError(f"{name.text} takes 1 argument, got {len(args)}", span)
        return Call(name.text, tuple(args), span)


def tree_depth(e):
    """Number of nodes on the longest root-to-leaf path (computed without recursion)."""
    deepest = 0
    stack = [(e, 1)]
    while stack:
        node, depth = stack.pop()
        deepest = max(deepest, depth)
        stack.extend((child, depth + 1) for child in _children(node))
    return deepest


def _children(e):
    if isinstance(e, Unary):
        return (e.operand,)
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, Call):
        return e.args
    return ()


def _ensure_stack(levels):
    # each tree level costs a handful of interpreter frames in the recursive
    # parser, printer and evaluator; only ever raised, never lowered
    needed = 10 * levels + 1000
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)


def parse(tokens, max_depth=DEFAULT_MAX_DEPTH, source_length=None):
    """Build an :data:`Expr` from a token list.

    Raises :class:`ParseError` if parentheses nest, or the resulting tree
    grows, deeper than ``max_depth``.  ``source_length`` is only used to place
    end-of-input diagnostics.
    """
    tokens = list(tokens)
    if source_length is None:
        source_length = tokens[-1].span[1] if tokens else 0
    _ensure_stack(max_depth)
    parser = _Parser(tokens, source_length, max_depth)
    tree = parser.expression()
    if parser.peek() is not None:
        parser.fail("an operator or end of input")
    if tree_depth(tree) > max_depth:
        raise ParseError(f"expression tree is deeper than {max_depth} levels", tree.span)
    return tree


def parse_expr(text, max_depth=DEFAULT_MAX_DEPTH):
    """Tokenize and parse ``text``."""
    return parse(tokenize(text), max_depth=max_depth, source_length=len(text))


# -- printing ------------------------------------------------------------------------

def format_number(value):
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def pretty_print(e):
    """Canonical text for ``e`` using the fewest parentheses that re-parse to ``e``."""
    _ensure_stack(tree_depth(e))
    return _print(e)


def _print(e):
    if isinstance(e, NumberLit):
        return format_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({', '.join(_print(arg) for arg in e.args)})"
    if isinstance(e, Unary):
        inner = _print(e.operand)
        if isinstance(e.operand, (Binary, Unary)):
            inner = f"({inner})"
        return e.op + inner
    if isinstance(e, Binary):
        prec = PRECEDENCE[e.op]
        left = _print(e.left)
        right = _print(e.right)
        if isinstance(e.left, Binary) and PRECEDENCE[e.left.op] < prec:
            left = f"({left})"
        if isinstance(e.right, Binary) and PRECEDENCE[e.right.op] <= prec:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation ----------------------------------------------------------------------

@dataclass(frozen=True)
class EvalEnv:
    a: Union[DeformParam, float] = 0.0
    bindings: Mapping[str, float] = field(default_factory=dict)
    policy: EvalPolicy = EvalPolicy.STRICT


def _finite(value, what):
    if not math.isfinite(value):
        raise Overflow(f"{what} overflows the floating point range")
    return value


def _classical_div(x, y):
    if y == 0.0:
        raise SingularDenominator("division by zero")
    return _finite(x / y, "x / y")


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        raise Overflow(f"exp({x!r}) overflows") from None


def _ln(x):
    if x <= 0.0:
        raise NonPositiveArgument(f"ln needs x > 0, got {x!r}")
    return math.log(x)


_BINARY = {
    "+": lambda p, x, y: _finite(x + y, "x + y"),
    "-": lambda p, x, y: _finite(x - y, "x - y"),
    "*": lambda p, x, y: _finite(x * y, "x * y"),
    "/": lambda p, x, y: _classical_div(x, y),
    "@+": ops.add_a,
    "@-": ops.sub_a,
    "@*": ops.mul_a,
    "@/": ops.div_a,
    "^+": ops.add_dual,
    "^*": ops.mul_dual,
}


def evaluate(e, env):
    """Evaluate ``e`` under ``env``.

    Domain errors are raised as :class:`~qalgebra.errors.DomainViolation` with
    ``span`` set to the subexpression whose own operation failed.
    """
    _ensure_stack(tree_depth(e))
    return _eval(e, as_param(env.a), env.bindings, env.policy)


def _eval(e, p, bindings, policy):
    if isinstance(e, NumberLit):
        return e.value
    if isinstance(e, Var):
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundVariable(f"unbound variable {e.name!r}", e.span) from None
    if isinstance(e, Unary):
        x = _eval(e.operand, p, bindings, policy)
        return _at(e, lambda: -x if e.op == "-" else ops.neg_a(p, x))
    if isinstance(e, Binary):
        x = _eval(e.left, p, bindings, policy)
        y = _eval(e.right, p, bindings, policy)
        return _at(e, lambda: _BINARY[e.op](p, x, y))
    if isinstance(e, Call):
        x = _eval(e.args[0], p, bindings, policy)
        funcs = {
            "qexp": lambda: q_exp(p, x, policy),
            "qln": lambda: q_ln(p, x),
            "exp": lambda: _exp(x),
            "ln": lambda: _ln(x),
        }
        return _at(e, funcs[e.func])
    raise TypeError(f"not an expression node: {e!r}")


def _at(node, thunk):
    try:
        return thunk()
    except DomainViolation as err:
        if err.span is None:
            err.span = node.span
        raise
