"""Single-variable expression trees with exact-grammar parsing and forward-mode derivatives.

The grammar (one free variable ``x``, functions exp/log/abs):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' factor)?          # '^' is right-associative
    unary  := '-' unary | atom
    atom   := NUMBER | 'x' | ('exp' | 'log' | 'abs') '(' expr ')' | '(' expr ')'

Note that per this grammar a leading unary minus is part of a power's base:
``-x^2`` parses as ``(-x)^2``.  Write ``-(x^2)`` for the other reading.

Evaluation accepts floats or numpy arrays and is deterministic: repeated
evaluation at the same input is bit-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

Real = float
Scalar = Union[float, np.ndarray]


class ParseError(ValueError):
    """Malformed expression text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnknownIdentifierError(ParseError):
    pass


class DomainError(ValueError):
    """Evaluation left the mathematical domain (log of a non-positive value, etc.)."""


class DerivativeUndefinedError(DomainError):
    """The requested derivative does not exist at this point (abs at 0, x^c at 0 for c < 1)."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b, both finite."""

    a: Real
    b: Real

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> Real:
        return self.b - self.a

    def contains(self, x, slack: float = 0.0) -> bool:
        return bool(np.all(x >= self.a - slack) and np.all(x <= self.b + slack))


# ---------------------------------------------------------------------------
# dual numbers


@dataclass(frozen=True)
class DualValue:
    """A (value, derivative) pair; both components are floats or same-shape arrays."""

    value: Scalar
    derivative: Scalar

    def __add__(self, other: "DualValue") -> "DualValue":
        return DualValue(self.value + other.value, self.derivative + other.derivative)

    def __sub__(self, other: "DualValue") -> "DualValue":
        return DualValue(self.value - other.value, self.derivative - other.derivative)

    def __mul__(self, other: "DualValue") -> "DualValue":
        return DualValue(
            self.value * other.value,
            self.derivative * other.value + self.value * other.derivative,
        )

    def __truediv__(self, other: "DualValue") -> "DualValue":
        if np.any(other.value == 0.0):
            raise DomainError("division by zero")
        return DualValue(
            self.value / other.value,
            (self.derivative * other.value - self.value * other.derivative)
            / (other.value * other.value),
        )

    def __neg__(self) -> "DualValue":
        return DualValue(-self.value, -self.derivative)

    def exp(self) -> "DualValue":
        e = np.exp(self.value)
        return DualValue(e, e * self.derivative)

    def log(self) -> "DualValue":
        if np.any(self.value <= 0.0):
            raise DomainError("log argument must be positive")
        return DualValue(np.log(self.value), self.derivative / self.value)

    def abs(self) -> "DualValue":
        if np.any(self.value == 0.0):
            raise DerivativeUndefinedError("derivative of abs is undefined at 0")
        return DualValue(np.abs(self.value), np.sign(self.value) * self.derivative)


def _is_integer(c: float) -> bool:
    return float(c).is_integer()


def _pow_plain(base: Scalar, c: float) -> Scalar:
    if not _is_integer(c) and np.any(base < 0.0):
        raise DomainError(f"negative base with non-integer exponent {c}")
    if c < 0.0 and np.any(base == 0.0):
        raise DomainError(f"zero base with negative exponent {c}")
    return base**c


def _pow_const(v: Union[Scalar, DualValue], c: float) -> Union[Scalar, DualValue]:
    if not isinstance(v, DualValue):
        return _pow_plain(v, c)
    val = _pow_plain(v.value, c)
    if c == 0.0:
        der = v.derivative * 0.0
    elif c == 1.0:
        der = v.derivative
    else:
        if c < 1.0 and np.any(v.value == 0.0):
            raise DerivativeUndefinedError(f"derivative of x^{c} is undefined at 0")
        der = c * _pow_plain(v.value, c - 1.0) * v.derivative
    return DualValue(val, der)


def _pow_general(
    base: Union[Scalar, DualValue], expo: Union[Scalar, DualValue]
) -> Union[Scalar, DualValue]:
    # non-constant exponent: restrict to positive base so u^w = exp(w log u) is well defined
    if isinstance(base, DualValue):
        if np.any(base.value <= 0.0):
            raise DomainError("power with non-constant exponent requires a positive base")
        val = base.value**expo.value
        der = val * (
            expo.derivative * np.log(base.value)
            + expo.value * base.derivative / base.value
        )
        return DualValue(val, der)
    if np.any(base <= 0.0):
        raise DomainError("power with non-constant exponent requires a positive base")
    return base**expo


# ---------------------------------------------------------------------------
# expression nodes


class ExprNode:
    """Immutable expression-tree node."""

    __slots__ = ()

    def evaluate(self, x):
        raise NotImplementedError

    def __str__(self) -> str:
        return format_expression(self)


@dataclass(frozen=True)
class Constant(ExprNode):
    value: Real

    def evaluate(self, x):
        if isinstance(x, DualValue):
            return DualValue(self.value, 0.0)
        return self.value


@dataclass(frozen=True)
class Variable(ExprNode):
    def evaluate(self, x):
        return x


@dataclass(frozen=True)
class Neg(ExprNode):
    operand: ExprNode

    def evaluate(self, x):
        return -self.operand.evaluate(x)


@dataclass(frozen=True)
class Add(ExprNode):
    left: ExprNode
    right: ExprNode

    def evaluate(self, x):
        return self.left.evaluate(x) + self.right.evaluate(x)


@dataclass(frozen=True)
class Sub(ExprNode):
    left: ExprNode
    right: ExprNode

    def evaluate(self, x):
        return self.left.evaluate(x) - self.right.evaluate(x)


@dataclass(frozen=True)
class Mul(ExprNode):
    left: ExprNode
    right: ExprNode

    def evaluate(self, x):
        return self.left.evaluate(x) * self.right.evaluate(x)


@dataclass(frozen=True)
class Div(ExprNode):
    left: ExprNode
    right: ExprNode

    def evaluate(self, x):
        num = self.left.evaluate(x)
        den = self.right.evaluate(x)
        if isinstance(den, DualValue):
            return num / den
        if np.any(den == 0.0):
            raise DomainError("division by zero")
        return num / den


@dataclass(frozen=True)
class Pow(ExprNode):
    base: ExprNode
    exponent: ExprNode

    def evaluate(self, x):
        b = self.base.evaluate(x)
        expo = self.exponent
        if isinstance(expo, Constant):
            return _pow_const(b, expo.value)
        if not _depends_on_x(expo):
            # e.g. x^2^3: the exponent folds to a number, so the constant-power
            # rules (integer powers at any base) apply
            return _pow_const(b, float(expo.evaluate(0.0)))
        return _pow_general(b, expo.evaluate(x))


@dataclass(frozen=True)
class Exp(ExprNode):
    operand: ExprNode

    def evaluate(self, x):
        v = self.operand.evaluate(x)
        if isinstance(v, DualValue):
            return v.exp()
        return np.exp(v)


@dataclass(frozen=True)
class Log(ExprNode):
    operand: ExprNode

    def evaluate(self, x):
        v = self.operand.evaluate(x)
        if isinstance(v, DualValue):
            return v.log()
        if np.any(v <= 0.0):
            raise DomainError("log argument must be positive")
        return np.log(v)


@dataclass(frozen=True)
class Abs(ExprNode):
    operand: ExprNode

    def evaluate(self, x):
        v = self.operand.evaluate(x)
        if isinstance(v, DualValue):
            return v.abs()
        return np.abs(v)


def _depends_on_x(node: ExprNode) -> bool:
    if isinstance(node, Variable):
        return True
    if isinstance(node, Constant):
        return False
    if isinstance(node, (Neg, Exp, Log, Abs)):
        return _depends_on_x(node.operand)
    if isinstance(node, Pow):
        return _depends_on_x(node.base) or _depends_on_x(node.exponent)
    return _depends_on_x(node.left) or _depends_on_x(node.right)


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)

_FUNCTIONS = {"exp": Exp, "log": Log, "abs": Abs}


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect_op(self, op: str, what: str):
        tok = self._peek()
        if tok.kind == "op" and tok.text == op:
            return self._advance()
        raise ParseError(f"expected {what}, got {tok.text or 'end of input'!r}", tok.position)

    def parse(self) -> ExprNode:
        node = self._expr()
        tok = self._peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.position)
        return node

    def _expr(self) -> ExprNode:
        node = self._term()
        while self._peek().kind == "op" and self._peek().text in "+-":
            op = self._advance().text
            rhs = self._term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def _term(self) -> ExprNode:
        node = self._factor()
        while self._peek().kind == "op" and self._peek().text in "*/":
            op = self._advance().text
            rhs = self._factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def _factor(self) -> ExprNode:
        base = self._unary()
        tok = self._peek()
        if tok.kind == "op" and tok.text == "^":
            self._advance()
            return Pow(base, self._factor())
        return base

    def _unary(self) -> ExprNode:
        tok = self._peek()
        if tok.kind == "op" and tok.text == "-":
            self._advance()
            return Neg(self._unary())
        return self._atom()

    def _atom(self) -> ExprNode:
        tok = self._advance()
        if tok.kind == "number":
            return Constant(float(tok.text))
        if tok.kind == "ident":
            if tok.text == "x":
                return Variable()
            if tok.text in _FUNCTIONS:
                self._expect_op("(", f"'(' after {tok.text!r} (functions take exactly one argument)")
                arg = self._expr()
                nxt = self._peek()
                if nxt.kind == "op" and nxt.text == ",":
                    raise ParseError(
                        f"{tok.text!r} takes exactly one argument", nxt.position
                    )
                self._expect_op(")", "')'")
                return _FUNCTIONS[tok.text](arg)
            raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.position)
        if tok.kind == "op" and tok.text == "(":
            node = self._expr()
            self._expect_op(")", "')'")
            return node
        raise ParseError(
            f"expected a number, 'x', a function call, or '(', got {tok.text or 'end of input'!r}",
            tok.position,
        )


def parse(text: str) -> ExprNode:
    """Parse expression text into an immutable tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_NEG, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(node: ExprNode) -> int:
    if isinstance(node, (Add, Sub)):
        return _LEVEL_ADD
    if isinstance(node, (Mul, Div)):
        return _LEVEL_MUL
    if isinstance(node, Neg):
        return _LEVEL_NEG
    if isinstance(node, Pow):
        return _LEVEL_POW
    return _LEVEL_ATOM


def _format_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return repr(int(v))
    return repr(v)


def _wrap(node: ExprNode, min_level: int) -> str:
    s = format_expression(node)
    return s if _level(node) >= min_level else f"({s})"


def format_expression(node: ExprNode) -> str:
    """Render a tree to text that re-parses to a structurally equal tree."""
    if isinstance(node, Constant):
        return _format_number(node.value)
    if isinstance(node, Variable):
        return "x"
    if isinstance(node, Neg):
        inner = format_expression(node.operand)
        # a power may not follow unary minus bare: -(x^2) differs from -x^2
        if _level(node.operand) in (_LEVEL_NEG, _LEVEL_ATOM):
            return f"-{inner}"
        return f"-({inner})"
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        return f"{_wrap(node.left, _LEVEL_ADD)} {op} {_wrap(node.right, _LEVEL_MUL)}"
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        return f"{_wrap(node.left, _LEVEL_MUL)}{op}{_wrap(node.right, _LEVEL_NEG)}"
    if isinstance(node, Pow):
        b = format_expression(node.base)
        if _level(node.base) not in (_LEVEL_NEG, _LEVEL_ATOM):
            b = f"({b})"
        e = format_expression(node.exponent)
        if _level(node.exponent) < _LEVEL_NEG:
            e = f"({e})"
        return f"{b}^{e}"
    for cls, name in ((Exp, "exp"), (Log, "log"), (Abs, "abs")):
        if isinstance(node, cls):
            return f"{name}({format_expression(node.operand)})"
    raise TypeError(f"unknown node type {type(node).__name__}")


# ---------------------------------------------------------------------------
# function objects

_CONSTRUCTION_GRID = 129


@dataclass(frozen=True)
class FunctionSpec:
    """An expression restricted to a closed domain, finite on a construction-time sample grid."""

    body: ExprNode
    domain: Interval
    text: str = ""

    def __post_init__(self):
        if not self.text:
            object.__setattr__(self, "text", format_expression(self.body))
        grid = np.linspace(self.domain.a, self.domain.b, _CONSTRUCTION_GRID)
        with np.errstate(all="ignore"):
            vals = self.body.evaluate(grid)
        if not np.all(np.isfinite(vals)):
            raise DomainError(
                f"{self.text!r} is not finite everywhere on [{self.domain.a}, {self.domain.b}]"
            )

    def _domain_slack(self) -> float:
        return 1e-9 * max(1.0, abs(self.domain.a), abs(self.domain.b))

    def _check_domain(self, x):
        if not self.domain.contains(x, slack=self._domain_slack()):
            raise DomainError(
                f"input outside domain [{self.domain.a}, {self.domain.b}] of {self.text!r}"
            )

    def value(self, x: Scalar) -> Scalar:
        """Evaluate at a float or ndarray; raises DomainError off-domain or on non-finite results."""
        self._check_domain(x)
        with np.errstate(all="ignore"):
            out = self.body.evaluate(x)
        if not np.all(np.isfinite(out)):
            raise DomainError(f"{self.text!r} produced a non-finite value")
        if isinstance(x, np.ndarray):
            return np.broadcast_to(np.asarray(out, dtype=float), x.shape).copy()
        return float(out)

    __call__ = value

    def eval_with_derivative(self, x: Scalar) -> DualValue:
        """Forward-mode evaluation returning the (value, derivative) pair at x."""
        self._check_domain(x)
        if isinstance(x, np.ndarray):
            seed = DualValue(x, np.ones_like(x, dtype=float))
        else:
            seed = DualValue(float(x), 1.0)
        with np.errstate(all="ignore"):
            out = self.body.evaluate(seed)
        if not isinstance(out, DualValue):  # constant-only body
            out = DualValue(out, 0.0 * np.asarray(x, dtype=float))
        if not (np.all(np.isfinite(out.value)) and np.all(np.isfinite(out.derivative))):
            raise DomainError(f"{self.text!r} produced a non-finite value or derivative")
        if isinstance(x, np.ndarray):
            return DualValue(
                np.broadcast_to(np.asarray(out.value, dtype=float), x.shape).copy(),
                np.broadcast_to(np.asarray(out.derivative, dtype=float), x.shape).copy(),
            )
        return DualValue(float(out.value), float(out.derivative))

    def derivative(self, x: Scalar) -> Scalar:
        return self.eval_with_derivative(x).derivative


@dataclass(frozen=True)
class DerivedFunction:
    """A pointwise-defined function (such as |f'| or |f'|^q) usable wherever only
    evaluation over a domain is needed."""

    fn: Callable[[Scalar], Scalar]
    domain: Interval
    text: str = "<derived>"

    def __call__(self, x: Scalar) -> Scalar:
        return self.fn(x)

    value = __call__


def parse_function(text: str, domain: Interval) -> FunctionSpec:
    """Parse text and attach a domain in one step."""
    return FunctionSpec(parse(text), domain, text)
