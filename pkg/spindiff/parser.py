"""
Text form for angle expressions.

Grammar::

    expr    := sum
    sum     := product (("+" | "-") product)*
    product := unary (("*" | "/") unary)*
    unary   := ["-"] power
    power   := atom ["^" ["-"] integer]
    atom    := integer | "i" | "sqrt2" | func | "(" expr ")"
    func    := ("sin" | "cos" | "exp") "(" expr ")"

Angle variables (theta, phi, theta_p, phi_p) may only appear inside function
arguments, where the argument must be a linear form whose coefficients keep the
result on the half-integer frequency lattice. ``exp`` arguments must be ``i``
times such a form. Division is only by nonzero constants.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple
import logging

from .base import ExprSyntaxError, LatticeError, NonImaginaryExponentError
from .expr import VARIABLES, Expr, FreqVec
from .scalar import I, ONE, SQRT2, ZERO, Scalar

logger = logging.getLogger(__name__)

FUNCTIONS = ('sin', 'cos', 'exp')
KEYWORDS = ('i', 'sqrt2') + FUNCTIONS + VARIABLES
OPERATORS = '+-*/^()'
DIGITS = '0123456789'
MAX_INTEGER_DIGITS = 1000

STYLES = ('exponential', 'trig')


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'name', 'op', 'eof'
    text: str
    pos: int


def _integer(token: Token) -> int:
    if len(token.text) > MAX_INTEGER_DIGITS:
        raise ExprSyntaxError(f"Integer literal too large ({len(token.text)} digits)", token.pos)
    try:
        return int(token.text)
    except ValueError:
        raise ExprSyntaxError(f"Invalid integer literal '{token.text}'", token.pos) from None


def tokenize(text: str) -> List[Token]:
    """Split text into tokens; whitespace is insignificant."""
    tokens: List[Token] = []
    idx = 0
    while idx < len(text):
        c = text[idx]
        if c.isspace():
            idx += 1
            continue
        if c in DIGITS:
            start = idx
            while idx < len(text) and text[idx] in DIGITS:
                idx += 1
            tokens.append(Token('num', text[start:idx], start))
            continue
        if c.isalpha() or c == '_':
            start = idx
            while idx < len(text) and (text[idx].isalnum() or text[idx] == '_'):
                idx += 1
            tokens.append(Token('name', text[start:idx], start))
            continue
        if c in OPERATORS:
            tokens.append(Token('op', c, idx))
            idx += 1
            continue
        raise ExprSyntaxError(f"Unexpected character '{c}'", idx)
    tokens.append(Token('eof', '', len(text)))
    return tokens


# Syntax tree

@dataclass(frozen=True)
class Node:
    pos: int


@dataclass(frozen=True)
class Num(Node):
    value: int = 0


@dataclass(frozen=True)
class Name(Node):
    name: str = ''


@dataclass(frozen=True)
class Call(Node):
    func: str = ''
    arg: Optional[Node] = None


@dataclass(frozen=True)
class Neg(Node):
    operand: Optional[Node] = None


@dataclass(frozen=True)
class BinOp(Node):
    op: str = ''
    left: Optional[Node] = None
    right: Optional[Node] = None


@dataclass(frozen=True)
class Pow(Node):
    base: Optional[Node] = None
    exponent: int = 1


class _Parser:
    """Recursive-descent parser producing a syntax tree."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def _clamp(self, pos: int) -> int:
        return min(pos, max(len(self.text) - 1, 0))

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != 'eof':
            self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ExprSyntaxError:
        token = token or self.peek()
        if token.kind == 'eof':
            message = f"{message}: unexpected end of input"
        return ExprSyntaxError(message, self._clamp(token.pos))

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.kind != 'op' or token.text != text:
            raise self.error(f"Expected '{text}'")
        return self.advance()

    def parse(self) -> Node:
        if self.peek().kind == 'eof':
            raise ExprSyntaxError("Empty expression", 0)
        node = self.sum()
        if self.peek().kind != 'eof':
            raise self.error(f"Unexpected token '{self.peek().text}'")
        return node

    def sum(self) -> Node:
        node = self.product()
        while self.peek().kind == 'op' and self.peek().text in '+-':
            token = self.advance()
            node = BinOp(token.pos, token.text, node, self.product())
        return node

    def product(self) -> Node:
        node = self.unary()
        while self.peek().kind == 'op' and self.peek().text in '*/':
            token = self.advance()
            node = BinOp(token.pos, token.text, node, self.unary())
        return node

    def unary(self) -> Node:
        token = self.peek()
        if token.kind == 'op' and token.text == '-':
            self.advance()
            return Neg(token.pos, self.power())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        token = self.peek()
        if token.kind == 'op' and token.text == '^':
            self.advance()
            negative = False
            if self.peek().kind == 'op' and self.peek().text == '-':
                self.advance()
                negative = True
            num = self.peek()
            if num.kind != 'num':
                raise self.error("Expected integer exponent")
            self.advance()
            exponent = -_integer(num) if negative else _integer(num)
            return Pow(token.pos, base, exponent)
        return base

    def atom(self) -> Node:
        token = self.peek()
        if token.kind == 'num':
            self.advance()
            return Num(token.pos, _integer(token))
        if token.kind == 'name':
            if token.text not in KEYWORDS:
                raise ExprSyntaxError(f"Unknown identifier '{token.text}'", self._clamp(token.pos))
            self.advance()
            if token.text in FUNCTIONS:
                self.expect('(')
                if self.peek().kind == 'op' and self.peek().text == ')':
                    raise self.error(f"Missing argument to {token.text}()")
                arg = self.sum()
                self.expect(')')
                return Call(token.pos, token.text, arg)
            return Name(token.pos, token.text)
        if token.kind == 'op' and token.text == '(':
            self.advance()
            node = self.sum()
            self.expect(')')
            return node
        raise self.error("Expected a number, name or '('")


# Linear angle forms (function arguments)

@dataclass
class _Linear:
    const: Scalar = ZERO
    coeffs: Dict[str, Scalar] = field(default_factory=dict)

    def is_constant(self) -> bool:
        return not self.coeffs

    def scale(self, k: Scalar) -> '_Linear':
        coeffs = {v: c * k for v, c in self.coeffs.items() if c * k}
        return _Linear(self.const * k, coeffs)

    def combine(self, other: '_Linear', sign: int) -> '_Linear':
        coeffs = dict(self.coeffs)
        for var, c in other.coeffs.items():
            total = coeffs.get(var, ZERO) + c * sign
            if total:
                coeffs[var] = total
            else:
                coeffs.pop(var, None)
        return _Linear(self.const + other.const * sign, coeffs)


def _first_pos(node: Node) -> int:
    """Leftmost character offset covered by a subtree."""
    if isinstance(node, BinOp):
        return min(node.pos, _first_pos(node.left))
    if isinstance(node, Pow):
        return min(node.pos, _first_pos(node.base))
    return node.pos


class _Evaluator:

    def __init__(self, text: str):
        self.text = text

    def _clamp(self, pos: int) -> int:
        return min(pos, max(len(self.text) - 1, 0))

    # Expr domain

    def expr(self, node: Node) -> Expr:
        if isinstance(node, Num):
            return Expr.constant(node.value)
        if isinstance(node, Name):
            if node.name == 'i':
                return Expr.constant(I)
            if node.name == 'sqrt2':
                return Expr.constant(SQRT2)
            raise ExprSyntaxError(
                f"Angle variable '{node.name}' may only appear inside sin/cos/exp",
                self._clamp(node.pos),
            )
        if isinstance(node, Call):
            return self.call(node)
        if isinstance(node, Neg):
            return -self.expr(node.operand)
        if isinstance(node, Pow):
            base = self.expr(node.base)
            if node.exponent >= 0:
                return base ** node.exponent
            divisor = self._constant_divisor(base, node)
            return Expr.constant(divisor ** node.exponent)
        if isinstance(node, BinOp):
            left = self.expr(node.left)
            right = self.expr(node.right)
            if node.op == '+':
                return left + right
            if node.op == '-':
                return left - right
            if node.op == '*':
                return left * right
            return left.scale(self._constant_divisor(right, node).inverse())
        raise ExprSyntaxError("Unsupported syntax", self._clamp(node.pos))

    def _constant_divisor(self, value: Expr, node: Node) -> Scalar:
        if not value.is_constant():
            raise ExprSyntaxError("Division is only allowed by constants", self._clamp(node.pos))
        divisor = value.constant_value()
        if not divisor:
            raise ExprSyntaxError("Division by zero", self._clamp(node.pos))
        return divisor

    # Linear domain

    def linear(self, node: Node) -> _Linear:
        if isinstance(node, Num):
            return _Linear(Scalar.of(node.value))
        if isinstance(node, Name):
            if node.name == 'i':
                return _Linear(I)
            if node.name == 'sqrt2':
                return _Linear(SQRT2)
            return _Linear(ZERO, {node.name: ONE})
        if isinstance(node, Call):
            raise ExprSyntaxError(
                f"Function {node.func}() cannot appear inside an angle argument",
                self._clamp(node.pos),
            )
        if isinstance(node, Neg):
            return self.linear(node.operand).scale(-ONE)
        if isinstance(node, Pow):
            base = self.linear(node.base)
            if base.is_constant():
                if not base.const and node.exponent < 0:
                    raise ExprSyntaxError("Division by zero", self._clamp(node.pos))
                return _Linear(base.const ** node.exponent)
            if node.exponent == 1:
                return base
            raise ExprSyntaxError("Angle argument must be linear", self._clamp(node.pos))
        if isinstance(node, BinOp):
            left = self.linear(node.left)
            right = self.linear(node.right)
            if node.op in '+-':
                return left.combine(right, 1 if node.op == '+' else -1)
            if node.op == '*':
                if left.is_constant():
                    return right.scale(left.const)
                if right.is_constant():
                    return left.scale(right.const)
                raise ExprSyntaxError("Angle argument must be linear", self._clamp(node.pos))
            if not right.is_constant():
                raise ExprSyntaxError("Division is only allowed by constants", self._clamp(node.pos))
            if not right.const:
                raise ExprSyntaxError("Division by zero", self._clamp(node.pos))
            return left.scale(right.const.inverse())
        raise ExprSyntaxError("Unsupported syntax", self._clamp(node.pos))

    # Functions

    def call(self, node: Call) -> Expr:
        arg_pos = self._clamp(_first_pos(node.arg))
        form = self.linear(node.arg)

        if node.func == 'exp':
            for value in [form.const] + list(form.coeffs.values()):
                if value.a or value.b:
                    raise NonImaginaryExponentError(
                        "exp() argument must be i times a linear angle form", arg_pos
                    )
            # exp(i*r*var) has frequency 2r in half-angle units
            freq = self._frequency(form, lambda s: s.c, lambda s: s.d, arg_pos)
            return Expr.atom(freq)

        freq = self._frequency(form, lambda s: s.a, lambda s: s.b or s.c or s.d, arg_pos)
        if node.func == 'cos':
            half = Scalar(Fraction(1, 2))
            return Expr({freq: half}) + Expr({-freq: half})
        return Expr({freq: Scalar(c=Fraction(-1, 2))}) + Expr({-freq: Scalar(c=Fraction(1, 2))})

    def _frequency(self, form: _Linear, rational_part, foreign_part, pos: int) -> FreqVec:
        if form.const:
            raise LatticeError("Constant angle offsets are not on the frequency lattice", pos)
        vec = [0, 0, 0, 0]
        for var, coeff in form.coeffs.items():
            if foreign_part(coeff):
                raise LatticeError(f"Coefficient of '{var}' is not on the frequency lattice", pos)
            doubled = rational_part(coeff) * 2
            if doubled.denominator != 1:
                raise LatticeError(
                    f"Coefficient {rational_part(coeff)} of '{var}' is not a multiple of 1/2", pos
                )
            vec[VARIABLES.index(var)] = int(doubled)
        return FreqVec(*vec)


def parse(text: str) -> Expr:
    """
    Parse an angle expression into a canonical Expr.

    Raises:
        ExprSyntaxError: If the text does not conform to the grammar.
        LatticeError: If a function argument leaves the half-integer lattice.
        NonImaginaryExponentError: If exp() is given a non-imaginary argument.
    """
    node = _Parser(text).parse()
    result = _Evaluator(text).expr(node)
    logger.debug(f"Parsed '{text}' into {len(result)} terms")
    return result


# Printing

def _rational_text(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _magnitude_text(r: Fraction, suffix: str) -> str:
    """Text for ``|r| * suffix``; suffix may be empty."""
    r = abs(r)
    if not suffix:
        return _rational_text(r)
    if r == 1:
        return suffix
    if r.denominator == 1:
        return f"{r.numerator}*{suffix}"
    return f"({_rational_text(r)})*{suffix}"


def _scalar_pieces(s: Scalar) -> List[Tuple[bool, Fraction, str]]:
    pieces = []
    for value, suffix in ((s.a, ''), (s.b, 'sqrt2'), (s.c, 'i'), (s.d, 'i*sqrt2')):
        if value:
            pieces.append((value < 0, value, suffix))
    return pieces


def _join(parts: List[Tuple[bool, str]]) -> str:
    out = ''
    for k, (negative, text) in enumerate(parts):
        if k == 0:
            out = f"-{text}" if negative else text
        else:
            out += f" - {text}" if negative else f" + {text}"
    return out


def format_scalar(s: Scalar) -> str:
    """Standalone text for a Scalar in the grammar."""
    pieces = _scalar_pieces(s)
    if not pieces:
        return '0'
    return _join([(neg, _magnitude_text(value, suffix)) for neg, value, suffix in pieces])


def _factor(s: Scalar) -> Tuple[bool, str]:
    """(negative, text) for a Scalar used as a multiplicative factor; text '' means 1."""
    pieces = _scalar_pieces(s)
    if len(pieces) == 1:
        negative, value, suffix = pieces[0]
        if not suffix:
            r = abs(value)
            if r == 1:
                return negative, ''
            return negative, _rational_text(r) if r.denominator == 1 else f"({_rational_text(r)})"
        return negative, _magnitude_text(value, suffix)
    return False, f"({format_scalar(s)})"


def _linear_text(freq: FreqVec) -> str:
    parts = []
    for var, m in zip(VARIABLES, freq):
        if not m:
            continue
        mag = abs(m)
        if mag % 2 == 0:
            k = mag // 2
            text = var if k == 1 else f"{k}*{var}"
        else:
            text = f"{var}/2" if mag == 1 else f"{mag}*{var}/2"
        parts.append((m < 0, text))
    return _join(parts)


def _exp_text(freq: FreqVec) -> str:
    active = [m for m in freq if m]
    if len(active) == 1:
        text = _linear_text(-freq if active[0] < 0 else freq)
        return f"exp(-i*{text})" if active[0] < 0 else f"exp(i*{text})"
    return f"exp(i*({_linear_text(freq)}))"


def _term(coeff: Scalar, atom: Optional[str]) -> Tuple[bool, str]:
    if atom is None:
        pieces = _scalar_pieces(coeff)
        if len(pieces) == 1 and not pieces[0][2]:
            return pieces[0][0], _rational_text(abs(pieces[0][1]))
        negative, text = _factor(coeff)
        return negative, text or '1'
    negative, text = _factor(coeff)
    return negative, f"{text}*{atom}" if text else atom


def print_expr(e: Expr, style: str = 'exponential') -> str:
    """
    Deterministic text for an Expr.

    Terms appear in descending frequency order. The 'trig' style rewrites
    conjugate atom pairs as cos/sin and leaves unpaired atoms exponential.
    """
    if style not in STYLES:
        raise ValueError(f"Unknown print style: '{style}'. Available: {', '.join(STYLES)}")
    if e.is_zero():
        return '0'

    terms = e.terms
    parts: List[Tuple[bool, str]] = []
    consumed = set()
    for freq in sorted(terms, reverse=True):
        if freq in consumed:
            continue
        coeff = terms[freq]
        if freq.is_zero():
            parts.append(_term(coeff, None))
            continue
        partner = -freq
        if style == 'trig' and partner in terms:
            consumed.add(partner)
            other = terms[partner]
            cos_coeff = coeff + other
            sin_coeff = I * (coeff - other)
            arg = _linear_text(freq)
            if cos_coeff:
                parts.append(_term(cos_coeff, f"cos({arg})"))
            if sin_coeff:
                parts.append(_term(sin_coeff, f"sin({arg})"))
            continue
        parts.append(_term(coeff, _exp_text(freq)))
    return _join(parts)
