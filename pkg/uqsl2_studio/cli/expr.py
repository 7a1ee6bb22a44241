# uqsl2_studio/cli/expr.py

"""
Expression front-end for the command line.

Grammar (whitespace-insensitive):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | atom ('^' exponent)?
    exponent:= ['+' | '-'] INT | '(' ['+' | '-'] INT ')'
    atom    := 'E' | 'F' | 'K' | 'Kinv' | 'H' | 'q' | INT | '{' scalar '}'
             | '(' expr ')' | '[' expr ',' expr ']'

`K^-1` is read as K to the power −1. Scalars in braces are rational
functions of q such as {(q^2+1)/(q-1)}, or complex literals in numeric mode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Union

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.pbw import (
    SYMBOLIC,
    AlgebraMode,
    PBWElement,
    commutator,
    element_to_text,
    generator,
    multiply,
)
from uqsl2_studio.algebra.scalars import format_scalar, parse_numeric, parse_scalar
from uqsl2_studio.core.types import DomainError, ExprSyntaxError

GENERATOR_NAMES = ("E", "F", "K", "Kinv", "H")
_PUNCT = {"+", "-", "*", "·", "^", "(", ")", "[", "]", ",", "/"}


# ============================================================
# Tokens
# ============================================================

@dataclass(frozen=True)
class Token:
    kind: str  # NAME | INT | NUMBER | SCALAR | OP | EOF
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start_col = col
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in GENERATOR_NAMES and word != "q":
                raise ExprSyntaxError(f"unknown name {word!r}", line, start_col,
                                      expected=list(GENERATOR_NAMES) + ["q"], kind="lexical")
            tokens.append(Token("NAME", word, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            kind = "INT"
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                kind = "NUMBER"
            tokens.append(Token(kind, text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == "{":
            j = text.find("}", i + 1)
            if j < 0:
                raise ExprSyntaxError("unterminated scalar literal", line, start_col,
                                      expected=["}"], kind="lexical")
            body = text[i + 1:j]
            if "\n" in body:
                raise ExprSyntaxError("scalar literal spans lines", line, start_col, kind="lexical")
            tokens.append(Token("SCALAR", body.strip(), line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("OP", "*" if ch == "·" else ch, line, start_col))
            i, col = i + 1, col + 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, start_col, kind="lexical")
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ============================================================
# AST
# ============================================================

class Node:
    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        raise NotImplementedError

    def uses_h(self) -> bool:
        return any(c.uses_h() for c in self.children())

    def children(self) -> List["Node"]:
        return []


@dataclass(frozen=True)
class Gen(Node):
    name: str

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        if self.name == "H":
            raise DomainError("H has no image in U_q(sl2); evaluate it on a Ũ_ħ module instead")
        return generator(self.name, mode)

    def uses_h(self) -> bool:
        return self.name == "H"


@dataclass(frozen=True)
class Scalar(Node):
    """Braced literal; q alone is Scalar('q')."""
    text: str

    def value(self, mode: AlgebraMode):
        try:
            return mode.coerce(Fraction(self.text))
        except ValueError:
            pass
        try:
            return mode.coerce(parse_scalar(self.text))
        except DomainError:
            if mode.is_symbolic:
                raise
            return parse_numeric(self.text)

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return PBWElement.scalar(self.value(mode), mode)


@dataclass(frozen=True)
class Int(Node):
    value: int

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return PBWElement.scalar(self.value, mode)


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node

    def children(self):
        return [self.left, self.right]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return self.left.to_element(mode) + self.right.to_element(mode)


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node

    def children(self):
        return [self.left, self.right]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return self.left.to_element(mode) - self.right.to_element(mode)


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node

    def children(self):
        return [self.left, self.right]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return multiply(self.left.to_element(mode), self.right.to_element(mode))


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def children(self):
        return [self.operand]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return -self.operand.to_element(mode)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int

    def children(self):
        return [self.base]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        if self.exponent >= 0:
            return self.base.to_element(mode) ** self.exponent
        # only K and scalars are invertible
        if isinstance(self.base, Gen) and self.base.name in ("K", "Kinv"):
            inv = "Kinv" if self.base.name == "K" else "K"
            return generator(inv, mode) ** (-self.exponent)
        if isinstance(self.base, (Scalar, Int)):
            c = self.base.value(mode) if isinstance(self.base, Scalar) else mode.coerce(self.base.value)
            if mode.is_zero(c):
                raise DomainError("negative power of zero")
            return PBWElement.scalar(c ** self.exponent, mode)
        raise DomainError(f"negative power of a non-invertible expression: {print_expr(self)}")


@dataclass(frozen=True)
class Bracket(Node):
    left: Node
    right: Node

    def children(self):
        return [self.left, self.right]

    def to_element(self, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
        return commutator(self.left.to_element(mode), self.right.to_element(mode))


ExprAST = Union[Gen, Scalar, Int, Add, Sub, Mul, Neg, Pow, Bracket]


# ============================================================
# Parser
# ============================================================

_ATOM_START = ["E", "F", "K", "Kinv", "H", "q", "INT", "{scalar}", "(", "["]


@dataclass
class _Parser:
    tokens: List[Token]
    allow_h: bool = False
    pos: int = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def fail(self, message: str, expected: List[str], kind: str = "syntax") -> ExprSyntaxError:
        t = self.tok
        found = t.text if t.kind != "EOF" else "end of input"
        return ExprSyntaxError(f"{message}, found {found!r}", t.line, t.column, expected=expected, kind=kind)

    def expect(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.fail(f"expected {op!r}", [op])
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "EOF":
            raise self.fail("unexpected trailing input", ["+", "-", "*", "^", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*"):
            self.advance()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Node:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> int:
        if self.at_op("("):
            self.advance()
            value = self._signed_int()
            if not self.at_op(")"):
                raise self.fail("exponent must be an integer literal", [")"], kind="non-integer exponent")
            self.advance()
            return value
        return self._signed_int()

    def _signed_int(self) -> int:
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind == "INT":
            return sign * int(self.advance().text)
        if self.tok.kind in ("NUMBER", "NAME", "SCALAR") or self.at_op("(", "["):
            raise self.fail("exponent must be an integer literal", ["INT"], kind="non-integer exponent")
        raise self.fail("missing exponent", ["INT", "-", "("])

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "NAME":
            self.advance()
            if t.text == "q":
                return Scalar("q")
            if t.text == "H" and not self.allow_h:
                raise ExprSyntaxError("H is only allowed in hbar-mode commands", t.line, t.column,
                                      expected=[n for n in _ATOM_START if n != "H"])
            return Gen(t.text)
        if t.kind == "INT":
            self.advance()
            return Int(int(t.text))
        if t.kind == "NUMBER":
            self.advance()
            return Scalar(t.text)
        if t.kind == "SCALAR":
            self.advance()
            if not t.text:
                raise ExprSyntaxError("empty scalar literal", t.line, t.column, expected=["scalar"])
            return Scalar(t.text)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if self.at_op("["):
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        raise self.fail("expected an operand", _ATOM_START)


def parse_expr(text: str, allow_h: bool = False) -> Node:
    """Parse text into an expression tree; raises ExprSyntaxError with line and column."""
    return _Parser(tokenize(text), allow_h=allow_h).parse()


# ============================================================
# Printer
# ============================================================

_PREC_SUM, _PREC_PRODUCT, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node: Node) -> int:
    if isinstance(node, (Add, Sub)):
        return _PREC_SUM
    if isinstance(node, Mul):
        return _PREC_PRODUCT
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _wrap(node: Node, min_prec: int) -> str:
    text = print_expr(node)
    return text if _prec(node) >= min_prec else f"({text})"


def print_expr(node: Node) -> str:
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Scalar):
        return "q" if node.text == "q" else "{" + node.text + "}"
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Add):
        return f"{_wrap(node.left, _PREC_SUM)} + {_wrap(node.right, _PREC_PRODUCT)}"
    if isinstance(node, Sub):
        return f"{_wrap(node.left, _PREC_SUM)} - {_wrap(node.right, _PREC_PRODUCT)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, _PREC_PRODUCT)}*{_wrap(node.right, _PREC_NEG)}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, _PREC_NEG)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _PREC_ATOM)}^{node.exponent}"
    if isinstance(node, Bracket):
        return f"[{print_expr(node.left)}, {print_expr(node.right)}]"
    raise TypeError(f"not an expression node: {node!r}")


def element_to_expr(x: PBWElement) -> str:
    """Normal form printed in the grammar, so it can be parsed back."""
    return element_to_text(x)


def scalar_to_expr(c) -> str:
    return "{" + format_scalar(c) + "}"


# ============================================================
# Random trees (round-trip checks)
# ============================================================

def random_ast(rng: random.Random, depth: int = 3, allow_h: bool = False) -> Node:
    leaves = ["E", "F", "K", "Kinv"] + (["H"] if allow_h else [])
    if depth <= 0 or rng.random() < 0.25:
        pick = rng.randrange(4)
        if pick == 0:
            return Int(rng.randint(0, 5))
        if pick == 1:
            return Scalar(rng.choice(["q", "q^2 + 1", "(q - 1)/(q + 2)", "1/2"]))
        return Gen(rng.choice(leaves))
    kind = rng.randrange(7)
    def sub() -> Node:
        return random_ast(rng, depth - 1, allow_h)

    if kind == 0:
        return Add(sub(), sub())
    if kind == 1:
        return Sub(sub(), sub())
    if kind == 2:
        return Mul(sub(), sub())
    if kind == 3:
        return Neg(sub())
    if kind == 4:
        return Pow(sub(), rng.randint(-2, 3))
    if kind == 5:
        return Bracket(sub(), sub())
    return Mul(Gen(rng.choice(leaves)), sub())


# ============================================================
# Evaluation on matrices (admits H)
# ============================================================

def evaluate_on_matrices(node: Node, gens: Dict[str, mx.Matrix], mode: AlgebraMode = SYMBOLIC):
    """Value of the tree with generators replaced by the given matrices."""
    if isinstance(node, Gen):
        if node.name not in gens:
            raise DomainError(f"no matrix for generator {node.name}")
        return gens[node.name]
    dim = mx.size(next(iter(gens.values())))
    one = mx.identity(dim, numeric=not mode.is_symbolic)
    if isinstance(node, Scalar):
        return mx.scale(one, node.value(mode))
    if isinstance(node, Int):
        return mx.scale(one, mode.coerce(node.value))
    if isinstance(node, (Add, Sub, Mul, Bracket)):
        a = evaluate_on_matrices(node.left, gens, mode)
        b = evaluate_on_matrices(node.right, gens, mode)
        if isinstance(node, Add):
            return a + b
        if isinstance(node, Sub):
            return a - b
        if isinstance(node, Mul):
            return mx.matmul(a, b)
        return mx.commutator(a, b)
    if isinstance(node, Neg):
        return mx.scale(evaluate_on_matrices(node.operand, gens, mode), mode.coerce(-1))
    if isinstance(node, Pow):
        return mx.mat_pow(evaluate_on_matrices(node.base, gens, mode), node.exponent)
    raise TypeError(f"not an expression node: {node!r}")
