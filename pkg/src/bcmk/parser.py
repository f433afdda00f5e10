"""Expression language for mixed polynomials.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' uint)*
    atom   := literal | var | conjfn '(' conjarg ')' | '(' expr ')'
    conjarg:= var | conjfn '(' conjarg ')'
    var    := 'Z' uint            (Z1 is variable index 0)
    conjfn := 'tilde' | 'hat' | 'bar'

Literals are real numbers optionally suffixed by a unit (``2``, ``1/2i``,
``0.25k``, ``1e-3j``) or a bare unit ``i``/``j``/``k``. Decimals are read as
exact fractions. Multiplication must be written out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .bicomplex import Bicomplex, compose_conjugations
from .errors import ArityError
from .poly import MixedPolynomial, format_polynomial

MAX_EXPONENT = 1000
MAX_DECIMAL_EXPONENT = 400
MAX_TERMS = 20000


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{exp}")

    def to_json(self):
        return {"error": "syntax", "message": str(self), "line": self.line,
                "column": self.column, "expected": self.expected}


# -- tokens -------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?[ijk]?)
  | (?P<var>Z\d+)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)

_CONJ = ("tilde", "hat", "bar")
_UNITS = {"i": Bicomplex(0, 1), "j": Bicomplex(0, 0, 1), "k": Bicomplex(0, 0, 0, 1)}


@dataclass(frozen=True)
class Token:
    kind: str  # num, unit, var, conj, op, end
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, col0 = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - col0 + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "ws":
            nl = tok.count("\n")
            if nl:
                line += nl
                col0 = pos + tok.rfind("\n") + 1
        elif kind == "name":
            if tok in _CONJ:
                out.append(Token("conj", tok, line, col))
            elif tok in _UNITS:
                out.append(Token("unit", tok, line, col))
            else:
                raise ParseError(f"unknown name {tok!r}", line, col, ["Z<n>", "i", "j", "k", *_CONJ])
        else:
            out.append(Token(kind, tok, line, col))
        pos = m.end()
    out.append(Token("end", "", line, pos - col0 + 1))
    return out


# -- AST --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    value: Bicomplex

    def to_json(self):
        return {"type": "literal", "value": self.value.to_json()}


@dataclass(frozen=True)
class Var:
    index: int  # 0-based
    kind: str = "Z"  # Z, tilde, hat or bar

    def to_json(self):
        return {"type": "var", "index": self.index + 1, "conj": None if self.kind == "Z" else self.kind}


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int

    def to_json(self):
        return {"type": "power", "base": self.base.to_json(), "exponent": self.exponent}


@dataclass(frozen=True)
class Product:
    factors: tuple

    def to_json(self):
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def to_json(self):
        return {"type": "sum", "terms": [t.to_json() for t in self.terms]}


@dataclass(frozen=True)
class Neg:
    operand: object

    def to_json(self):
        return {"type": "neg", "operand": self.operand.to_json()}


def _number(tok: Token) -> Bicomplex:
    text = tok.text
    unit = None
    if text[-1] in "ijk":
        text, unit = text[:-1], text[-1]
    num, _, den = text.partition("/")
    m = re.search(r"[eE]([+-]?\d+)$", num)
    if m and abs(int(m.group(1))) > MAX_DECIMAL_EXPONENT:
        raise ParseError("decimal exponent too large", tok.line, tok.col)
    value = Fraction(num)
    if den:
        if int(den) == 0:
            raise ParseError("division by zero in literal", tok.line, tok.col)
        value /= int(den)
    if value.denominator == 1:
        value = value.numerator
    return _UNITS[unit].scale(value) if unit else Bicomplex(value, 0, 0, 0)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def fail(self, expected, what=None):
        t = self.tok
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(what or f"unexpected {got}", t.line, t.col, expected)

    def take(self, kind, text=None, expected=None):
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        self.fail(expected or [text or kind])

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(["+", "-", "*", "^", "end of input"])
        return node

    def expr(self):
        terms = [self.term()]
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.pos += 1
            t = self.term()
            terms.append(Neg(t) if op == "-" else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.tok.kind == "op" and self.tok.text == "*":
            self.pos += 1
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.pos += 1
            inner = self.unary()
            return Neg(inner) if op == "-" else inner
        return self.power()

    def power(self):
        node = self.atom()
        while self.tok.kind == "op" and self.tok.text == "^":
            self.pos += 1
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                self.fail(["nonnegative integer"])
            k = int(t.text)
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", t.line, t.col)
            self.pos += 1
            node = Power(node, k)
        return node

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.pos += 1
            return Literal(_number(t))
        if t.kind == "unit":
            self.pos += 1
            return Literal(_UNITS[t.text])
        if t.kind == "var":
            self.pos += 1
            return self._var(t, "Z")
        if t.kind == "conj":
            return self.conj()
        if t.kind == "op" and t.text == "(":
            self.pos += 1
            node = self.expr()
            self.take("op", ")", [")", "+", "-", "*", "^"])
            return node
        self.fail(["number", "i", "j", "k", "Z<n>", *_CONJ, "(", "+", "-"])

    def conj(self):
        name = self.take("conj").text
        self.take("op", "(", ["("])
        t = self.tok
        if t.kind == "var":
            self.pos += 1
            inner = self._var(t, "Z")
        elif t.kind == "conj":
            inner = self.conj()
        else:
            self.fail(["Z<n>", *_CONJ], "conjugation applies only to a variable")
        self.take("op", ")", [")"])
        kind = compose_conjugations(None if inner.kind == "Z" else inner.kind, name)
        return Var(inner.index, kind or "Z")

    def _var(self, t: Token, kind):
        idx = int(t.text[1:])
        if idx < 1:
            raise ParseError("variable indices start at 1", t.line, t.col)
        return Var(idx - 1, kind)


def parse_ast(text: str):
    if not isinstance(text, str):
        raise TypeError("expression text must be str")
    return _Parser(text).parse()


def max_index(node) -> int:
    if isinstance(node, Var):
        return node.index + 1
    if isinstance(node, Literal):
        return 0
    if isinstance(node, (Power, Neg)):
        return max_index(node.base if isinstance(node, Power) else node.operand)
    return max((max_index(c) for c in (node.factors if isinstance(node, Product) else node.terms)), default=0)


def lower(node, n: int) -> MixedPolynomial:
    if isinstance(node, Literal):
        return MixedPolynomial.constant(node.value, n)
    if isinstance(node, Var):
        if node.index >= n:
            raise ArityError(f"Z{node.index + 1} used but only {n} variable(s) declared")
        return MixedPolynomial.variable(node.index, n, node.kind)
    if isinstance(node, Neg):
        return -lower(node.operand, n)
    if isinstance(node, Sum):
        out = MixedPolynomial(n, [])
        for t in node.terms:
            out = out + lower(t, n)
        return out
    if isinstance(node, Product):
        out = MixedPolynomial.constant(1, n)
        for f in node.factors:
            out = out * lower(f, n)
            if len(out) > MAX_TERMS:
                raise ValueError(f"expansion exceeds {MAX_TERMS} terms")
        return out
    if isinstance(node, Power):
        base = lower(node.base, n)
        if len(base) > 1 and node.exponent > 64:
            raise ValueError("refusing to expand a large power of a sum")
        out = base**node.exponent
        if len(out) > MAX_TERMS:
            raise ValueError(f"expansion exceeds {MAX_TERMS} terms")
        return out
    raise TypeError(f"unknown node {node!r}")


def parse(text: str, n: int | None = None) -> MixedPolynomial:
    """Parse text into a normalized polynomial in ``n`` variables (default: highest index used)."""
    node = parse_ast(text)
    need = max_index(node)
    if n is None:
        n = need
    elif need > n:
        raise ArityError(f"Z{need} used but only {n} variable(s) declared")
    return lower(node, n)


def format(F: MixedPolynomial) -> str:  # noqa: A001 - mirrors the operation name
    return format_polynomial(F)
