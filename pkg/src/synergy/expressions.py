"""A small analytic expression language: parsing, evaluation, exact symbolic
partial derivatives, polynomial extraction, and Taylor expansion.

Grammar (EBNF):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := number | 'x' nat | ident | func '(' expr ')' | '(' expr ')' | '-' atom
    func   := 'sin' | 'cos' | 'exp'

Implicit multiplication is rejected. Named constants must be bound at parse
time; unbound identifiers are errors. Every expression built from these
primitives is real-analytic, so symbolic differentiation is total.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

import numpy as np

from .core import Point
from .exceptions import CapExceededError, DimensionMismatchError, ParseError
from .polynomials import MAX_TERMS, MultiIndex, SparsePolynomial

TAYLOR_MAX_ORDER = 12
TAYLOR_MAX_FEATURES = 6

FUNCTIONS = ("sin", "cos", "exp")


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    index: int  # 1-based


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int  # >= 0


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


_ZERO = Const(0.0)
_ONE = Const(1.0)


def add(*terms: Expr) -> Expr:
    flat: list[Expr] = []
    const = 0.0
    for t in terms:
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    kept: list[Expr] = []
    for t in flat:
        if isinstance(t, Const):
            const += t.value
        else:
            kept.append(t)
    if const != 0.0 or not kept:
        kept.append(Const(const))
    return kept[0] if len(kept) == 1 else Add(tuple(kept))


def mul(*factors: Expr) -> Expr:
    flat: list[Expr] = []
    const = 1.0
    for f in factors:
        if isinstance(f, Mul):
            flat.extend(f.factors)
        else:
            flat.append(f)
    kept: list[Expr] = []
    for f in flat:
        if isinstance(f, Const):
            const *= f.value
        else:
            kept.append(f)
    if const == 0.0:
        return _ZERO
    if const != 1.0 or not kept:
        kept.insert(0, Const(const))
    return kept[0] if len(kept) == 1 else Mul(tuple(kept))


def neg(arg: Expr) -> Expr:
    if isinstance(arg, Const):
        return Const(-arg.value)
    return Neg(arg)


def power(base: Expr, exponent: int) -> Expr:
    if exponent < 0:
        raise ValueError("exponent must be a natural number")
    if exponent == 0:
        return _ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**exponent)
    return Pow(base, exponent)


def call(func: str, arg: Expr) -> Expr:
    if isinstance(arg, Const):
        return Const(getattr(math, func)(arg.value))
    return Call(func, arg)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()]))"
)
_VARIABLE = re.compile(r"^x(\d+)$")
_NATURAL = re.compile(r"^\d+$")


@dataclass(frozen=True)
class _Token:
    kind: str  # number | name | op | end
    text: str
    position: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(src):
        match = _TOKEN.match(src, pos)
        if match is None or match.end() == pos:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(src) - len(stripped))
        for kind in ("number", "name", "op"):
            text = match.group(kind)
            if text is not None:
                tokens.append(_Token(kind, text, match.start(kind)))
                break
        pos = match.end()
    tokens.append(_Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, n: int, bindings: Mapping[str, float]):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.n = n
        self.bindings = bindings

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, text: str) -> None:
        token = self.advance()
        if token.kind != "op" or token.text != text:
            raise ParseError(f"expected {text!r}", token.position)

    def parse(self) -> Expr:
        expr = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected {token.text!r}", token.position)
        return expr

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            term = self.term()
            terms.append(term if op == "+" else neg(term))
        return add(*terms)

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            factors.append(self.factor())
        return mul(*factors)

    def factor(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            token = self.advance()
            if token.kind != "number" or not _NATURAL.match(token.text):
                raise ParseError("exponent must be a natural number", token.position)
            return power(base, int(token.text))
        return base

    def atom(self) -> Expr:
        token = self.advance()
        if token.kind == "number":
            return Const(float(token.text))
        if token.kind == "name":
            variable = _VARIABLE.match(token.text)
            if variable:
                index = int(variable.group(1))
                if not 1 <= index <= self.n:
                    raise ParseError(
                        f"variable x{index} outside x1..x{self.n}", token.position
                    )
                return Var(index)
            if token.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return call(token.text, arg)
            if token.text in self.bindings:
                return Const(float(self.bindings[token.text]))
            raise ParseError(f"unknown identifier {token.text!r}", token.position)
        if token.kind == "op":
            if token.text == "(":
                inner = self.expr()
                self.expect_op(")")
                return inner
            if token.text == "-":
                return neg(self.atom())
        raise ParseError(f"unexpected {token.text or 'end of input'!r}", token.position)


def parse(src: str, n: int, bindings: Mapping[str, float] | None = None) -> Expr:
    """Parse expression text over variables x1..xn with optional constant bindings."""
    return _Parser(src, n, bindings or {}).parse()


# ---------------------------------------------------------------------------
# Evaluation, printing, differentiation
# ---------------------------------------------------------------------------

def _apply(func: str, value):
    if isinstance(value, np.ndarray):
        return {"sin": np.sin, "cos": np.cos, "exp": np.exp}[func](value)
    return getattr(math, func)(value)


def evaluate(expr: Expr, y: Sequence):
    """Evaluate at a point; components may be scalars or numpy arrays."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        if expr.index > len(y):
            raise DimensionMismatchError(
                f"expression uses x{expr.index} but point has {len(y)} components"
            )
        return y[expr.index - 1]
    if isinstance(expr, Neg):
        return -evaluate(expr.arg, y)
    if isinstance(expr, Add):
        total = evaluate(expr.terms[0], y)
        for term in expr.terms[1:]:
            total = total + evaluate(term, y)
        return total
    if isinstance(expr, Mul):
        total = evaluate(expr.factors[0], y)
        for factor in expr.factors[1:]:
            total = total * evaluate(factor, y)
        return total
    if isinstance(expr, Pow):
        return evaluate(expr.base, y) ** expr.exponent
    if isinstance(expr, Call):
        return _apply(expr.func, evaluate(expr.arg, y))
    raise TypeError(f"unknown node {expr!r}")


def _print_atom(expr: Expr) -> str:
    text = to_text(expr)
    if isinstance(expr, (Var, Call)):
        return text
    if isinstance(expr, Const) and expr.value >= 0:
        return text
    return f"({text})"


def to_text(expr: Expr) -> str:
    """Render to the surface grammar; parsing the result reproduces the node."""
    if isinstance(expr, Const):
        return repr(expr.value) if expr.value >= 0 else f"(-{abs(expr.value)!r})"
    if isinstance(expr, Var):
        return f"x{expr.index}"
    if isinstance(expr, Neg):
        return f"(-{_print_atom(expr.arg)})"
    if isinstance(expr, Add):
        parts = [to_text(expr.terms[0])]
        for term in expr.terms[1:]:
            if isinstance(term, Neg):
                parts.append(f" - {_print_atom(term.arg)}")
            elif isinstance(term, Const) and term.value < 0:
                parts.append(f" - {abs(term.value)!r}")
            else:
                parts.append(f" + {to_text(term)}")
        return "".join(parts)
    if isinstance(expr, Mul):
        return "*".join(
            f"({to_text(f)})" if isinstance(f, Add) else _print_atom(f)
            for f in expr.factors
        )
    if isinstance(expr, Pow):
        base = to_text(expr.base)
        if not isinstance(expr.base, (Var, Call)):
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    if isinstance(expr, Call):
        return f"{expr.func}({to_text(expr.arg)})"
    raise TypeError(f"unknown node {expr!r}")


def partial(expr: Expr, i: int) -> Expr:
    """Exact symbolic derivative with respect to x_i."""
    if isinstance(expr, (Const,)):
        return _ZERO
    if isinstance(expr, Var):
        return _ONE if expr.index == i else _ZERO
    if isinstance(expr, Neg):
        return neg(partial(expr.arg, i))
    if isinstance(expr, Add):
        return add(*(partial(t, i) for t in expr.terms))
    if isinstance(expr, Mul):
        pieces = []
        for j, factor in enumerate(expr.factors):
            d = partial(factor, i)
            if d is _ZERO or (isinstance(d, Const) and d.value == 0.0):
                continue
            rest = expr.factors[:j] + expr.factors[j + 1 :]
            pieces.append(mul(d, *rest))
        return add(*pieces) if pieces else _ZERO
    if isinstance(expr, Pow):
        d = partial(expr.base, i)
        return mul(Const(float(expr.exponent)), power(expr.base, expr.exponent - 1), d)
    if isinstance(expr, Call):
        d = partial(expr.arg, i)
        if expr.func == "sin":
            outer: Expr = call("cos", expr.arg)
        elif expr.func == "cos":
            outer = neg(call("sin", expr.arg))
        else:
            outer = call("exp", expr.arg)
        return mul(outer, d)
    raise TypeError(f"unknown node {expr!r}")


def is_polynomial(expr: Expr) -> bool:
    if isinstance(expr, Call):
        return False
    if isinstance(expr, (Const, Var)):
        return True
    if isinstance(expr, Neg):
        return is_polynomial(expr.arg)
    if isinstance(expr, Add):
        return all(is_polynomial(t) for t in expr.terms)
    if isinstance(expr, Mul):
        return all(is_polynomial(f) for f in expr.factors)
    if isinstance(expr, Pow):
        return is_polynomial(expr.base)
    raise TypeError(f"unknown node {expr!r}")


def _convolve(a: dict[MultiIndex, float], b: dict[MultiIndex, float]) -> dict:
    out: dict[MultiIndex, float] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            out[key] = out.get(key, 0.0) + ca * cb
            if len(out) > MAX_TERMS:
                raise CapExceededError("polynomial expansion exceeds the term cap")
    return {m: c for m, c in out.items() if c != 0.0}


def to_polynomial(expr: Expr, center: Point) -> SparsePolynomial | None:
    """Exact expansion in powers of (y - center), or None when transcendental.

    Recenters by substituting y_i = (y_i - center_i) + center_i and expanding.
    """
    if not is_polynomial(expr):
        return None
    n = len(center)
    zero = (0,) * n

    def walk(e: Expr) -> dict[MultiIndex, float]:
        if isinstance(e, Const):
            return {zero: e.value} if e.value != 0.0 else {}
        if isinstance(e, Var):
            unit = tuple(1 if j == e.index - 1 else 0 for j in range(n))
            out = {unit: 1.0}
            if center[e.index - 1] != 0.0:
                out[zero] = center[e.index - 1]
            return out
        if isinstance(e, Neg):
            return {m: -c for m, c in walk(e.arg).items()}
        if isinstance(e, Add):
            out: dict[MultiIndex, float] = {}
            for t in e.terms:
                for m, c in walk(t).items():
                    out[m] = out.get(m, 0.0) + c
            return {m: c for m, c in out.items() if c != 0.0}
        if isinstance(e, Mul):
            out = {zero: 1.0}
            for f in e.factors:
                out = _convolve(out, walk(f))
            return out
        if isinstance(e, Pow):
            out = {zero: 1.0}
            base = walk(e.base)
            for _ in range(e.exponent):
                out = _convolve(out, base)
            return out
        raise TypeError(f"unknown node {e!r}")

    return SparsePolynomial(center, walk(expr))


def _multi_indices(n: int, max_total: int) -> list[MultiIndex]:
    """All exponent vectors with total degree <= max_total, in graded order."""
    out: list[MultiIndex] = []
    for total in range(max_total + 1):
        block = set()
        for slots in combinations_with_replacement(range(n), total):
            m = [0] * n
            for s in slots:
                m[s] += 1
            block.add(tuple(m))
        out.extend(sorted(block))
    return out


def taylor(expr: Expr, center: Point, order: int) -> SparsePolynomial:
    """Degree-`order` Taylor polynomial at `center`.

    Polynomial expressions are expanded exactly and truncated. Transcendental
    expressions go through nested symbolic differentiation with the derivative
    tree memoized per exponent vector; those are capped at order 12 and 6
    features.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    exact = to_polynomial(expr, center)
    if exact is not None:
        return exact.truncate(order)
    n = len(center)
    if order > TAYLOR_MAX_ORDER:
        raise CapExceededError(f"taylor order capped at {TAYLOR_MAX_ORDER}")
    if n > TAYLOR_MAX_FEATURES:
        raise CapExceededError(
            f"taylor of transcendental expressions capped at {TAYLOR_MAX_FEATURES} features"
        )
    derivatives: dict[MultiIndex, Expr] = {(0,) * n: expr}
    terms: dict[MultiIndex, float] = {}
    for m in _multi_indices(n, order):
        if m not in derivatives:
            j = next(i for i, e in enumerate(m) if e > 0)
            parent = m[:j] + (m[j] - 1,) + m[j + 1 :]
            derivatives[m] = partial(derivatives[parent], j + 1)
        coefficient = evaluate(derivatives[m], center)
        for e in m:
            coefficient /= math.factorial(e)
        if coefficient != 0.0:
            terms[m] = coefficient
    return SparsePolynomial(center, terms)


def from_polynomial(p: SparsePolynomial) -> Expr:
    """Expression tree evaluating identically to the polynomial."""
    terms = []
    for m in sorted(p.terms):
        factors: list[Expr] = [Const(p.terms[m])]
        for i, e in enumerate(m):
            if e:
                base: Expr = Var(i + 1)
                if p.center[i] != 0.0:
                    base = add(base, Const(-p.center[i]))
                factors.append(power(base, e))
        terms.append(mul(*factors))
    return add(*terms) if terms else _ZERO
