"""Textual equation language.

Grammar (explicit '*' everywhere, no juxtaposition):

    equation := expr ("=" expr)? EOF
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | factor
    factor   := base ("^" NAT)?
    base     := NAT | "x" | yterm | "(" expr ")"
    yterm    := "y" "'"* | "D" "(" "y" "," NAT ")"

Rational constants like 3/4 come out of the division rule with the same exact
value.  An "=" clause moves the right side to the left.  Division is only
allowed by subexpressions free of y; those rational-function coefficients are
cleared during normalization.  Derivatives above y''' are written D(y,k);
the form y^(k) is rejected with a hint since it collides with powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diffpoly import DiffPoly, normalize
from .errors import ParseError
from .upoly import ONE, RFunc, UPoly, X

Q = Fraction

_MAX_DEPTH = 100


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM X Y D LP RP PLUS MINUS STAR SLASH CARET EQ COMMA EOF
    value: int | None
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch == "y":
            j = i + 1
            primes = 0
            while j < n and text[j] == "'":
                primes += 1
                j += 1
            tokens.append(_Token("Y", primes, line, start_col))
            col += j - i
            i = j
            continue
        if ch == "x":
            tokens.append(_Token("X", None, line, start_col))
        elif ch == "D":
            tokens.append(_Token("D", None, line, start_col))
        elif ch == "(":
            tokens.append(_Token("LP", None, line, start_col))
        elif ch == ")":
            tokens.append(_Token("RP", None, line, start_col))
        elif ch == "+":
            tokens.append(_Token("PLUS", None, line, start_col))
        elif ch == "-":
            tokens.append(_Token("MINUS", None, line, start_col))
        elif ch == "*":
            tokens.append(_Token("STAR", None, line, start_col))
        elif ch == "/":
            tokens.append(_Token("SLASH", None, line, start_col))
        elif ch == "^":
            tokens.append(_Token("CARET", None, line, start_col))
        elif ch == "=":
            tokens.append(_Token("EQ", None, line, start_col))
        elif ch == ",":
            tokens.append(_Token("COMMA", None, line, start_col))
        elif ch.isalpha():
            raise ParseError(
                f"unknown symbol '{ch}'; parameters must be instantiated with "
                "rational values before input",
                line,
                start_col,
            )
        else:
            raise ParseError(f"unexpected character '{ch}'", line, start_col)
        i += 1
        col += 1
    tokens.append(_Token("EOF", None, line, col))
    return tokens


class _Jet:
    """Polynomial in the y-jet with rational-function coefficients; the
    lowering value of every subexpression."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, ...], RFunc] | None = None):
        self.terms = {}
        if terms:
            for key, f in terms.items():
                if not f.is_zero():
                    self.terms[_trim(key)] = f

    @classmethod
    def const(cls, f: RFunc) -> "_Jet":
        return cls({(): f})

    @classmethod
    def deriv(cls, k: int) -> "_Jet":
        return cls({(0,) * k + (1,): RFunc(ONE)})

    def __add__(self, other: "_Jet") -> "_Jet":
        out = dict(self.terms)
        for key, f in other.terms.items():
            s = out.get(key, RFunc(UPoly())) + f
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return _Jet(out)

    def __neg__(self) -> "_Jet":
        return _Jet({k: -f for k, f in self.terms.items()})

    def __sub__(self, other: "_Jet") -> "_Jet":
        return self + (-other)

    def __mul__(self, other: "_Jet") -> "_Jet":
        out: dict[tuple[int, ...], RFunc] = {}
        for k1, f1 in self.terms.items():
            for k2, f2 in other.terms.items():
                k = _add_keys(k1, k2)
                s = out.get(k, RFunc(UPoly())) + f1 * f2
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return _Jet(out)

    def __pow__(self, e: int) -> "_Jet":
        result = _Jet.const(RFunc(ONE))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_y_free(self) -> bool:
        return all(not any(k) for k in self.terms)

    def as_rfunc(self) -> RFunc:
        acc = RFunc(UPoly())
        for k, f in self.terms.items():
            acc = acc + f
        return acc


def _trim(key: tuple[int, ...]) -> tuple[int, ...]:
    k = list(key)
    while k and k[-1] == 0:
        k.pop()
    return tuple(k)


def _add_keys(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.depth = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, what: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {what}", t.line, t.col)
        return self.next()

    def fail(self, message: str):
        t = self.peek()
        raise ParseError(message, t.line, t.col)

    # grammar rules ---------------------------------------------------------

    def equation(self) -> _Jet:
        left = self.expr()
        if self.peek().kind == "EQ":
            self.next()
            right = self.expr()
            left = left - right
        if self.peek().kind != "EOF":
            self.fail("unexpected trailing input")
        return left

    def expr(self) -> _Jet:
        acc = self.term()
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.next().kind
            rhs = self.term()
            acc = acc + rhs if op == "PLUS" else acc - rhs
        return acc

    def term(self) -> _Jet:
        acc = self.unary()
        while self.peek().kind in ("STAR", "SLASH"):
            tok = self.next()
            rhs = self.unary()
            if tok.kind == "STAR":
                acc = acc * rhs
            else:
                if not rhs.is_y_free():
                    raise ParseError(
                        "division by an expression involving y is not allowed",
                        tok.line,
                        tok.col,
                    )
                div = rhs.as_rfunc()
                if div.is_zero():
                    raise ParseError("division by zero", tok.line, tok.col)
                inv = _Jet.const(RFunc(ONE) / div)
                acc = acc * inv
        return acc

    def unary(self) -> _Jet:
        if self.peek().kind == "MINUS":
            self.next()
            return -self.unary()
        return self.factor()

    def factor(self) -> _Jet:
        base, was_y = self.base()
        if self.peek().kind == "CARET":
            caret = self.next()
            t = self.peek()
            if t.kind == "LP":
                if was_y:
                    raise ParseError(
                        "y^(k) is ambiguous: use D(y,k) for the k-th derivative "
                        "or y^k for a power",
                        caret.line,
                        caret.col,
                    )
                raise ParseError(
                    "the exponent must be a nonnegative integer literal",
                    t.line,
                    t.col,
                )
            e = self.expect("NUM", "a nonnegative integer exponent")
            return base**e.value
        return base

    def base(self) -> tuple[_Jet, bool]:
        t = self.peek()
        if t.kind == "NUM":
            self.next()
            return _Jet.const(RFunc(UPoly.const(t.value))), False
        if t.kind == "X":
            self.next()
            return _Jet.const(RFunc(X)), False
        if t.kind == "Y":
            self.next()
            return _Jet.deriv(t.value), True
        if t.kind == "D":
            self.next()
            self.expect("LP", "'(' after D")
            y = self.expect("Y", "y inside D(y,k)")
            if y.value != 0:
                raise ParseError("write D(y,k), not D(y',k)", y.line, y.col)
            self.expect("COMMA", "',' in D(y,k)")
            k = self.expect("NUM", "a derivative order in D(y,k)")
            self.expect("RP", "')' closing D(y,k)")
            return _Jet.deriv(k.value), True
        if t.kind == "LP":
            self.next()
            self.depth += 1
            if self.depth > _MAX_DEPTH:
                raise ParseError("expression is nested too deeply", t.line, t.col)
            inner = self.expr()
            self.expect("RP", "')'")
            self.depth -= 1
            return inner, False
        self.fail("expected a number, x, y, D(y,k) or '('")


def parse_equation(text: str) -> DiffPoly:
    """Parse and lower an equation to its normalized differential polynomial."""
    jet = _Parser(text).equation()
    return normalize(jet.terms)


def parse_poly(text: str) -> UPoly:
    """Parse a polynomial in x alone (used for naming finite places)."""
    jet = _Parser(text).equation()
    if not jet.is_y_free():
        raise ParseError("expected a polynomial in x, found y")
    f = jet.as_rfunc()
    if not f.is_poly():
        raise ParseError("expected a polynomial in x, found a denominator")
    return f.num.scale(1 / f.den.coeff(0))
