"""Sparse multivariate polynomials over Q in named parameters.

A polynomial carries the ordered tuple of variable names it lives over;
operations require both operands to share that tuple.  The monomial order
used everywhere is lex with ``vars[0]`` highest.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Mapping

from .upoly import UPoly

Q = Fraction

Mono = tuple[int, ...]


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[Mono, Fraction] | None = None):
        self.vars = tuple(vars)
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[tuple(mono)] = Q(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, vars: tuple[str, ...], c) -> "MPoly":
        c = Q(c)
        if not c:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: tuple[str, ...], name: str) -> "MPoly":
        i = vars.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {mono: Q(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(not any(m) for m in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Q(0)
        [(m, c)] = self.terms.items()
        if any(m):
            raise ValueError("not a constant polynomial")
        return c

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def lm(self) -> Mono:
        return max(self.terms)

    def lc(self) -> Fraction:
        return self.terms[self.lm()]

    def support_vars(self) -> set[str]:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(self.vars[i])
        return out

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def _check(self, other: "MPoly"):
        if self.vars != other.vars:
            raise ValueError("operands live over different parameter lists")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Q(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly(self.vars, out)

    def __radd__(self, other) -> "MPoly":
        return self.__add__(other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, Q(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly(self.vars, out)

    def __rmul__(self, other) -> "MPoly":
        return self.__mul__(other)

    def scale(self, c) -> "MPoly":
        c = Q(c)
        if not c:
            return MPoly(self.vars)
        return MPoly(self.vars, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, c: Fraction, mono: Mono) -> "MPoly":
        if not c:
            return MPoly(self.vars)
        return MPoly(
            self.vars,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()},
        )

    # -- normal forms ----------------------------------------------------------

    def monic(self) -> "MPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    def content_normalized(self) -> "MPoly":
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if self.is_zero():
            return self
        num = 0
        den = 1
        for c in self.terms.values():
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        factor = Q(num, den)
        if self.lc() < 0:
            factor = -factor
        return self.scale(1 / factor)

    # -- substitution and conversion ---------------------------------------------

    def substitute(self, values: Mapping[str, "MPoly | Fraction | int"]) -> "MPoly":
        """Replace named variables; unmapped variables stay themselves."""
        mapped: dict[int, MPoly] = {}
        for name, v in values.items():
            i = self.vars.index(name)
            if isinstance(v, MPoly):
                self._check(v)
                mapped[i] = v
            else:
                mapped[i] = MPoly.const(self.vars, v)
        out = MPoly(self.vars)
        for m, c in self.terms.items():
            term = MPoly.const(self.vars, c)
            rest = list(m)
            for i, val in mapped.items():
                e = m[i]
                if e:
                    rest[i] = 0
                    term = term * val**e
            term = term.mul_term(Q(1), tuple(rest))
            out = out + term
        return out

    def is_univariate_in(self, name: str) -> bool:
        sup = self.support_vars()
        return sup <= {name}

    def to_upoly(self, name: str) -> UPoly:
        """Conversion for polynomials univariate in ``name`` (constants allowed)."""
        i = self.vars.index(name)
        coeffs: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            if any(e for j, e in enumerate(m) if j != i and e):
                raise ValueError("polynomial is not univariate in " + name)
            coeffs[m[i]] = c
        if not coeffs:
            return UPoly()
        out = [Q(0)] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c
        return UPoly(out)

    @classmethod
    def from_upoly(cls, vars: tuple[str, ...], name: str, f: UPoly) -> "MPoly":
        v = cls.variable(vars, name)
        out = cls(vars)
        for k, c in enumerate(f.coeffs):
            if c:
                out = out + cls.const(vars, c) * v**k
        return out

    def rename(self, mapping: Mapping[str, str], new_vars: tuple[str, ...]) -> "MPoly":
        """Move to a new variable tuple, renaming via ``mapping``."""
        index = []
        for i, name in enumerate(self.vars):
            target = mapping.get(name, name)
            index.append(new_vars.index(target) if target in new_vars else None)
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            nm = [0] * len(new_vars)
            for i, e in enumerate(m):
                if e:
                    if index[i] is None:
                        raise ValueError(f"variable {self.vars[i]} has no home in the target")
                    nm[index[i]] += e
            out[tuple(nm)] = out.get(tuple(nm), Q(0)) + c
        return MPoly(new_vars, out)

    # -- rendering ------------------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(self.vars, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"
