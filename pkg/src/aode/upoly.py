"""Exact univariate polynomial arithmetic over the rationals.

Everything here is built on ``fractions.Fraction`` and is immutable, so
values can be shared freely.  The module also fixes the one sign convention
that the rest of the toolkit depends on: the order of a function at a place
is the order of the pole, so it is positive for poles and non-positive for
polynomials (``ord = -multiplicity`` at a finite factor, ``ord = degree`` at
infinity).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Iterator, Sequence

from .errors import UndefinedOrderError

Q = Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected a rational coefficient, got {type(c).__name__}")


class UPoly:
    """Univariate polynomial over Q, stored densely by ascending exponent.

    The zero polynomial has an empty coefficient tuple; its ``degree`` is the
    sentinel -1 (standing in for minus infinity, callers guard the zero case).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "UPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def x_minus(cls, x0) -> "UPoly":
        return cls((-_as_fraction(x0), 1))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring operations -----------------------------------------------

    def __add__(self, other) -> "UPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    def __radd__(self, other) -> "UPoly":
        return self.__add__(other)

    def __neg__(self) -> "UPoly":
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Q(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UPoly(out)

    def __rmul__(self, other) -> "UPoly":
        return self.__mul__(other)

    def scale(self, c) -> "UPoly":
        c = _as_fraction(c)
        if c == 0:
            return UPoly()
        return UPoly(tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "UPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return UPoly((Q(0),) * k + self.coeffs)

    def __divmod__(self, other) -> tuple["UPoly", "UPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.coeffs[-1]
        if len(rem) - 1 < d:
            return UPoly(), self
        quot = [Q(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = c / lc
                quot[i - d] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= q * b
        return UPoly(quot), UPoly(rem)

    def __floordiv__(self, other) -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, _coerce(other))
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def divides(self, other: "UPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- calculus and evaluation ----------------------------------------

    def derivative(self) -> "UPoly":
        return UPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- normal forms ----------------------------------------------------

    def monic(self) -> "UPoly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def content(self) -> Fraction:
        """Positive rational c with self/c integer, primitive; 0 for the zero polynomial."""
        if self.is_zero():
            return Q(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Q(num, den)

    def primitive(self) -> tuple[Fraction, "UPoly"]:
        """Split into (content with the leading sign, primitive part with positive lc)."""
        if self.is_zero():
            return Q(0), self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return c, self.scale(1 / c)

    # -- rendering --------------------------------------------------------

    def render(self, var: str = "x") -> str:
        """Canonical text: descending powers, explicit '*', e.g. ``-1/2*x^3 + x - 2``."""
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = var if mag == 1 else f"{mag}*{var}"
            else:
                body = f"{var}^{k}" if mag == 1 else f"{mag}*{var}^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self.render()})"

    def __str__(self) -> str:
        return self.render()


def _coerce(v) -> UPoly:
    if isinstance(v, UPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return UPoly.const(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to UPoly")


X = UPoly((0, 1))
ONE = UPoly((1,))
ZERO = UPoly()


def gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def lcm(a: UPoly, b: UPoly) -> UPoly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b).exact_div(gcd(a, b)).monic()


# -- places: finite irreducible factors and infinity -----------------------


def ord_at_factor(f: UPoly, p: UPoly) -> int:
    """-multiplicity of the monic irreducible p in f (so always <= 0 for polynomials)."""
    if f.is_zero():
        raise UndefinedOrderError("order of the zero polynomial is undefined")
    if not p.is_monic() or p.degree < 1:
        raise ValueError("place must be a monic polynomial of positive degree")
    mu = 0
    while True:
        q, r = divmod(f, p)
        if not r.is_zero():
            return -mu
        f = q
        mu += 1


class Residue:
    """An element of Q[x]/(p) for a monic irreducible p, stored reduced."""

    __slots__ = ("modulus", "value")

    def __init__(self, modulus: UPoly, value: UPoly):
        if not modulus.is_monic() or modulus.degree < 1:
            raise ValueError("modulus must be monic of positive degree")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _check(self, other: "Residue"):
        if self.modulus != other.modulus:
            raise ValueError("residues over distinct moduli")

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.modulus, self.value + other.value)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.modulus, self.value - other.value)

    def __mul__(self, other) -> "Residue":
        if isinstance(other, (int, Fraction)):
            return Residue(self.modulus, self.value.scale(other))
        self._check(other)
        return Residue(self.modulus, self.value * other.value)

    def __rmul__(self, other) -> "Residue":
        return self.__mul__(other)

    def __neg__(self) -> "Residue":
        return Residue(self.modulus, -self.value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Residue):
            return NotImplemented
        return self.modulus == other.modulus and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.modulus, self.value))

    def as_rational(self) -> Fraction:
        """The scalar value when the modulus is linear (the residue field is Q)."""
        if self.modulus.degree != 1:
            raise ValueError("residue field is a proper extension of Q")
        return self.value.coeff(0)

    def render(self) -> str:
        return self.value.render()

    def __repr__(self) -> str:
        return f"Residue({self.value.render()} mod {self.modulus.render()})"


def lowest_coeff_at_factor(f: UPoly, p: UPoly) -> Residue:
    """(f / p^mu) mod p where mu is the multiplicity of p in f."""
    if f.is_zero():
        raise UndefinedOrderError("lowest coefficient of the zero polynomial is undefined")
    mu = -ord_at_factor(f, p)
    for _ in range(mu):
        f = f.exact_div(p)
    return Residue(p, f % p)


class RFunc:
    """Rational function num/den over Q with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = ONE
        else:
            g = gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.lc
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RFunc is immutable")

    @classmethod
    def const(cls, c) -> "RFunc":
        return cls(UPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, UPoly)):
            return self == RFunc(_coerce(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RFunc":
        other = self._coerce(other)
        return RFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other) -> "RFunc":
        return self.__add__(other)

    def __neg__(self) -> "RFunc":
        return RFunc(-self.num, self.den)

    def __sub__(self, other) -> "RFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RFunc":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "RFunc":
        other = self._coerce(other)
        return RFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other) -> "RFunc":
        return self.__mul__(other)

    def __truediv__(self, other) -> "RFunc":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RFunc":
        if n < 0:
            return RFunc(self.den, self.num) ** (-n)
        return RFunc(self.num**n, self.den**n)

    def derivative(self) -> "RFunc":
        return RFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    @staticmethod
    def _coerce(v) -> "RFunc":
        if isinstance(v, RFunc):
            return v
        return RFunc(_coerce(v))

    def render(self, var: str = "x") -> str:
        if self.is_poly():
            return self.num.render(var)
        num = self.num.render(var)
        den = self.den.render(var)
        if len(self.num.coeffs) - self.num.coeffs.count(0) > 1 or self.num.coeffs[-1] < 0:
            num = f"({num})"
        if len(self.den.coeffs) - self.den.coeffs.count(0) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RFunc({self.render()})"


def ord_at_infinity(f) -> int:
    """deg(num) - deg(den); equals the degree for polynomial input."""
    if isinstance(f, UPoly):
        if f.is_zero():
            raise UndefinedOrderError("order of zero at infinity is undefined")
        return f.degree
    if f.is_zero():
        raise UndefinedOrderError("order of zero at infinity is undefined")
    return f.num.degree - f.den.degree


def lowest_coeff_at_infinity(f) -> Fraction:
    """Ratio of leading coefficients (the leading coefficient for polynomials)."""
    if isinstance(f, UPoly):
        if f.is_zero():
            raise UndefinedOrderError("lowest coefficient of zero at infinity is undefined")
        return f.lc
    if f.is_zero():
        raise UndefinedOrderError("lowest coefficient of zero at infinity is undefined")
    return f.num.lc / f.den.lc


# -- squarefree decomposition and rational roots ----------------------------


def squarefree_factorization(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm; returns monic pairwise-coprime squarefree parts with multiplicities.

    The product of part^multiplicity equals f up to a rational unit.  Parts are
    ordered by ascending multiplicity.
    """
    if f.is_zero():
        raise ValueError("squarefree factorization of zero")
    f = f.monic()
    if f.degree < 1:
        return []
    out: list[tuple[UPoly, int]] = []
    g = gcd(f, f.derivative())
    c = f.exact_div(g)
    d = f.derivative().exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        p = gcd(c, d)
        if p.degree > 0:
            out.append((p, i))
        c = c.exact_div(p)
        d = d.exact_div(p) - c.derivative()
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = []
    big = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                big.append(n // d)
        d += 1
    return small + big[::-1]


def rational_roots(f: UPoly) -> list[Fraction]:
    """All rational roots, each once, ascending, via the rational-root theorem."""
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    roots: set[Fraction] = set()
    # strip x^k so the constant term is nonzero
    k = 0
    while k <= f.degree and f.coeff(k) == 0:
        k += 1
    if k > 0:
        roots.add(Q(0))
        f = UPoly(f.coeffs[k:])
    if f.degree >= 1:
        # shrink to the squarefree part: same root set, smaller constants
        sf = f.exact_div(gcd(f, f.derivative()))
        _, p = sf.primitive()
        a0 = p.coeff(0).numerator
        an = p.lc.numerator
        for num in _divisors(a0):
            for den in _divisors(an):
                if int_gcd(num, den) != 1:
                    continue
                for cand in (Q(num, den), Q(-num, den)):
                    if cand not in roots and p(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def integer_roots(f: UPoly) -> list[int]:
    return [int(r) for r in rational_roots(f) if r.denominator == 1]
