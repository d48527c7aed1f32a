"""Differential polynomials and the exact substitution engine.

A differential polynomial of order n is a finite map from exponent vectors
I = (i0, ..., in) to nonzero univariate coefficients: the term f_I(x) *
y^i0 * (y')^i1 * ... * (y^(n))^in.  Candidate solutions carry unknown
parameters, so substitution works with polynomials in x whose coefficients
are multivariate polynomials in those parameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateEquationError, NotADifferentialEquationError
from .factor import factor_irreducible
from .mpoly import MPoly
from .upoly import ONE, RFunc, UPoly, lcm

Q = Fraction

ExpVec = tuple[int, ...]


# -- exponent vector norms ----------------------------------------------------


def norm(I: ExpVec) -> int:
    return sum(I)


def partial_norms(I: ExpVec) -> tuple[int, ...]:
    """(||I||_0, ..., ||I||_n) with ||I||_r = i_r + ... + i_n."""
    out = []
    acc = 0
    for i in reversed(I):
        acc += i
        out.append(acc)
    return tuple(reversed(out))


def inf_norm(I: ExpVec) -> int:
    return sum(k * i for k, i in enumerate(I))


def exp_norms(I: ExpVec) -> tuple[int, tuple[int, ...], int]:
    return norm(I), partial_norms(I), inf_norm(I)


# -- polynomials in x with parameter coefficients ------------------------------


class ParamPoly:
    """Dense polynomial in x whose coefficients are MPoly values in parameters."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, vars: tuple[str, ...], coeffs: Iterable[MPoly] = ()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def from_upoly(cls, vars: tuple[str, ...], f: UPoly) -> "ParamPoly":
        return cls(vars, [MPoly.const(vars, c) for c in f.coeffs])

    @classmethod
    def from_mpoly(cls, m: MPoly) -> "ParamPoly":
        return cls(m.vars, [m])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> MPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return MPoly(self.vars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.vars == other.vars and self.coeffs == other.coeffs

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ParamPoly(self.vars, out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.vars, [-c for c in self.coeffs])

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ParamPoly(self.vars)
        out = [MPoly(self.vars) for _ in range(len(a) + len(b) - 1)]
        for i, ca in enumerate(a):
            if not ca.is_zero():
                for j, cb in enumerate(b):
                    out[i + j] = out[i + j] + ca * cb
        return ParamPoly(self.vars, out)

    def mul_upoly(self, f: UPoly) -> "ParamPoly":
        return self * ParamPoly.from_upoly(self.vars, f)

    def mul_mpoly(self, m: MPoly) -> "ParamPoly":
        return ParamPoly(self.vars, [c * m for c in self.coeffs])

    def scale(self, c) -> "ParamPoly":
        return ParamPoly(self.vars, [co.scale(c) for co in self.coeffs])

    def __pow__(self, n: int) -> "ParamPoly":
        result = ParamPoly.from_upoly(self.vars, ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "ParamPoly":
        return ParamPoly(self.vars, [c.scale(k) for k, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "ParamPoly":
        if not self.coeffs:
            return self
        return ParamPoly(self.vars, (MPoly(self.vars),) * k + self.coeffs)

    def substitute(self, values: Mapping[str, MPoly | Fraction | int]) -> "ParamPoly":
        return ParamPoly(self.vars, [c.substitute(values) for c in self.coeffs])

    def rename(self, mapping: Mapping[str, str], new_vars: tuple[str, ...]) -> "ParamPoly":
        return ParamPoly(new_vars, [c.rename(mapping, new_vars) for c in self.coeffs])

    def support_params(self) -> set[str]:
        out: set[str] = set()
        for c in self.coeffs:
            out |= c.support_vars()
        return out

    def exact_div_upoly(self, p: UPoly):
        """Quotient by a parameter-free polynomial, or None if division fails."""
        if p.degree < 0:
            raise ZeroDivisionError
        rem = list(self.coeffs)
        dp = p.degree
        if len(rem) - 1 < dp:
            return None if self.coeffs else ParamPoly(self.vars)
        quot = [MPoly(self.vars)] * (len(rem) - dp)
        for i in range(len(rem) - 1, dp - 1, -1):
            c = rem[i]
            if not c.is_zero():
                q = c.scale(1 / p.lc)
                quot[i - dp] = q
                for j, b in enumerate(p.coeffs):
                    rem[i - dp + j] = rem[i - dp + j] - q.scale(b)
        if any(not c.is_zero() for c in rem[:dp]):
            return None
        return ParamPoly(self.vars, quot)

    def to_upoly(self) -> UPoly:
        """Conversion when every coefficient is constant in the parameters."""
        return UPoly([c.const_value() for c in self.coeffs])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "ParamPoly(0)"
        parts = [f"({c.render()})*x^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "ParamPoly(" + " + ".join(parts) + ")"


class ParamRFunc:
    """Rational function in x with parameter-carrying numerator and a
    parameter-free monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: UPoly = ONE, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("parameterized rational function with zero denominator")
        if not den.is_monic():
            num = num.scale(1 / den.lc)
            den = den.monic()
        if reduce and den.degree > 0 and not num.is_zero():
            _, factors = factor_irreducible(den)
            for p, mult in factors:
                for _ in range(mult):
                    q = num.exact_div_upoly(p)
                    if q is None:
                        break
                    num = q
                    den = den.exact_div(p)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("ParamRFunc is immutable")

    @classmethod
    def from_upoly(cls, vars: tuple[str, ...], f: UPoly) -> "ParamRFunc":
        return cls(ParamPoly.from_upoly(vars, f))

    @classmethod
    def from_rfunc(cls, vars: tuple[str, ...], f: RFunc) -> "ParamRFunc":
        return cls(ParamPoly.from_upoly(vars, f.num), f.den, reduce=False)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamRFunc):
            return NotImplemented
        return (self - other).is_zero()

    def __add__(self, other: "ParamRFunc") -> "ParamRFunc":
        if self.den == other.den:
            return ParamRFunc(self.num + other.num, self.den)
        common = lcm(self.den, other.den)
        a = self.num.mul_upoly(common.exact_div(self.den))
        b = other.num.mul_upoly(common.exact_div(other.den))
        return ParamRFunc(a + b, common)

    def __neg__(self) -> "ParamRFunc":
        return ParamRFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other: "ParamRFunc") -> "ParamRFunc":
        return self + (-other)

    def __mul__(self, other: "ParamRFunc") -> "ParamRFunc":
        return ParamRFunc(self.num * other.num, self.den * other.den)

    def derivative(self) -> "ParamRFunc":
        if self.is_poly():
            return ParamRFunc(self.num.derivative(), ONE, reduce=False)
        num = self.num.derivative().mul_upoly(self.den) - self.num.mul_upoly(
            self.den.derivative()
        )
        return ParamRFunc(num, self.den * self.den)

    def substitute(self, values: Mapping[str, MPoly | Fraction | int]) -> "ParamRFunc":
        return ParamRFunc(self.num.substitute(values), self.den)

    def rename(self, mapping: Mapping[str, str], new_vars: tuple[str, ...]) -> "ParamRFunc":
        return ParamRFunc(self.num.rename(mapping, new_vars), self.den, reduce=False)

    def support_params(self) -> set[str]:
        return self.num.support_params()

    def __repr__(self) -> str:
        return f"ParamRFunc({self.num!r} / {self.den.render()})"


# -- the differential polynomial ------------------------------------------------


class DiffPoly:
    """Normalized differential polynomial: cleared, content-reduced coefficients."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict[ExpVec, UPoly]):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("DiffPoly is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def exponents(self) -> frozenset[ExpVec]:
        return frozenset(self.terms)

    def total_degree(self) -> int:
        return max(norm(I) for I in self.terms)

    def coefficient(self, I: ExpVec) -> UPoly:
        return self.terms.get(tuple(I), UPoly())

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{I}: {f.render()}" for I, f in sorted(self.terms.items(), reverse=True)
        )
        return f"DiffPoly(order={self.order}, {{{inner}}})"


def normalize(raw: Mapping[Sequence[int], RFunc | UPoly | Fraction | int]) -> DiffPoly:
    """Build a DiffPoly from raw terms with rational-function coefficients.

    Clears denominators, drops zero terms, trims unused trailing derivative
    slots, and normalizes the integer content and overall sign; the solution
    set is unchanged because the whole equation is scaled by a nonzero
    element of Q[x].
    """
    items: list[tuple[ExpVec, RFunc]] = []
    width = 0
    for key, val in raw.items():
        I = tuple(int(i) for i in key)
        if any(i < 0 for i in I):
            raise ValueError("negative exponent in a differential monomial")
        if isinstance(val, RFunc):
            f = val
        elif isinstance(val, UPoly):
            f = RFunc(val)
        else:
            f = RFunc(UPoly.const(val))
        if f.is_zero():
            continue
        width = max(width, len(I))
        items.append((I, f))
    if not items:
        raise DegenerateEquationError("the equation is identically zero")
    # merge duplicate keys after padding
    merged: dict[ExpVec, RFunc] = {}
    for I, f in items:
        I = I + (0,) * (width - len(I))
        if I in merged:
            s = merged[I] + f
            if s.is_zero():
                del merged[I]
            else:
                merged[I] = s
        else:
            merged[I] = f
    if not merged:
        raise DegenerateEquationError("the equation is identically zero")
    if all(not any(I) for I in merged):
        raise NotADifferentialEquationError(
            "no term involves y or any of its derivatives"
        )
    # trim trailing derivative slots never used
    top = 0
    for I in merged:
        for k, i in enumerate(I):
            if i:
                top = max(top, k)
    order = top
    trimmed = {I[: top + 1]: f for I, f in merged.items()}
    # clear rational-function denominators
    common = ONE
    for f in trimmed.values():
        common = lcm(common, f.den)
    cleared: dict[ExpVec, UPoly] = {}
    for I, f in trimmed.items():
        cleared[I] = f.num * common.exact_div(f.den)
    # clear fraction denominators and divide out the integer content
    num_gcd = 0
    den_lcm = 1
    from math import gcd as int_gcd

    for g in cleared.values():
        for c in g.coeffs:
            num_gcd = int_gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    scale = Q(den_lcm, num_gcd)
    # sign anchor: the exponent vector ranked highest by top derivative first
    lead = max(cleared, key=lambda I: tuple(reversed(I)))
    if cleared[lead].lc < 0:
        scale = -scale
    return DiffPoly(order, {I: g.scale(scale) for I, g in cleared.items()})


def supports(F: DiffPoly) -> tuple[frozenset[ExpVec], int, frozenset[ExpVec]]:
    """(E, d, D): exponents, total degree, and the top-degree slice."""
    E = frozenset(F.terms)
    d = max(norm(I) for I in E)
    D = frozenset(I for I in E if norm(I) == d)
    return E, d, D


def evaluate(F: DiffPoly, z: ParamRFunc) -> ParamRFunc:
    """Substitute a candidate solution into F.

    The result is identically zero (as a rational function with parameter
    coefficients) exactly when z solves F for every parameter value.  The
    denominator is tracked as a factored power product, so differentiation
    never re-runs gcds.
    """
    vars = z.vars
    n = F.order
    if z.den.degree == 0:
        derivs = [z.num]
        for _ in range(n):
            derivs.append(derivs[-1].derivative())
        total = ParamPoly(vars)
        for I, f_I in F.terms.items():
            term = ParamPoly.from_upoly(vars, f_I)
            for k, e in enumerate(I):
                if e:
                    term = term * derivs[k] ** e
            total = total + term
        return ParamRFunc(total, ONE, reduce=False)

    _, factorization = factor_irreducible(z.den)
    ps = [p for p, _ in factorization]
    exps = [m for _, m in factorization]
    # z^(k) = N_k / prod p_i^(e_i + k), maintained without any gcd calls
    derivs = [z.num]
    prod_all = ONE
    for p in ps:
        prod_all = prod_all * p
    for k in range(n):
        nk = derivs[-1]
        correction = ParamPoly(vars)
        for i, p in enumerate(ps):
            rest = ONE
            for j, q in enumerate(ps):
                if j != i:
                    rest = rest * q
            correction = correction + nk.mul_upoly(
                p.derivative() * rest
            ).scale(exps[i] + k)
        derivs.append(nk.derivative().mul_upoly(prod_all) - correction)

    def need(I: ExpVec, i: int) -> int:
        return norm(I) * exps[i] + inf_norm(I)

    tops = [max(need(I, i) for I in F.terms) for i in range(len(ps))]
    total = ParamPoly(vars)
    for I, f_I in F.terms.items():
        term = ParamPoly.from_upoly(vars, f_I)
        for k, e in enumerate(I):
            if e:
                term = term * derivs[k] ** e
        pad = ONE
        for i, p in enumerate(ps):
            gap = tops[i] - need(I, i)
            if gap:
                pad = pad * p**gap
        if pad.degree > 0:
            term = term.mul_upoly(pad)
        total = total + term
    den = ONE
    for i, p in enumerate(ps):
        den = den * p ** tops[i]
    return ParamRFunc(total, den)
