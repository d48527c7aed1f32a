"""Structural analysis of a differential polynomial at finite places and infinity.

For each place this computes the dominant-term data (m, M), the indicial
polynomial in the candidate pole order t, the rational bound coming from
lower-degree terms, and the resulting order bound for Laurent series
solutions.  On top of that sit the comparability order on exponent vectors,
greatest-element detection, and the three structural predicates used by the
solvers: noncritical, maximally comparable, completely maximally comparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .diffpoly import DiffPoly, ExpVec, inf_norm, norm, partial_norms, supports
from .errors import ZeroIndicialError
from .factor import factor_irreducible, is_irreducible
from .upoly import (
    Residue,
    UPoly,
    gcd,
    integer_roots,
    lowest_coeff_at_factor,
    lowest_coeff_at_infinity,
    ord_at_factor,
    ord_at_infinity,
)

Q = Fraction


class Point:
    """A place of analysis: a monic irreducible polynomial factor, or infinity."""

    __slots__ = ("factor",)

    def __init__(self, factor: UPoly | None, _trusted: bool = False):
        if factor is not None:
            if not factor.is_monic() or factor.degree < 1:
                raise ValueError("finite place must be monic of positive degree")
            if not _trusted and factor.degree > 1 and not is_irreducible(factor):
                raise ValueError("finite place must be irreducible over Q")
        object.__setattr__(self, "factor", factor)

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @classmethod
    def infinity(cls) -> "Point":
        return cls(None)

    @classmethod
    def at_factor(cls, p: UPoly, trusted: bool = False) -> "Point":
        return cls(p, _trusted=trusted)

    @classmethod
    def finite(cls, x0) -> "Point":
        return cls(UPoly.x_minus(x0), _trusted=True)

    @property
    def is_infinity(self) -> bool:
        return self.factor is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.factor == other.factor

    def __hash__(self) -> int:
        return hash(self.factor)

    def render(self) -> str:
        return "infinity" if self.factor is None else self.factor.render()

    def __repr__(self) -> str:
        return f"Point({self.render()})"


INFINITY = Point.infinity()


class ResiduePoly:
    """Polynomial in t with coefficients in Q[x]/(p), for algebraic places."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: UPoly, coeffs=()):
        cs = [c if isinstance(c, UPoly) else c.value for c in coeffs]
        cs = [c % modulus for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ResiduePoly is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResiduePoly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __add__(self, other: "ResiduePoly") -> "ResiduePoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ResiduePoly(self.modulus, out)

    def coordinate_polys(self) -> list[UPoly]:
        """P written as sum_j P_j(t) * alpha^j; returns the nonzero P_j."""
        degp = self.modulus.degree
        out = []
        for j in range(degp):
            tpoly = UPoly([c.coeff(j) for c in self.coeffs])
            if not tpoly.is_zero():
                out.append(tpoly)
        return out

    def as_upoly(self) -> UPoly:
        """Conversion for linear moduli, where the residue field is Q."""
        if self.modulus.degree != 1:
            raise ValueError("coefficients live in a proper extension of Q")
        return UPoly([c.coeff(0) for c in self.coeffs])

    def render(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            body = f"({c.render()})"
            if k == 1:
                body += f"*{var}"
            elif k > 1:
                body += f"*{var}^{k}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ResiduePoly({self.render()} mod {self.modulus.render()})"


def newton_data(F: DiffPoly, pt: Point) -> tuple[int, frozenset[ExpVec]]:
    """The dominant value m and its achieving set M over the top-degree slice."""
    _, _, D = supports(F)
    if pt.is_infinity:
        vals = {I: ord_at_infinity(F.terms[I]) - inf_norm(I) for I in D}
    else:
        vals = {I: ord_at_factor(F.terms[I], pt.factor) + inf_norm(I) for I in D}
    m = max(vals.values())
    return m, frozenset(I for I, v in vals.items() if v == m)


def _falling_product(I: ExpVec, n: int, at_infinity: bool) -> UPoly:
    """prod_{r=0}^{n-1} (t - r)^{||I||_{r+1}} at infinity, (-t - r) otherwise."""
    parts = partial_norms(I)
    out = UPoly.const(1)
    for r in range(n):
        e = parts[r + 1] if r + 1 < len(parts) else 0
        if e:
            lin = UPoly((-r, 1)) if at_infinity else UPoly((-r, -1))
            out = out * lin**e
    return out


def indicial_polynomial(F: DiffPoly, pt: Point):
    """The indicial polynomial in t; UPoly over Q at infinity and at rational
    places, ResiduePoly over Q[x]/(p) at algebraic places."""
    n = F.order
    _, M = newton_data(F, pt)
    if pt.is_infinity:
        total = UPoly()
        for I in M:
            c = lowest_coeff_at_infinity(F.terms[I])
            total = total + _falling_product(I, n, True).scale(c)
        return total
    p = pt.factor
    total = ResiduePoly(p)
    for I in M:
        c = lowest_coeff_at_factor(F.terms[I], p)
        base = _falling_product(I, n, False)
        total = total + ResiduePoly(p, [c.value.scale(b) for b in base.coeffs])
    if p.degree == 1:
        return total.as_upoly()
    return total


def b_bound(F: DiffPoly, pt: Point) -> Fraction | None:
    """The rational order bound from sub-maximal-degree terms; None when E = D."""
    E, d, D = supports(F)
    rest = E - D
    if not rest:
        return None
    m, _ = newton_data(F, pt)
    vals = []
    for I in rest:
        if pt.is_infinity:
            top = ord_at_infinity(F.terms[I]) - inf_norm(I) - m
        else:
            top = ord_at_factor(F.terms[I], pt.factor) + inf_norm(I) - m
        vals.append(Q(top, d - norm(I)))
    return max(vals)


def integer_root_bound(P) -> int:
    """Largest positive integer root, or 0 when there is none.

    For coefficients in Q[x]/(p) the common roots of the coordinate
    polynomials are used, via their gcd.
    """
    if isinstance(P, ResiduePoly):
        if P.is_zero():
            raise ZeroIndicialError("the requested place")
        coords = P.coordinate_polys()
        g = UPoly()
        for c in coords:
            g = gcd(g, c) if not g.is_zero() else c.monic()
        if g.degree < 1:
            return 0
        P = g
    if P.is_zero():
        raise ZeroIndicialError("the requested place")
    if P.degree < 1:
        return 0
    best = 0
    for r in integer_roots(P):
        if r > best:
            best = r
    return best


def laurent_order_bound(F: DiffPoly, pt: Point) -> int:
    """Upper bound for the order of any Laurent series solution pole at pt."""
    P = indicial_polynomial(F, pt)
    if P.is_zero():
        raise ZeroIndicialError(pt.render())
    r1 = integer_root_bound(P)
    b = b_bound(F, pt)
    r2 = floor(b) if b is not None else 0
    return max(r1, r2, 0)


class Comparison(enum.Enum):
    FIRST_DOMINATES = "first"
    SECOND_DOMINATES = "second"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def compare_gg(I: ExpVec, J: ExpVec) -> Comparison:
    """The strict partial order: I above J iff ||I|| >= ||J|| and
    ||I|| + ||I||_inf > ||J|| + ||J||_inf."""
    if len(I) != len(J):
        raise ValueError("exponent vectors of different lengths")
    if tuple(I) == tuple(J):
        return Comparison.EQUAL
    nI, nJ = norm(I), norm(J)
    sI, sJ = nI + inf_norm(I), nJ + inf_norm(J)
    if nI >= nJ and sI > sJ:
        return Comparison.FIRST_DOMINATES
    if nJ >= nI and sJ > sI:
        return Comparison.SECOND_DOMINATES
    return Comparison.INCOMPARABLE


def greatest_element(F: DiffPoly) -> ExpVec | None:
    """The unique exponent dominating every other one, if it exists."""
    E = list(F.terms)
    for I in E:
        if all(
            compare_gg(I, J) is Comparison.FIRST_DOMINATES for J in E if J != I
        ):
            return I
    return None


@dataclass(frozen=True)
class IndicialData:
    point: Point
    m: int
    M: frozenset[ExpVec]
    indicial: UPoly | ResiduePoly
    b: Fraction | None


def indicial_data(F: DiffPoly, pt: Point) -> IndicialData:
    m, M = newton_data(F, pt)
    return IndicialData(pt, m, M, indicial_polynomial(F, pt), b_bound(F, pt))


@dataclass(frozen=True)
class PoleCandidate:
    factor: UPoly
    data: IndicialData
    order_bound: int | None  # None when the indicial polynomial vanishes


@dataclass(frozen=True)
class Classification:
    order: int
    total_degree: int
    noncritical: bool
    indicial_infinity: UPoly
    maximally_comparable: bool
    greatest: ExpVec | None
    highest_coefficient: UPoly | None
    completely: bool | None  # present only for maximally comparable equations
    d_totally_ordered: bool
    pole_candidates: tuple[PoleCandidate, ...]


def classify(F: DiffPoly) -> Classification:
    E, d, D = supports(F)
    p_inf = indicial_polynomial(F, INFINITY)
    greatest = greatest_element(F)
    dlist = sorted(D)
    chain = all(
        compare_gg(I, J) is not Comparison.INCOMPARABLE
        for i, I in enumerate(dlist)
        for J in dlist[i + 1 :]
    )
    if greatest is None:
        return Classification(
            order=F.order,
            total_degree=d,
            noncritical=not p_inf.is_zero(),
            indicial_infinity=p_inf,
            maximally_comparable=False,
            greatest=None,
            highest_coefficient=None,
            completely=None,
            d_totally_ordered=chain,
            pole_candidates=(),
        )
    hc = F.terms[greatest]
    _, factors = factor_irreducible(hc)
    candidates = []
    completely = True
    for p, _mult in factors:
        pt = Point.at_factor(p, trusted=True)
        data = indicial_data(F, pt)
        if data.indicial.is_zero():
            completely = False
            bound = None
        else:
            bound = laurent_order_bound(F, pt)
        candidates.append(PoleCandidate(p, data, bound))
    return Classification(
        order=F.order,
        total_degree=d,
        noncritical=not p_inf.is_zero(),
        indicial_infinity=p_inf,
        maximally_comparable=True,
        greatest=greatest,
        highest_coefficient=hc,
        completely=completely,
        d_totally_ordered=chain,
        pole_candidates=tuple(candidates),
    )
