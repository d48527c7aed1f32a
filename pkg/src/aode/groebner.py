"""Buchberger's algorithm and triangular extraction of solution branches.

Bases are always lex with the variable order the caller supplies; unknowns
expected to stay free should therefore be placed last.  All systems this
toolkit produces are tiny, so the plain algorithm with the coprime and chain
pair criteria is enough.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ReductionBudgetError
from .mpoly import MPoly, Mono
from .upoly import UPoly, rational_roots

Q = Fraction

DEFAULT_BUDGET = 10**6


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_quot(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _mono_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps: int):
        self.left = steps

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise ReductionBudgetError("reduction step budget exceeded")


def _reduce(
    f: MPoly, basis: list[MPoly], budget: _Budget, lms: list[Mono] | None = None
) -> MPoly:
    """Full normal form of f modulo the list (first matching divisor wins)."""
    if lms is None:
        lms = [g.lm() for g in basis]
    rem = MPoly(f.vars)
    p = f
    while not p.is_zero():
        m = p.lm()
        c = p.terms[m]
        for gm, g in zip(lms, basis):
            if _mono_divides(gm, m):
                budget.spend()
                p = p - g.mul_term(c / g.lc(), _mono_quot(m, gm))
                break
        else:
            rem = rem + MPoly(f.vars, {m: c})
            p = p - MPoly(f.vars, {m: c})
    return rem


def _spoly(f: MPoly, g: MPoly) -> MPoly:
    l = _mono_lcm(f.lm(), g.lm())
    return f.mul_term(1 / f.lc(), _mono_quot(l, f.lm())) - g.mul_term(
        1 / g.lc(), _mono_quot(l, g.lm())
    )


def normal_form(f: MPoly, basis: list[MPoly], budget_steps: int = DEFAULT_BUDGET) -> MPoly:
    if not basis:
        return f
    return _reduce(f, list(basis), _Budget(budget_steps))


def buchberger(gens: list[MPoly], budget_steps: int = DEFAULT_BUDGET) -> list[MPoly]:
    """Reduced lex Groebner basis, each element monic, sorted by descending LM.

    Pair selection follows the normal strategy (smallest lcm first); pairs are
    discarded by the coprime-leading-term criterion and the chain criterion.
    """
    budget = _Budget(budget_steps)
    G: list[MPoly] = []
    lms: list[Mono] = []
    pairs: dict[tuple[int, int], Mono] = {}

    def add(f: MPoly):
        idx = len(G)
        G.append(f)
        lms.append(f.lm())
        for k in range(idx):
            pairs[(k, idx)] = _mono_lcm(lms[k], lms[idx])

    for g in gens:
        if not g.is_zero():
            add(g.content_normalized())
    if not G:
        return []
    while pairs:
        i, j = min(pairs, key=lambda ij: (pairs[ij], ij))
        l = pairs.pop((i, j))
        if _mono_coprime(lms[i], lms[j]):
            continue
        chained = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if not _mono_divides(lms[k], l):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                chained = True
                break
        if chained:
            continue
        r = _reduce(_spoly(G[i], G[j]), G, budget, lms)
        if not r.is_zero():
            add(r.content_normalized())
    # minimalize: drop elements whose LM is divisible by another's
    G.sort(key=lambda g: g.lm())
    minimal: list[MPoly] = []
    for g in G:
        if not any(_mono_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    # interreduce
    reduced: list[MPoly] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = _reduce(g, others, budget) if others else g
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda g: g.lm(), reverse=True)
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced lex basis over an ordered unknown tuple."""

    vars: tuple[str, ...]
    polys: tuple[MPoly, ...]

    @classmethod
    def of(cls, gens: list[MPoly], vars: tuple[str, ...], budget_steps: int = DEFAULT_BUDGET):
        return cls(vars, tuple(buchberger(gens, budget_steps)))

    def reduce(self, f: MPoly) -> MPoly:
        return normal_form(f, list(self.polys))

    def is_trivial(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_const()


@dataclass
class Branch:
    """One solution branch: explicit assignments, free unknowns, and any
    residual system that could not be resolved over Q."""

    assignments: dict[str, MPoly] = field(default_factory=dict)
    free: tuple[str, ...] = ()
    residual: list[MPoly] = field(default_factory=list)

    def is_explicit(self) -> bool:
        return not self.residual


@dataclass
class SolveOutcome:
    families: list[Branch]
    constrained: list[Branch]
    inconsistent: bool


def solve_system(
    gens: list[MPoly], unknowns: tuple[str, ...], budget_steps: int = DEFAULT_BUDGET
) -> SolveOutcome:
    """Enumerate solution branches of the system by lex triangular extraction.

    Rational roots of univariate eliminants are branched on; leading terms
    that are bare variables are solved linearly; anything else is returned as
    a residual constrained branch rather than dropped.
    """
    unknowns = tuple(unknowns)
    for g in gens:
        if g.vars != unknowns:
            raise ValueError("generators must live over the unknown tuple, in order")
    gens = [g for g in gens if not g.is_zero()]
    basis = buchberger(gens, budget_steps)
    if len(basis) == 1 and basis[0].is_const():
        return SolveOutcome([], [], True)
    families: list[Branch] = []
    constrained: list[Branch] = []

    def emit(basis_now: list[MPoly], assignments: dict[str, MPoly]):
        assigned = set(assignments)
        if not basis_now:
            free = tuple(v for v in unknowns if v not in assigned)
            families.append(Branch(dict(assignments), free, []))
            return
        if len(basis_now) == 1 and basis_now[0].is_const():
            return  # dead branch
        appearing = set()
        for b in basis_now:
            appearing |= b.support_vars()
        # prefer eliminants in the least variable (highest index), but branch on
        # a univariate element of any variable if that is all the basis offers
        univ: list[MPoly] = []
        v = None
        for name in sorted(appearing, key=lambda nm: unknowns.index(nm), reverse=True):
            univ = [b for b in basis_now if b.is_univariate_in(name)]
            if univ:
                v = name
                break
        if univ:
            g = univ[0].to_upoly(v)
            roots = rational_roots(g)
            h = g
            for r in roots:
                h = h.exact_div(UPoly.x_minus(r) ** _root_mult(h, r))
            for r in roots:
                sub = [b.substitute({v: r}) for b in basis_now if b is not univ[0]]
                new_assignments = {
                    u: val.substitute({v: r}) for u, val in assignments.items()
                }
                new_assignments[v] = MPoly.const(basis_now[0].vars, r)
                emit(buchberger(sub, budget_steps), new_assignments)
            if h.degree >= 1:
                residual = [MPoly.from_upoly(basis_now[0].vars, v, h)] + [
                    b for b in basis_now if b is not univ[0]
                ]
                free = tuple(
                    u
                    for u in unknowns
                    if u not in assignments
                    and all(u not in b.support_vars() for b in residual)
                )
                constrained.append(Branch(dict(assignments), free, residual))
            return
        linear = [
            b
            for b in basis_now
            if sum(b.lm()) == 1 and b.degree_in(b.vars[b.lm().index(1)]) == 1
        ]
        solvable = None
        for b in linear:
            w = b.vars[b.lm().index(1)]
            # the reduced basis guarantees no other term of b involves w
            if all(m[b.vars.index(w)] == 0 for m in b.terms if m != b.lm()):
                solvable = (b, w)
                break
        if solvable is not None:
            b, w = solvable
            expr = -(b - MPoly(b.vars, {b.lm(): b.lc()}))  # w = -(tail)
            expr = expr.scale(1 / b.lc())
            sub = [c.substitute({w: expr}) for c in basis_now if c is not b]
            new_assignments = {u: val.substitute({w: expr}) for u, val in assignments.items()}
            new_assignments[w] = expr
            emit(buchberger(sub, budget_steps), new_assignments)
            return
        free = tuple(
            u
            for u in unknowns
            if u not in assignments and all(u not in b.support_vars() for b in basis_now)
        )
        constrained.append(Branch(dict(assignments), free, list(basis_now)))

    emit(basis, {})
    return SolveOutcome(families, constrained, False)


def _root_mult(f: UPoly, r: Fraction) -> int:
    lin = UPoly.x_minus(r)
    mult = 0
    while True:
        q, rem = divmod(f, lin)
        if not rem.is_zero():
            return mult
        f = q
        mult += 1
