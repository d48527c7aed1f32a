"""Polynomial and rational solution enumeration with verification.

The two drivers follow the same plan: compute order bounds, build a candidate
with unknown coefficients (a plain polynomial, or a partial fraction over the
irreducible factors of the highest coefficient), substitute, solve the
resulting algebraic system, and verify every family before reporting it.
A family that fails verification is a bug, so it raises instead of being
returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import (
    INFINITY,
    Classification,
    classify,
    integer_root_bound,
    laurent_order_bound,
)
from .diffpoly import DiffPoly, ParamPoly, ParamRFunc, evaluate, supports
from .errors import AnsatzCapError, CriticalEquationError
from .groebner import Branch, SolveOutcome, buchberger, normal_form, solve_system
from .mpoly import MPoly
from .upoly import ONE, UPoly

Q = Fraction

ANSATZ_UNKNOWN_CAP = 64
ORDER_BOUND_CAP = 50


@dataclass(frozen=True)
class PoleBlock:
    factor: UPoly
    order: int  # maximal pole order at this factor
    names: tuple[tuple[str, ...], ...]  # names[j-1][k]: coeff of x^k over factor^j


@dataclass(frozen=True)
class Ansatz:
    """Candidate solution with fresh unknowns, linear in every unknown."""

    pole_blocks: tuple[PoleBlock, ...]
    poly_names: tuple[str, ...]  # names[k] belongs to x^k

    @property
    def vars(self) -> tuple[str, ...]:
        """Solver order: pole unknowns first, then the polynomial part by
        descending degree, so likely-free unknowns come last."""
        out: list[str] = []
        for block in self.pole_blocks:
            for level in block.names:
                out.extend(level)
        out.extend(reversed(self.poly_names))
        return tuple(out)

    def to_param_rfunc(self) -> ParamRFunc:
        vars = self.vars
        den = ONE
        for block in self.pole_blocks:
            den = den * block.factor**block.order
        num = ParamPoly(vars)
        for i, block in enumerate(self.pole_blocks):
            rest = ONE
            for j, other in enumerate(self.pole_blocks):
                if j != i:
                    rest = rest * other.factor**other.order
            for j, level in enumerate(block.names, start=1):
                numer = ParamPoly(vars, [MPoly.variable(vars, nm) for nm in level])
                num = num + numer.mul_upoly(
                    block.factor ** (block.order - j) * rest
                )
        poly = ParamPoly(vars, [MPoly.variable(vars, nm) for nm in self.poly_names])
        num = num + poly.mul_upoly(den)
        return ParamRFunc(num, den, reduce=False)


def build_poly_ansatz(degree: int) -> Ansatz:
    _check_caps([], degree)
    return Ansatz((), tuple(f"c{k}" for k in range(degree + 1)))


def build_rational_ansatz(pole_bounds: list[tuple[UPoly, int]], degree: int) -> Ansatz:
    _check_caps(pole_bounds, degree)
    blocks = []
    for i, (p, r) in enumerate(pole_bounds):
        if r <= 0:
            continue
        names = tuple(
            tuple(f"a{i}_{j}_{k}" for k in range(p.degree)) for j in range(1, r + 1)
        )
        blocks.append(PoleBlock(p, r, names))
    return Ansatz(tuple(blocks), tuple(f"c{k}" for k in range(degree + 1)))


def _check_caps(pole_bounds, degree):
    if degree > ORDER_BOUND_CAP or any(r > ORDER_BOUND_CAP for _, r in pole_bounds):
        raise AnsatzCapError(
            f"an order bound exceeds the cap {ORDER_BOUND_CAP}; "
            "the equation is outside the intended desk scale"
        )
    unknowns = degree + 1 + sum(max(r, 0) * p.degree for p, r in pole_bounds)
    if unknowns > ANSATZ_UNKNOWN_CAP:
        raise AnsatzCapError(
            f"candidate would need {unknowns} unknowns, above the cap {ANSATZ_UNKNOWN_CAP}"
        )


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    detail: str | None = None

    def render(self) -> str:
        return self.kind if self.detail is None else f"{self.kind}({self.detail})"


@dataclass(frozen=True)
class SolutionFamily:
    """A parameterized solution in partial-fraction form.

    ``constraints`` is empty for explicit families; otherwise the parameters
    are tied by the residual system and the family is valid exactly on its
    zero set.
    """

    pole_parts: tuple[tuple[UPoly, int, ParamPoly], ...]  # (factor, level j, numerator)
    poly_part: ParamPoly
    parameters: tuple[str, ...]
    constraints: tuple[MPoly, ...]
    verified: bool

    @property
    def expr(self) -> ParamRFunc:
        vars = self.poly_part.vars
        tops: dict[UPoly, int] = {}
        for p, j, _ in self.pole_parts:
            tops[p] = max(tops.get(p, 0), j)
        den = ONE
        for p, top in tops.items():
            den = den * p**top
        num = self.poly_part.mul_upoly(den)
        for p, j, numer in self.pole_parts:
            num = num + numer.mul_upoly(den.exact_div(p**j))
        return ParamRFunc(num, den)

    def specialize(self, values: dict[str, Fraction]) -> ParamRFunc:
        return self.expr.substitute(values)


@dataclass(frozen=True)
class SolveReport:
    classification: Classification
    bounds: tuple[tuple[str, int], ...]  # (place, order bound) actually used
    families: tuple[SolutionFamily, ...]
    diagnostics: tuple[Diagnostic, ...]
    complete: bool


def poly_degree_bound(F: DiffPoly) -> int:
    """Algorithm step: max of the largest positive integer root of the
    indicial polynomial at infinity, the floored rational bound, and 0."""
    from .analysis import b_bound, indicial_polynomial

    p_inf = indicial_polynomial(F, INFINITY)
    if p_inf.is_zero():
        raise CriticalEquationError(
            "the indicial polynomial at infinity vanishes; no degree bound exists"
        )
    r1 = integer_root_bound(p_inf)
    b = b_bound(F, INFINITY)
    r2 = b.__floor__() if b is not None else 0
    return max(r1, r2, 0)


def extract_system(F: DiffPoly, ansatz: Ansatz) -> list[MPoly]:
    """Substitute the candidate and collect the x-coefficients of the cleared
    numerator as generators in the unknowns."""
    z = ansatz.to_param_rfunc()
    r = evaluate(F, z)
    gens = []
    seen = set()
    for c in r.num.coeffs:
        if c.is_zero():
            continue
        c = c.content_normalized()
        key = tuple(sorted(c.terms.items()))
        if key not in seen:
            seen.add(key)
            gens.append(c)
    return gens


def _build_family(F: DiffPoly, ansatz: Ansatz, branch: Branch) -> SolutionFamily:
    vars = ansatz.vars

    def value_of(name: str) -> MPoly:
        if name in branch.assignments:
            return branch.assignments[name]
        return MPoly.variable(vars, name)

    pole_parts: list[tuple[UPoly, int, ParamPoly]] = []
    for block in ansatz.pole_blocks:
        for j, level in enumerate(block.names, start=1):
            numer = ParamPoly(vars, [value_of(nm) for nm in level])
            if not numer.is_zero():
                pole_parts.append((block.factor, j, numer))
    poly_part = ParamPoly(vars, [value_of(nm) for nm in ansatz.poly_names])

    # parameters renamed t1, t2, ... in order of first use in the rendered form
    ordered: list[str] = []

    def note(p: ParamPoly):
        for k in range(p.degree, -1, -1):
            sup = p.coeff(k).support_vars()
            for v in vars:
                if v in sup and v not in ordered:
                    ordered.append(v)

    for _, _, numer in pole_parts:
        note(numer)
    note(poly_part)
    for c in branch.residual:
        for v in vars:
            if v in c.support_vars() and v not in ordered:
                ordered.append(v)
    mapping = {old: f"t{i + 1}" for i, old in enumerate(ordered)}
    new_vars = tuple(f"t{i + 1}" for i in range(len(ordered)))
    pole_parts = [
        (p, j, numer.rename(mapping, new_vars)) for p, j, numer in pole_parts
    ]
    poly_part = poly_part.rename(mapping, new_vars)
    constraints = tuple(c.rename(mapping, new_vars) for c in branch.residual)
    family = SolutionFamily(
        pole_parts=tuple(pole_parts),
        poly_part=poly_part,
        parameters=new_vars,
        constraints=constraints,
        verified=False,
    )
    ok = verify(F, family)
    if not ok:
        raise AssertionError(
            "internal error: an enumerated solution family failed verification"
        )
    return SolutionFamily(
        family.pole_parts, family.poly_part, family.parameters, family.constraints, True
    )


def verify(F: DiffPoly, family: SolutionFamily) -> bool:
    """Exact re-substitution check, modulo the constraint ideal if present."""
    residue = evaluate(F, family.expr)
    if not family.constraints:
        return residue.is_zero()
    basis = buchberger(list(family.constraints))
    return all(
        normal_form(c, basis).is_zero() for c in residue.num.coeffs if not c.is_zero()
    )


def _solve_with_ansatz(F: DiffPoly, ansatz: Ansatz) -> tuple[list[SolutionFamily], SolveOutcome]:
    gens = extract_system(F, ansatz)
    outcome = solve_system(gens, ansatz.vars)
    families = [_build_family(F, ansatz, b) for b in outcome.families]
    families += [_build_family(F, ansatz, b) for b in outcome.constrained]
    return families, outcome


def polynomial_solutions(F: DiffPoly) -> SolveReport:
    """All polynomial solutions, with a completeness claim when the degree
    bound applies (the equation is noncritical)."""
    cls = classify(F)
    if not cls.noncritical:
        return SolveReport(
            classification=cls,
            bounds=(),
            families=(),
            diagnostics=(Diagnostic("Critical"),),
            complete=False,
        )
    bound = poly_degree_bound(F)
    ansatz = build_poly_ansatz(bound)
    families, _ = _solve_with_ansatz(F, ansatz)
    return SolveReport(
        classification=cls,
        bounds=(("infinity", bound),),
        families=tuple(families),
        diagnostics=(),
        complete=True,
    )


def rational_solutions(F: DiffPoly, order_cap: int | None = None) -> SolveReport:
    """All rational function solutions of a completely maximally comparable
    equation; otherwise diagnostics explain which hypothesis failed.

    With ``order_cap`` the enumeration proceeds at places without a computable
    bound, using the cap as the pole order, and the report is marked
    incomplete.
    """
    cls = classify(F)
    diagnostics: list[Diagnostic] = []
    if not cls.maximally_comparable:
        return SolveReport(
            classification=cls,
            bounds=(),
            families=(),
            diagnostics=(Diagnostic("NotMaximallyComparable"),),
            complete=False,
        )
    capped = False
    pole_bounds: list[tuple[UPoly, int]] = []
    for pc in cls.pole_candidates:
        if pc.order_bound is None:
            diagnostics.append(Diagnostic("ZeroIndicialAtFactor", pc.factor.render()))
            if order_cap is not None:
                pole_bounds.append((pc.factor, order_cap))
                capped = True
        else:
            pole_bounds.append((pc.factor, pc.order_bound))
    if cls.indicial_infinity.is_zero():
        diagnostics.append(Diagnostic("Critical"))
        if order_cap is not None:
            degree = order_cap
            capped = True
        else:
            degree = None
    else:
        degree = laurent_order_bound(F, INFINITY)
    if diagnostics and not capped:
        return SolveReport(
            classification=cls,
            bounds=(),
            families=(),
            diagnostics=tuple(diagnostics),
            complete=False,
        )
    if capped:
        diagnostics.append(Diagnostic("CompleteUpToCap", str(order_cap)))
    ansatz = build_rational_ansatz(pole_bounds, degree)
    families, _ = _solve_with_ansatz(F, ansatz)
    bounds = tuple((p.render(), r) for p, r in pole_bounds) + (("infinity", degree),)
    return SolveReport(
        classification=cls,
        bounds=bounds,
        families=tuple(families),
        diagnostics=tuple(diagnostics),
        complete=not capped,
    )
