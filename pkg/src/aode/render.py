"""Canonical text rendering and JSON serialization of public values.

Text output is deterministic: polynomial terms in descending powers with an
explicit '*', differential monomials ordered by dominance, and solution
families in partial-fraction layout with parameters named t1, t2, ... in
order of first use.  JSON layouts for classifications and solve reports are
fixed; emission is byte-deterministic for a fixed input.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .analysis import Classification, IndicialData, Point, ResiduePoly
from .diffpoly import DiffPoly, ParamPoly, inf_norm, norm
from .engine import Diagnostic, SolutionFamily, SolveReport
from .mpoly import MPoly
from .upoly import RFunc, UPoly

Q = Fraction


def _yname(k: int) -> str:
    if k == 0:
        return "y"
    if k <= 3:
        return "y" + "'" * k
    return f"D(y,{k})"


def _monomial(I) -> str:
    pieces = []
    for k, e in enumerate(I):
        if e == 1:
            pieces.append(_yname(k))
        elif e > 1:
            pieces.append(f"{_yname(k)}^{e}")
    return "*".join(pieces)


def render_diffpoly(F: DiffPoly) -> str:
    def key(I):
        return (norm(I), norm(I) + inf_norm(I), I)

    parts: list[str] = []
    for I in sorted(F.terms, key=key, reverse=True):
        c = F.terms[I]
        mono = _monomial(I)
        nonzero = [co for co in c.coeffs if co]
        single = len(nonzero) == 1
        if not mono:
            body = c.render() if single else f"({c.render()})"
            sign = "+"
            if single and nonzero[0] < 0:
                sign = "-"
                body = c.scale(-1).render()
        elif single:
            k = max(i for i, co in enumerate(c.coeffs) if co)
            co = c.coeffs[k]
            sign = "-" if co < 0 else "+"
            mag = UPoly.monomial(abs(co), k)
            body = mono if mag == 1 else f"{mag.render()}*{mono}"
        else:
            sign = "+"
            body = f"({c.render()})*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" + {body}" if sign == "+" else f" - {body}")
    return "".join(parts)


def render_parampoly(p: ParamPoly, var: str = "x") -> str:
    """Polynomial in x with parameter coefficients, descending powers."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        m = p.coeff(k)
        if m.is_zero():
            continue
        xpart = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if m.is_const():
            c = m.const_value()
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not xpart:
                body = str(mag)
            else:
                body = xpart if mag == 1 else f"{mag}*{xpart}"
        elif len(m.terms) == 1:
            [(mono, c)] = m.terms.items()
            sign = "-" if c < 0 else "+"
            body = m.scale(1 / c).render() if abs(c) == 1 else m.scale(_sign(c)).render()
            if xpart:
                body = f"{body}*{xpart}"
        else:
            sign = "+"
            body = f"({m.render()})"
            if xpart:
                body = f"{body}*{xpart}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" + {body}" if sign == "+" else f" - {body}")
    return "".join(parts)


def _sign(c: Fraction) -> int:
    return -1 if c < 0 else 1


def render_family(fam: SolutionFamily) -> str:
    pieces: list[tuple[str, str]] = []  # (sign, body)
    for factor, j, numer in fam.pole_parts:
        den = factor.render()
        if len([c for c in factor.coeffs if c]) > 1:
            den = f"({den})"
        if j > 1:
            den = f"{den}^{j}"
        num_str = render_parampoly(numer)
        sign = "+"
        if numer.degree == 0 and not numer.coeff(0).is_zero():
            m = numer.coeff(0)
            if len(m.terms) == 1:
                [(mono, c)] = m.terms.items()
                if c < 0:
                    sign = "-"
                    num_str = render_parampoly(numer.scale(-1))
        if " " in num_str:
            num_str = f"({num_str})"
        pieces.append((sign, f"{num_str}/{den}"))
    poly_str = render_parampoly(fam.poly_part)
    if poly_str != "0":
        lead_negative = poly_str.startswith("-")
        pieces.append(("-" if lead_negative else "+", poly_str.lstrip("-")))
    if not pieces:
        return "0"
    out = []
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" + {body}" if sign == "+" else f" - {body}")
    return "".join(out)


def render(value) -> str:
    if isinstance(value, DiffPoly):
        return render_diffpoly(value)
    if isinstance(value, UPoly):
        return value.render()
    if isinstance(value, RFunc):
        return value.render()
    if isinstance(value, ResiduePoly):
        return value.render()
    if isinstance(value, (Fraction, int)):
        return str(value)
    if isinstance(value, Point):
        return value.render()
    if isinstance(value, SolutionFamily):
        return render_family(value)
    if isinstance(value, Diagnostic):
        return value.render()
    if isinstance(value, Classification):
        return render_classification_text(value)
    if isinstance(value, SolveReport):
        return render_report_text(value)
    if isinstance(value, IndicialData):
        return render_indicial_text(value)
    raise TypeError(f"no renderer for {type(value).__name__}")


# -- JSON ---------------------------------------------------------------------


def classification_to_json(c: Classification) -> dict:
    return {
        "order": c.order,
        "total_degree": c.total_degree,
        "noncritical": c.noncritical,
        "indicial_infinity": c.indicial_infinity.render("t"),
        "maximally_comparable": c.maximally_comparable,
        "greatest_exponent": list(c.greatest) if c.greatest is not None else None,
        "highest_coefficient": (
            c.highest_coefficient.render() if c.highest_coefficient is not None else None
        ),
        "completely": c.completely,
        "pole_candidates": [
            {"factor": pc.factor.render(), "order_bound": pc.order_bound}
            for pc in c.pole_candidates
        ],
        "d_totally_ordered": c.d_totally_ordered,
    }


def family_to_json(fam: SolutionFamily) -> dict:
    return {
        "expr": render_family(fam),
        "parameters": list(fam.parameters),
        "constraints": [c.render() for c in fam.constraints],
        "verified": fam.verified,
    }


def report_to_json(r: SolveReport) -> dict:
    return {
        "complete": r.complete,
        "families": [family_to_json(f) for f in r.families],
        "diagnostics": [d.render() for d in r.diagnostics],
    }


def indicial_to_json(data: IndicialData, order_bound: int | None) -> dict:
    return {
        "place": data.point.render(),
        "m": data.m,
        "M": sorted(list(I) for I in data.M),
        "indicial": data.indicial.render("t"),
        "b": str(data.b) if data.b is not None else None,
        "order_bound": order_bound,
    }


def to_json(value) -> str:
    if isinstance(value, Classification):
        payload = classification_to_json(value)
    elif isinstance(value, SolveReport):
        payload = report_to_json(value)
    elif isinstance(value, SolutionFamily):
        payload = family_to_json(value)
    elif isinstance(value, DiffPoly):
        payload = {
            "order": value.order,
            "terms": {
                " ".join(map(str, I)): f.render()
                for I, f in sorted(value.terms.items(), reverse=True)
            },
        }
    else:
        raise TypeError(f"no JSON form for {type(value).__name__}")
    return json.dumps(payload, indent=2)


# -- plain-text reports ----------------------------------------------------------


def render_classification_text(c: Classification) -> str:
    lines = [
        f"order: {c.order}",
        f"total degree: {c.total_degree}",
        f"noncritical: {_yn(c.noncritical)}",
        f"indicial polynomial at infinity: {c.indicial_infinity.render('t')}",
        f"maximally comparable: {_yn(c.maximally_comparable)}",
    ]
    if c.maximally_comparable:
        lines.append(f"greatest exponent: {tuple(c.greatest)}")
        lines.append(f"highest coefficient: {c.highest_coefficient.render()}")
        lines.append(f"completely maximally comparable: {_yn(c.completely)}")
        for pc in c.pole_candidates:
            bound = "no bound (zero indicial polynomial)" if pc.order_bound is None else pc.order_bound
            lines.append(f"pole candidate {pc.factor.render()}: order bound {bound}")
    lines.append(f"top-degree exponents totally ordered: {_yn(c.d_totally_ordered)}")
    return "\n".join(lines)


def render_report_text(r: SolveReport) -> str:
    lines = []
    for place, bound in r.bounds:
        lines.append(f"order bound at {place}: {bound}")
    if r.families:
        lines.append("solutions:")
        for fam in r.families:
            suffix = ""
            if fam.constraints:
                suffix = "  where " + ", ".join(
                    f"{c.render()} = 0" for c in fam.constraints
                )
            lines.append(f"  {render_family(fam)}{suffix}")
    else:
        lines.append("no solutions in this class")
    for d in r.diagnostics:
        lines.append(f"diagnostic: {d.render()}")
    lines.append(f"complete: {_yn(r.complete)}")
    return "\n".join(lines)


def render_indicial_text(data: IndicialData) -> str:
    lines = [
        f"place: {data.point.render()}",
        f"m: {data.m}",
        "M: " + ", ".join(str(tuple(I)) for I in sorted(data.M)),
        f"indicial polynomial: {data.indicial.render('t')}",
    ]
    if data.b is not None:
        lines.append(f"b: {data.b}")
    return "\n".join(lines)


def _yn(v) -> str:
    return "yes" if v else "no"
