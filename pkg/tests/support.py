"""Random generators shared by the property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from aode.diffpoly import DiffPoly, ParamPoly, ParamRFunc, normalize
from aode.upoly import ONE, RFunc, UPoly, X

Q = Fraction


def random_upoly(rng: random.Random, max_deg: int = 3, bound: int = 5, nonzero: bool = False) -> UPoly:
    while True:
        deg = rng.randint(0, max_deg)
        coeffs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
        f = UPoly(coeffs)
        if not nonzero or not f.is_zero():
            return f


def random_rat(rng: random.Random, bound: int = 6) -> Fraction:
    return Q(rng.randint(-bound, bound), rng.randint(1, 4))


def random_rfunc(rng: random.Random) -> RFunc:
    num = random_upoly(rng, 2, 4, nonzero=True)
    den = rng.choice([ONE, X, X - 1, X + 1, X * (X - 1)])
    return RFunc(num, den)


# -- structural classes of equations -------------------------------------------


def gen_linear(rng: random.Random) -> DiffPoly:
    n = rng.randint(1, 3)
    terms = {}
    for k in range(n + 1):
        if k == n or rng.random() < 0.7:
            f = random_upoly(rng, 2, 4, nonzero=(k == n))
            if not f.is_zero():
                key = tuple(1 if j == k else 0 for j in range(n + 1))
                terms[key] = f
    if rng.random() < 0.4:  # inhomogeneous part
        g = random_upoly(rng, 2, 4)
        if not g.is_zero():
            terms[(0,) * (n + 1)] = g
    return normalize(terms)


def gen_first_order(rng: random.Random) -> DiffPoly:
    """F(x, y, y') with a guaranteed y-dependent term."""
    while True:
        terms = {}
        for _ in range(rng.randint(2, 5)):
            i = rng.randint(0, 2)
            j = rng.randint(0, 2 - i) if i < 2 else 0
            f = random_upoly(rng, 2, 4)
            if f.is_zero():
                continue
            key = (i, j)
            terms[key] = terms.get(key, UPoly()) + f
        terms = {k: v for k, v in terms.items() if not v.is_zero()}
        if any(any(k) for k in terms):
            return normalize(terms)


def gen_quasilinear_second(rng: random.Random) -> DiffPoly:
    """y'' + G(x, y, y') with deg G <= 3."""
    terms = {(0, 0, 1): UPoly.const(1)}
    for _ in range(rng.randint(1, 4)):
        i = rng.randint(0, 3)
        j = rng.randint(0, 3 - i)
        f = random_upoly(rng, 2, 4)
        if f.is_zero():
            continue
        key = (i, j, 0)
        terms[key] = terms.get(key, UPoly()) + f
    return normalize({k: v for k, v in terms.items() if not v.is_zero()})


def gen_autonomous_second(rng: random.Random) -> DiffPoly:
    """F(y, y', y'') with constant coefficients and a y-dependent term."""
    while True:
        terms = {}
        for _ in range(rng.randint(2, 5)):
            i = rng.randint(0, 2)
            j = rng.randint(0, 2 - i)
            k = rng.randint(0, max(0, 2 - i - j))
            c = rng.randint(-5, 5)
            if c == 0:
                continue
            key = (i, j, k)
            terms[key] = terms.get(key, UPoly()) + UPoly.const(c)
        terms = {k: v for k, v in terms.items() if not v.is_zero()}
        if any(any(k) for k in terms):
            return normalize(terms)


def gen_quasilinear_autonomous_third(rng: random.Random) -> DiffPoly:
    """y''' + G(y, y', y'') with constant coefficients."""
    terms = {(0, 0, 0, 1): UPoly.const(1)}
    for _ in range(rng.randint(1, 4)):
        i = rng.randint(0, 2)
        j = rng.randint(0, 2 - i)
        k = rng.randint(0, max(0, 2 - i - j))
        c = rng.randint(-5, 5)
        if c == 0:
            continue
        key = (i, j, k, 0)
        terms[key] = terms.get(key, UPoly()) + UPoly.const(c)
    return normalize({k: v for k, v in terms.items() if not v.is_zero()})


ALL_CLASS_GENERATORS = [
    ("linear", gen_linear),
    ("first_order", gen_first_order),
    ("quasilinear_second", gen_quasilinear_second),
    ("autonomous_second", gen_autonomous_second),
    ("quasilinear_autonomous_third", gen_quasilinear_autonomous_third),
]


# -- planted-solution construction ------------------------------------------------


def random_solution(rng: random.Random) -> ParamRFunc:
    """A small rational function to be planted as a known solution."""
    num = random_upoly(rng, rng.randint(0, 2), 3, nonzero=True)
    den = rng.choice([ONE, ONE, X, X - 1, X * (X - 1), X + 2])
    return ParamRFunc.from_rfunc((), RFunc(num, den))


def planted_diffpoly(rng: random.Random, z0: ParamRFunc, max_order: int = 2) -> DiffPoly:
    """Equation built as a sum of products of (y^(j) - z0^(j)) factors with
    polynomial cofactors, so z0 solves it by construction."""
    from aode.errors import DegenerateEquationError, NotADifferentialEquationError

    while True:
        try:
            return _planted_once(rng, z0, max_order)
        except (DegenerateEquationError, NotADifferentialEquationError):
            continue


def _planted_once(rng: random.Random, z0: ParamRFunc, max_order: int) -> DiffPoly:
    z_der = [z0]
    for _ in range(max_order):
        z_der.append(z_der[-1].derivative())

    def as_rfunc(p: ParamRFunc) -> RFunc:
        return RFunc(p.num.to_upoly(), p.den)

    nterms = rng.randint(1, 2)
    total: dict[tuple[int, ...], RFunc] = {}
    for _ in range(nterms):
        g = random_upoly(rng, 1, 3, nonzero=True)
        # expand g * prod_j (y^(j) - z0j)^(e_j), at least one factor
        factors = []
        for j in range(max_order + 1):
            e = rng.choice([0, 0, 1, 1, 2])
            if e:
                factors.append((j, e))
        if not factors:
            factors = [(rng.randint(0, max_order), 1)]
        term: dict[tuple[int, ...], RFunc] = {(): RFunc(g)}
        for j, e in factors:
            zj = as_rfunc(z_der[j])
            for _ in range(e):
                new: dict[tuple[int, ...], RFunc] = {}
                for key, coeff in term.items():
                    up = list(key) + [0] * (j + 1 - len(key))
                    up[j] += 1
                    knew = tuple(up)
                    new[knew] = new.get(knew, RFunc(UPoly())) + coeff
                    kold = key
                    new[kold] = new.get(kold, RFunc(UPoly())) + coeff * (-zj)
                term = {k: v for k, v in new.items() if not v.is_zero()}
        for k, v in term.items():
            s = total.get(k, RFunc(UPoly())) + v
            if s.is_zero():
                total.pop(k, None)
            else:
                total[k] = s
    return normalize(total)


def random_diffpoly(rng: random.Random) -> DiffPoly:
    """Unstructured small equation for round-trip style tests."""
    while True:
        n = rng.randint(0, 3)
        terms = {}
        for _ in range(rng.randint(1, 5)):
            key = tuple(rng.randint(0, 2) for _ in range(n + 1))
            f = random_upoly(rng, 3, 6)
            if f.is_zero():
                continue
            terms[key] = terms.get(key, UPoly()) + f
        terms = {k: v for k, v in terms.items() if not v.is_zero()}
        if any(any(k) for k in terms):
            return normalize(terms)
