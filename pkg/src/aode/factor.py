"""Irreducible factorization over Q.

Pipeline: squarefree decomposition, rational-root stripping, then classical
Zassenhaus for what is left (Berlekamp factorization modulo a small prime,
multifactor Hensel lifting to a coefficient-bound modulus, subset
recombination with trial division).  Inputs are desk scale; a configurable
degree cap guards the modular stage.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd

from .errors import FactorDegreeCapError
from .upoly import UPoly, rational_roots, squarefree_factorization

DEFAULT_DEGREE_CAP = 30

Q = Fraction

# integer polynomials are plain coefficient lists, ascending exponent


def _int_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = int_gcd(g, c)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _to_int_poly(f: UPoly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    return _int_primitive([int(c * den) for c in f.coeffs])


def _int_divmod_exact(a: list[int], b: list[int]):
    """Division in Z[x]; returns (q, r) or (None, None) if a coefficient fails to divide."""
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(rem) - 1 < db:
        return None, None
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            if c % lc:
                return None, None
            q = c // lc
            quot[i - db] = q
            for j, cb in enumerate(b):
                rem[i - db + j] -= q * cb
    return _int_trim(quot), _int_trim(rem)


# -- arithmetic mod m ---------------------------------------------------------


def _mod_trim(a, m):
    return _int_trim([c % m for c in a])


def _mod_add(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return _int_trim(out)


def _mod_sub(a, b, m):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return _int_trim(out)


def _mod_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    return _int_trim(out)


def _mod_scale(a, c, m):
    c %= m
    return _int_trim([x * c % m for x in a])


def _mod_divmod(a, b, m):
    """Division mod m; lc(b) must be invertible mod m."""
    b = _mod_trim(b, m)
    if not b:
        raise ZeroDivisionError("division by zero mod m")
    inv = pow(b[-1], -1, m)
    rem = [c % m for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _int_trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % m
        if c:
            q = c * inv % m
            quot[i - db] = q
            for j, cb in enumerate(b):
                rem[i - db + j] = (rem[i - db + j] - q * cb) % m
    return _int_trim(quot), _int_trim(rem)


def _mod_gcd(a, b, p):
    a = _mod_trim(a, p)
    b = _mod_trim(b, p)
    while b:
        a, b = b, _mod_divmod(a, b, p)[1]
    if a:
        a = _mod_scale(a, pow(a[-1], -1, p), p)
    return a


def _mod_gcdext(a, b, p):
    """(g, s, t) with s*a + t*b = g = monic gcd(a, b) over F_p."""
    r0, r1 = _mod_trim(a, p), _mod_trim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _mod_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _mod_sub(s0, _mod_mul(q, s1, p), p)
        t0, t1 = t1, _mod_sub(t0, _mod_mul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = _mod_scale(r0, inv, p)
        s0 = _mod_scale(s0, inv, p)
        t0 = _mod_scale(t0, inv, p)
    return r0, s0, t0


def _mod_pow_mod(a, n, f, m):
    """a^n mod (f, m) by repeated squaring; lc(f) must be invertible mod m."""
    result = [1]
    a = _mod_divmod(a, f, m)[1]
    while n:
        if n & 1:
            result = _mod_divmod(_mod_mul(result, a, m), f, m)[1]
        a = _mod_divmod(_mod_mul(a, a, m), f, m)[1]
        n >>= 1
    return result


def _mod_deriv(a, m):
    return _int_trim([k * c % m for k, c in enumerate(a)][1:])


def _symmetric(a, m):
    half = m // 2
    return _int_trim([c - m if c > half else c for c in [x % m for x in a]])


# -- Berlekamp over F_p -------------------------------------------------------


def _nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : mat @ v = 0 mod p} by Gauss-Jordan elimination."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    m = [row[:] for row in mat]
    pivots: dict[int, int] = {}
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(cols):
        if c in pivots:
            continue
        v = [0] * cols
        v[c] = 1
        for pc, pr in pivots.items():
            v[pc] = (-m[pr][c]) % p
        basis.append(v)
    return basis


def _berlekamp(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree f over F_p."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    # Frobenius matrix rows: x^(p*i) mod f, i = 0..n-1
    xp = _mod_pow_mod([0, 1], p, f, p)
    rows = [[1] + [0] * (n - 1)]
    cur = [1]
    for _ in range(1, n):
        cur = _mod_divmod(_mod_mul(cur, xp, p), f, p)[1]
        rows.append(list(cur) + [0] * (n - len(cur)))
    # fixed vectors: v with v @ (Q - I) = 0, i.e. right nullspace of (Q - I)^T
    qmi = [[(rows[i][j] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    transposed = [[qmi[i][j] for i in range(n)] for j in range(n)]
    basis = _nullspace(transposed, p)
    if len(basis) == 1:
        return [_mod_scale(f, pow(f[-1], -1, p), p)]
    factors = [f]
    for v in basis:
        vpoly = _int_trim(list(v))
        if len(vpoly) <= 1:
            continue
        refined: list[list[int]] = []
        for u in factors:
            if len(u) - 1 <= 1:
                refined.append(u)
                continue
            rest = u
            for c in range(p):
                if len(rest) - 1 <= 1:
                    break
                g = _mod_gcd(rest, _mod_sub(vpoly, [c], p), p)
                if 0 < len(g) - 1 < len(rest) - 1:
                    refined.append(g)
                    rest = _mod_divmod(rest, g, p)[0]
            refined.append(rest)
        factors = refined
        if len(factors) == len(basis):
            break
    return [_mod_scale(u, pow(u[-1], -1, p), p) for u in factors]


# -- Hensel lifting -----------------------------------------------------------


def _hensel_step(m, f, g, h, s, t):
    """Lift f = g*h, s*g + t*h = 1 from mod m to mod m^2 (h monic)."""
    M = m * m
    e = _mod_sub(f, _mod_mul(g, h, M), M)
    q, r = _mod_divmod(_mod_mul(s, e, M), h, M)
    G = _mod_add(_mod_add(g, _mod_mul(t, e, M), M), _mod_mul(q, g, M), M)
    H = _mod_add(h, r, M)
    b = _mod_sub(_mod_add(_mod_mul(s, G, M), _mod_mul(t, H, M), M), [1], M)
    c, d = _mod_divmod(_mod_mul(s, b, M), H, M)
    S = _mod_sub(s, d, M)
    T = _mod_sub(_mod_sub(t, _mod_mul(t, b, M), M), _mod_mul(c, G, M), M)
    return G, H, S, T


def _hensel_lift(p: int, f: list[int], factors: list[list[int]], l: int) -> list[list[int]]:
    """Monic lifts F_i of the monic modular factors with f = lc(f)*prod F_i mod p^l."""
    r = len(factors)
    lc = f[-1]
    modulus = p**l
    if r == 1:
        inv = pow(lc % modulus, -1, modulus)
        return [_mod_scale(f, inv, modulus)]
    k = r // 2
    g = [lc % p]
    for fi in factors[:k]:
        g = _mod_mul(g, fi, p)
    h = factors[k]
    for fi in factors[k + 1 :]:
        h = _mod_mul(h, fi, p)
    _, s, t = _mod_gcdext(g, h, p)
    m = p
    while m < modulus:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, _mod_trim(g, modulus), factors[:k], l) + _hensel_lift(
        p, _mod_trim(h, modulus), factors[k:], l
    )


# -- Zassenhaus ---------------------------------------------------------------

_PRIME_LIMIT = 5000
_PRIMES: list[int] = []


def _primes() -> list[int]:
    if not _PRIMES:
        sieve = bytearray([1]) * _PRIME_LIMIT
        sieve[0] = sieve[1] = 0
        for i in range(2, _PRIME_LIMIT):
            if sieve[i]:
                _PRIMES.append(i)
                for j in range(i * i, _PRIME_LIMIT, i):
                    sieve[j] = 0
    return _PRIMES


def _zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible integer factors of a primitive squarefree f with deg f >= 2."""
    n = len(f) - 1
    lc = f[-1]
    candidates: list[tuple[int, list[list[int]]]] = []
    for p in _primes():
        if p == 2 or lc % p == 0:
            continue
        fp = _mod_trim(f, p)
        if len(fp) - 1 != n:
            continue
        if len(_mod_gcd(fp, _mod_deriv(fp, p), p)) != 1:
            continue
        fp_monic = _mod_scale(fp, pow(lc % p, -1, p), p)
        candidates.append((p, sorted(_berlekamp(fp_monic, p))))
        if len(candidates[-1][1]) <= 3 or len(candidates) >= 4:
            break
    if not candidates:  # cannot happen for squarefree integer input
        raise ArithmeticError("no squarefree prime reduction found")
    p, modular = min(candidates, key=lambda c: len(c[1]))
    if len(modular) == 1:
        return [f]

    norm = math.isqrt(sum(c * c for c in f)) + 1
    bound = 2 ** (n + 1) * norm * abs(lc)
    l = 1
    while p**l <= 2 * bound:
        l += 1
    pl = p**l
    lifted = _hensel_lift(p, f, modular, l)

    indices = list(range(len(lifted)))
    factors: list[list[int]] = []
    rest = f
    s = 1
    while 2 * s <= len(indices):
        for subset in combinations(indices, s):
            prod = [rest[-1] % pl]
            for i in subset:
                prod = _mod_mul(prod, lifted[i], pl)
            cand = _int_primitive(_symmetric(prod, pl))
            if not cand or len(cand) - 1 < 1:
                continue
            q, r = _int_divmod_exact(rest, cand)
            if r is not None and not r:
                factors.append(cand)
                rest = q
                indices = [i for i in indices if i not in subset]
                break
        else:
            s += 1
    if len(rest) - 1 >= 1:
        factors.append(rest)
    return factors


# -- public API ----------------------------------------------------------------


def factor_irreducible(
    f: UPoly, degree_cap: int = DEFAULT_DEGREE_CAP
) -> tuple[Fraction, list[tuple[UPoly, int]]]:
    """Factor f over Q as unit * prod(factor^mult), factors monic irreducible.

    Output order is reproducible: sorted by degree, then by coefficient tuple.
    Raises FactorDegreeCapError when the modular stage would run on a
    polynomial of degree above ``degree_cap``.
    """
    if f.is_zero():
        raise ValueError("factorization of the zero polynomial")
    unit = f.lc
    found: list[tuple[UPoly, int]] = []
    for part, mult in squarefree_factorization(f):
        for irr in _factor_squarefree_monic(part, degree_cap):
            found.append((irr, mult))
    found.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return unit, found


def _factor_squarefree_monic(g: UPoly, degree_cap: int) -> list[UPoly]:
    out: list[UPoly] = []
    for r in rational_roots(g):
        lin = UPoly.x_minus(r)
        g = g.exact_div(lin)
        out.append(lin)
    if g.degree <= 0:
        return out
    if g.degree in (2, 3):  # no rational roots left, so irreducible
        out.append(g)
        return out
    if g.degree > degree_cap:
        raise FactorDegreeCapError(
            f"degree {g.degree} exceeds the factorization cap {degree_cap}"
        )
    for fac in _zassenhaus(_to_int_poly(g)):
        out.append(UPoly(fac).monic())
    return out


def is_irreducible(f: UPoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    if f.is_zero() or f.degree < 1:
        return False
    if f.degree == 1:
        return True
    _, factors = factor_irreducible(f, degree_cap)
    return len(factors) == 1 and factors[0][1] == 1
