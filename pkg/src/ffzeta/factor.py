"""Factorization, irreducibility and discriminants over F_q.

Squarefree decomposition, distinct-degree splitting and Cantor-Zassenhaus
equal-degree splitting (trace map in characteristic 2).  Randomness comes from
an explicitly seeded numpy generator so factor lists are reproducible.
"""

from __future__ import annotations

import numpy as np

from . import genpoly
from .field import FqElem, prime_factors
from .poly import FqPoly, poly_gcd, powmod


def _x(f: FqPoly) -> FqPoly:
    return FqPoly.gen(f.field, f.var)


def _pth_root(f: FqPoly) -> FqPoly:
    p, m = f.field.p, f.field.m
    coeffs = f.c[::p]
    return f.new(f.field.frob(coeffs, m - 1) if m > 1 else coeffs)


def squarefree_decomposition(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Pairs (g, k) with f/lc = prod g^k, each g squarefree and monic."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    out: list[tuple[FqPoly, int]] = []
    if f.degree == 0:
        return out
    p = f.field.p
    c = poly_gcd(f, f.derivative())
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        for g, k in squarefree_decomposition(_pth_root(c)):
            out.append((g, k * p))
    return out


def distinct_degree(f: FqPoly, max_degree: int | None = None) -> list[tuple[FqPoly, int]]:
    """Split squarefree monic f into products of equal-degree irreducibles.

    With ``max_degree`` only factors of degree <= max_degree are extracted.
    """
    q = f.field.q
    out = []
    x = _x(f)
    h = x % f
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            if max_degree is None or f.degree <= max_degree:
                out.append((f, f.degree))
            break
        if max_degree is not None and d > max_degree:
            break
        h = powmod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    return out


def _split_once(f: FqPoly, d: int, rng: np.random.Generator) -> FqPoly:
    field = f.field
    q = field.q
    n = f.degree
    while True:
        a = FqPoly(field, field.random(rng, n), f.var)
        if a.degree < 1:
            continue
        if field.p == 2:
            t = a % f
            b = t
            for _ in range(field.m * d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = powmod(a, (q**d - 1) // 2, f) - 1
        g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return g


def equal_degree(f: FqPoly, d: int, rng: np.random.Generator) -> list[FqPoly]:
    if f.degree == d:
        return [f]
    g = _split_once(f, d, rng)
    return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def _key(g: FqPoly):
    return (g.degree, tuple(int(x) for x in g.c))


def poly_factor(f: FqPoly, seed: int = 0, max_degree: int | None = None) -> list[tuple[FqPoly, int]]:
    """Irreducible monic factors with multiplicity, sorted by degree then coefficients.

    ``max_degree`` restricts the output to factors of that degree or less.
    """
    rng = np.random.default_rng(seed)
    out = []
    for g, k in squarefree_decomposition(f):
        for h, d in distinct_degree(g, max_degree):
            for irr in equal_degree(h, d, rng):
                out.append((irr, k))
    out.sort(key=lambda gk: (_key(gk[0]), gk[1]))
    return out


def irreducible_test(f: FqPoly) -> bool:
    """Rabin's test: f | x^(q^n) - x and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n."""
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    q = f.field.q
    x = _x(f)
    need = {n // ell for ell in prime_factors(n)}
    h = x % f
    for k in range(1, n + 1):
        h = powmod(h, q, f)
        if k in need and poly_gcd(h - x, f).degree != 0:
            return False
    return (h - x % f).is_zero()


def roots(f: FqPoly, seed: int = 0) -> list[int]:
    """Distinct roots in F_q as sorted codes."""
    return sorted(int((-g).c[0]) if g.degree == 1 and g.c[0] else 0 for g, _ in poly_factor(f, seed, max_degree=1))


def _elems(f: FqPoly) -> list[FqElem]:
    return [FqElem(f.field, int(c)) for c in f.c]


def resultant(f: FqPoly, g: FqPoly) -> FqElem:
    f._check(g)
    one = FqElem(f.field, 1)
    return genpoly.resultant(_elems(f), _elems(g), one * 0, one)


def discriminant(f: FqPoly) -> FqElem:
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    one = FqElem(f.field, 1)
    return genpoly.discriminant(_elems(f), one * 0, one)
