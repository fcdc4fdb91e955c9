"""Hasse-Schmidt hyperderivatives D_j on F_q[T].

D_j T^n = binom(n, j) T^(n-j).  Binomials mod p come from Lucas' theorem.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

from .poly import FqPoly


@lru_cache(maxsize=None)
def binom_mod(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * comb(a, b) % p
        n //= p
        k //= p
    return out


def hyperderive(j: int, f: FqPoly) -> FqPoly:
    if j < 0:
        raise ValueError("order must be nonnegative")
    if j == 0 or f.is_zero():
        return f
    if j > f.degree:
        return FqPoly.zero(f.field, f.var)
    p = f.field.p
    ks = range(j, f.degree + 1)
    bs = np.array([binom_mod(k, j, p) for k in ks], dtype=np.int64)
    src = f.c[j:]
    if f.field.m == 1:
        return f.new(bs * src % p)
    return f.new(np.array([f.field.smul(int(b), int(c)) for b, c in zip(bs, src)], dtype=np.int64))


def leibniz_check(n: int, u: FqPoly, v: FqPoly) -> bool:
    """D_n(uv) == sum_i D_i(u) D_(n-i)(v)."""
    rhs = FqPoly.zero(u.field, u.var)
    for i in range(n + 1):
        rhs = rhs + hyperderive(i, u) * hyperderive(n - i, v)
    return hyperderive(n, u * v) == rhs


def partitions(n: int, j: int) -> list[tuple[int, ...]]:
    """P(n, j): tuples (mu_1..mu_n) of nonnegative ints with sum mu_i = j and sum i*mu_i = n, lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, left_j: int, left_n: int, acc: list[int]):
        if i > n:
            if left_j == 0 and left_n == 0:
                out.append(tuple(acc))
            return
        for mu in range(0, min(left_j, left_n // i) + 1):
            acc.append(mu)
            rec(i + 1, left_j - mu, left_n - i * mu, acc)
            acc.pop()

    if n >= 1:
        rec(1, j, n, [])
    return out


def multinomial_charp(m: int, mu: tuple[int, ...], p: int) -> int:
    """m (m-1) ... (m-j+1) / prod mu_i! mod p, with j = sum mu."""
    j = sum(mu)
    if j > m:
        return 0
    falling = prod(range(m - j + 1, m + 1))
    den = prod(factorial(x) for x in mu)
    return (falling // den) % p


def d_mu(f: FqPoly, mu: tuple[int, ...]) -> FqPoly:
    out = FqPoly.one(f.field, f.var)
    for i, e in enumerate(mu, start=1):
        if e:
            out = out * hyperderive(i, f) ** e
    return out


def power_formula(f: FqPoly, m: int, n: int) -> FqPoly:
    """D_n(f^m) assembled from products of lower hyperderivatives of f."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    p = f.field.p
    out = FqPoly.zero(f.field, f.var)
    for j in range(1, min(n, m) + 1):
        inner = FqPoly.zero(f.field, f.var)
        for mu in partitions(n, j):
            c = multinomial_charp(m, mu, p)
            if c:
                inner = inner + d_mu(f, mu) * c
        if not inner.is_zero():
            out = out + f ** (m - j) * inner
    return out


def vadic_continuity_bound(n: int, c: FqPoly, f: FqPoly, m: int) -> bool:
    """Whether f^(m-n) divides D_n(c f^m)."""
    if m <= n:
        raise ValueError("bound is vacuous unless m > n")
    return (f ** (m - n)).divides(hyperderive(n, c * f**m))


def extend_derivation(x):
    """d/dT on k[u]/(f), for any element x = sum c_i(T) lambda^i.

    d(lambda) = -(df/dT)(lambda) / f'(lambda); the rest is the chain rule.
    """
    ext = x.ext
    lam = ext.gen()
    fT = [c.derivative() for c in ext.modulus]
    fu = [ext.modulus[k] * k for k in range(1, len(ext.modulus))]
    dlam = -(ext.evaluate(fT, lam) / ext.evaluate(fu, lam))
    cs = list(x.c)
    dc = ext.evaluate([c.derivative() for c in cs], lam)
    dx = ext.evaluate([cs[k] * k for k in range(1, len(cs))], lam)
    return dc + dx * dlam
