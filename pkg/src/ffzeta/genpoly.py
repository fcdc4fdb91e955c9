"""Dense polynomials as Python lists over any field-like scalar type.

Scalars need +, -, *, /, unary minus and ``is_zero()``.  These helpers back
the quotient-field extensions, polynomials over rational functions and the
small exact oracles in the Galois tools; the heavy F_q work lives in
``poly``.  Lists are little-endian and kept trimmed.
"""

from __future__ import annotations


def is_zero(c) -> bool:
    z = getattr(c, "is_zero", None)
    return z() if z is not None else c == 0


def trim(a: list) -> list:
    a = list(a)
    while a and is_zero(a[-1]):
        a.pop()
    return a


def degree(a: list) -> int:
    return len(trim(a)) - 1


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        else:
            out.append(a[i] if i < len(a) else b[i])
    return trim(out)


def neg(a: list) -> list:
    return [-c for c in a]


def sub(a: list, b: list) -> list:
    return add(a, neg(b))


def scale(a: list, s) -> list:
    return trim([c * s for c in a])


def mul(a: list, b: list, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a: list, b: list, zero):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], r
    q = [zero] * (len(r) - db)
    lc = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] / lc
        q[k] = c
        for i in range(db + 1):
            r[k + i] = r[k + i] - c * b[i]
        r[-1] = zero
        r = trim(r)
    return trim(q), r


def monic(a: list) -> list:
    a = trim(a)
    inv = a[-1] ** -1 if hasattr(a[-1], "__pow__") else 1 / a[-1]
    return [c * inv for c in a]


def gcd(a: list, b: list, zero) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, zero)[1]
    return monic(a) if a else a


def xgcd(a: list, b: list, zero, one):
    """(g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1, zero)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, zero))
        t0, t1 = t1, sub(t0, mul(q, t1, zero))
    if not r0:
        return r0, s0, t0
    inv = one / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(a: list) -> list:
    return trim([a[k] * k for k in range(1, len(a))])


def evaluate(a: list, x, zero):
    acc = zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def resultant(a: list, b: list, zero, one):
    """Resultant with respect to the actual degrees of a and b."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return zero
    res = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * _ipow(b[0], da, one)
        if da == 0:
            return res * _ipow(a[0], db, one)
        _, r = divmod_(a, b, zero)
        if not r:
            return zero
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res = res * _ipow(b[-1], da - dr, one)
        a, b = b, r


def discriminant(a: list, zero, one):
    """lc^(2n-2) times the product of squared root differences."""
    a = trim(a)
    n = len(a) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    d = derivative(a)
    if not d:
        return zero
    res = resultant(a, d, zero, one)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    e = n - 2 - (len(d) - 1)
    out = res * _ipow(a[-1], e, one) if e >= 0 else res / _ipow(a[-1], -e, one)
    return out if sign == 1 else -out


def _ipow(x, e: int, one):
    out = one
    for _ in range(e):
        out = out * x
    return out
