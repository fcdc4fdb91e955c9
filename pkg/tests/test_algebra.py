"""Finite fields, polynomial arithmetic, factorization and extensions."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffzeta import poly as polymod
from ffzeta.extension import ExtField
from ffzeta.factor import discriminant, irreducible_test, poly_factor, roots, squarefree_decomposition
from ffzeta.field import FqElem, FqField, field_for, get_field
from ffzeta.parse import parse_bivariate, parse_poly
from ffzeta.poly import FqPoly, enumerate_monic, mul_fp, pow_charp, poly_gcd, poly_xgcd
from ffzeta.ratfn import RatFn

SMALL_Q = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5), (2, 6)]


def P(r, coeffs, var="T"):
    return polymod.poly_from_ints(r, coeffs, var)


def schoolbook(a, b, p):
    out = np.zeros(len(a) + len(b) - 1, dtype=object)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += int(x) * int(y)
    return np.array([int(v) % p for v in out], dtype=np.int64)


# ---------------------------------------------------------------------------
# fields


@pytest.mark.parametrize("p,m", SMALL_Q)
def test_field_axioms_exhaustive(p, m):
    F = get_field(p, m)
    xs = F.elements()
    nz = xs[1:]
    assert F.inv(1) == 1
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.pow(nz, F.q - 1) == 1)
    # Frobenius applied m times is the identity, once it is additive and multiplicative
    assert np.all(F.frob(xs, m) == xs)
    a, b = np.meshgrid(xs, xs)
    assert np.all(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)))
    assert np.all(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)))
    assert np.all(F.mul(a, F.add(a, b)) == F.add(F.mul(a, a), F.mul(a, b)))


def test_field_rejects_bad_input():
    with pytest.raises(ValueError):
        FqField(4)
    with pytest.raises(ValueError):
        FqField(2, 2, modulus=(1, 0, 1))  # X^2 + 1 = (X+1)^2 over F_2


def test_field_accepts_any_irreducible_modulus():
    F = FqField(2, 2, modulus=(1, 1, 1))
    G = FqField(3, 2, modulus=(1, 0, 1))
    H = FqField(3, 2, modulus=(2, 1, 1))
    for K in (F, G, H):
        xs = K.elements()[1:]
        assert np.all(K.mul(xs, K.inv(xs)) == 1)


def test_field_json_roundtrip():
    F = get_field(3, 2)
    assert FqField.from_json(json.loads(json.dumps(F.to_json()))) == F


def test_elem_wrapper():
    F = get_field(5)
    x = FqElem(F, 3)
    assert x * x.inverse() == FqElem(F, 1)
    assert x ** 4 == FqElem(F, 1)


# ---------------------------------------------------------------------------
# polynomials


def test_mul_small_cases():
    assert P(2, [1, 1]) * P(2, [1, 1]) == P(2, [1, 0, 1])
    a = P(5, [1, 2, 3])
    assert a * FqPoly.one(a.field) == a


def test_karatsuba_matches_schoolbook_degree_2000(rng):
    F = get_field(5)
    a = FqPoly(F, rng.integers(0, 5, 2001))
    b = FqPoly(F, rng.integers(0, 5, 2001))
    assert np.array_equal((a * b).c, schoolbook(a.c, b.c, 5))


def test_karatsuba_unbalanced_lengths(rng):
    """Operand lengths na = 2 nb - 1 once overran the accumulator."""
    old = polymod.KARATSUBA_THRESHOLD
    polymod.set_karatsuba_threshold(4)
    try:
        for na, nb in [(9, 5), (17, 9), (33, 17), (25, 13), (7, 4), (40, 3), (64, 64)]:
            for p in (2, 3, 5):
                a = rng.integers(0, p, na)
                b = rng.integers(0, p, nb)
                want = np.convolve(a, b) % p
                got = mul_fp(a, b, p)
                assert np.array_equal(got[: len(want)], want)
                assert not np.any(got[len(want):])
    finally:
        polymod.set_karatsuba_threshold(old)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=30), st.lists(st.integers(0, 4), min_size=1, max_size=30))
def test_divmod_identity(a, b):
    A, B = P(5, a), P(5, b)
    if B.is_zero():
        return
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


@given(st.lists(st.integers(0, 8), max_size=12), st.lists(st.integers(0, 8), max_size=12))
def test_ring_axioms_over_f9(a, b):
    F = get_field(3, 2)
    A, B = FqPoly(F, a), FqPoly(F, b)
    assert A * B == B * A
    assert (A + B) - B == A
    assert (A + B) * (A - B) == A * A - B * B


def test_pow_charp():
    assert pow_charp(P(3, [1, 2, 1]), 0).is_one()
    assert pow_charp(P(2, [1, 1]), 2) == P(2, [1, 0, 1])
    F = get_field(5)
    for c in range(5):
        f = FqPoly(F, [c, 1])
        acc, base, e = FqPoly.one(F), f, 1249
        while e:  # repeated squaring oracle
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        assert pow_charp(f, 1249) == acc


def test_pow_charp_extension_field(rng):
    F = get_field(2, 3)
    f = FqPoly(F, rng.integers(0, 8, 4))
    assert pow_charp(f, 37) == f ** 37


def test_gcd():
    a = P(3, [2, 0, 1])
    assert poly_gcd(a, FqPoly.zero(a.field)) == a.monic()
    assert poly_gcd(a, a) == a.monic()
    f = P(3, [1, 0, 1]) * P(3, [1, 1])
    g = P(3, [1, 1]) ** 2
    assert poly_gcd(f, g) == P(3, [1, 1])


@given(st.lists(st.integers(0, 6), max_size=10), st.lists(st.integers(0, 6), max_size=10))
def test_xgcd_bezout(a, b):
    A, B = P(7, a), P(7, b)
    if A.is_zero() and B.is_zero():
        return
    g, s, t = poly_xgcd(A, B)
    assert s * A + t * B == g
    assert g.divides(A) and g.divides(B)


def test_json_roundtrip_and_format():
    f = P(5, [1, 0, 3])
    d = f.to_json()
    assert d == {"p": 5, "m": 1, "var": "T", "coeffs": [[1], [0], [3]]}
    assert FqPoly.from_json(d) == f
    F = get_field(2, 2)
    g = FqPoly(F, [3, 1, 2])
    assert FqPoly.from_json(json.loads(json.dumps(g.to_json()))) == g


def test_parse_expressions():
    F = get_field(5)
    assert parse_poly("T^6+T^5+T^4+T^3+T^2+T+1", F) == P(5, [1] * 7)
    assert parse_poly("2*T^3 - T + 4", F) == P(5, [4, 4, 0, 2])
    assert parse_poly('{"p":5,"m":1,"var":"T","coeffs":[[1],[2]]}', F) == P(5, [1, 2])
    cs = parse_bivariate("u^2 + T*u + T^3", F, "u", "T")
    assert cs == [P(5, [0, 0, 0, 1]), P(5, [0, 1]), P(5, [1])]
    with pytest.raises(ValueError):
        parse_poly("T^2 + x", F)


# ---------------------------------------------------------------------------
# factorization


def test_factor_small_cases():
    assert poly_factor(P(2, [1, 0, 1])) == [(P(2, [1, 1]), 2)]
    assert irreducible_test(P(3, [1, 0, 1]))
    assert poly_factor(P(3, [1, 0, 1])) == [(P(3, [1, 0, 1]), 1)]
    assert irreducible_test(P(2, [1, 1, 1]))
    assert not irreducible_test(P(5, [1, 0, 1]))
    assert roots(P(5, [1, 0, 1])) == [2, 3]
    for r in (2, 3, 4, 5):
        assert irreducible_test(FqPoly.gen(field_for(r)))


def _irreducibles(F, d):
    return [f for f in enumerate_monic(F, d) if irreducible_test(f)]


@pytest.mark.parametrize("p,m,d", [(2, 1, 6), (3, 1, 4), (5, 1, 3), (2, 2, 3)])
def test_irreducible_count_matches_necklace_formula(p, m, d):
    from sympy import mobius

    q = p**m
    want = sum(int(mobius(d // e)) * q**e for e in range(1, d + 1) if d % e == 0) // d
    assert len(_irreducibles(get_field(p, m), d)) == want


def test_irreducible_test_against_root_search():
    F = get_field(3)
    for f in enumerate_monic(F, 3):
        has_root = any(f(FqElem(F, c)) == FqElem(F, 0) for c in range(3))
        assert irreducible_test(f) == (not has_root)


def test_factor_recovers_known_product(rng):
    F = get_field(5)
    pool = _irreducibles(F, 2) + _irreducibles(F, 3)
    for trial in range(5):
        idx = rng.choice(len(pool), 3)
        want = {}
        prod = FqPoly.one(F)
        for i in idx:
            g = pool[int(i)]
            prod = prod * g
            want[g] = want.get(g, 0) + 1
        got = dict(poly_factor(prod.scale(3), seed=trial))
        assert got == want


def test_squarefree_decomposition_product(rng):
    F = get_field(3)
    f = P(3, [1, 1]) ** 4 * P(3, [1, 0, 1]) * P(3, [2, 1]) ** 3
    parts = squarefree_decomposition(f)
    prod = FqPoly.one(F)
    for g, k in parts:
        prod = prod * g ** k
    assert prod == f.monic()


def test_discriminant_formulas():
    b, c = 3, 5
    d = discriminant(P(7, [c, b, 1]))
    assert int(d.code if hasattr(d, "code") else d) % 7 == (b * b - 4 * c) % 7
    pp, qq = 2, 6
    d = discriminant(P(7, [qq, pp, 0, 1]))
    assert int(d.code if hasattr(d, "code") else d) % 7 == (-4 * pp**3 - 27 * qq**2) % 7
    d = discriminant(P(7, [1, 1]) ** 2 * P(7, [3, 1]))
    assert int(d.code if hasattr(d, "code") else d) == 0


# ---------------------------------------------------------------------------
# extensions


def test_extension_arithmetic_geometric_example():
    F = get_field(3)
    theta = RatFn.from_poly(FqPoly.gen(F, "theta"))
    ext = ExtField.over_ratfn([theta, RatFn.constant(F, 0, "theta"), RatFn.constant(F, 1, "theta")])
    lam = ext.gen()
    assert lam * lam == ext.scalar(-theta)
    assert lam.inverse() * lam == ext.scalar(1)
    assert ((lam + 1) + (-lam - 1)).is_zero()
    assert (lam / (lam + 1)) * (lam + 1) == lam


def test_ratfn_field_ops():
    x = RatFn(P(5, [1, 1]), P(5, [0, 1]))
    y = RatFn(P(5, [2]), P(5, [1, 0, 1]))
    assert (x * y) / y == x
    assert x - x == x.zero()
    assert x.inverse() * x == x.one()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pow_charp_random_against_repeated_squaring(p, rng):
    F = get_field(p)
    for _ in range(8):
        f = FqPoly(F, list(rng.integers(0, p, int(rng.integers(1, 10)))))
        e = int(rng.integers(0, 3001))
        acc, base, k = FqPoly.one(F), f, e
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        assert pow_charp(f, e) == acc


def test_extension_rejects_inseparable_modulus():
    from ffzeta.extension import ExtField

    F = get_field(2)
    with pytest.raises(ValueError):
        ExtField.over_ratfn([FqPoly(F, [0, 1]), FqPoly(F, [0]), FqPoly(F, [1])])  # u^2 + T


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_blocked_remainder_matches_long_division(p, rng):
    F = get_field(p)
    for _ in range(20):
        a = FqPoly(F, list(rng.integers(0, p, int(rng.integers(900, 6000)))))
        b = FqPoly(F, list(rng.integers(0, p, int(rng.integers(1, 60)))) + [int(rng.integers(1, p))])
        assert a % b == divmod(a, b)[1]
