"""Eisenstein scans, reductions, resolvents, discriminants and quartic classification."""

import pytest

from ffzeta.factor import discriminant as fq_discriminant
from ffzeta.field import FqElem, field_for, get_field
from ffzeta.galois import (
    XPoly,
    cubic_discriminant,
    depressed_quartic,
    disc_is_square,
    discriminant,
    eisenstein_check,
    eisenstein_scan,
    factor_via_infinity,
    irreducible_mod_prime,
    nonresidue_witness,
    poly_sqrt,
    quartic_discriminant,
    quartic_galois_group,
    reduce_mod_prime,
    resolvent_cubic,
    roots_in_k,
    xpoly_from_zeta,
)
from ffzeta.poly import FqPoly
from ffzeta.zeta import zeta_tilde

F3, F5 = get_field(3), get_field(5)


def P(F, cs):
    return FqPoly(F, cs)


def X(F, rows):
    return XPoly.from_ints(F, rows)


def test_eisenstein_definitions():
    f = X(F5, [[0, 4], [0], [1]])  # x^2 - T
    T = P(F5, [0, 1])
    assert eisenstein_check(f, T).forward
    assert not eisenstein_check(X(F5, [[0, 0, 4], [0], [1]]), T)  # x^2 - T^2
    assert [(v, o) for v, o in eisenstein_scan(f, 3)] == [(T, "forward")]
    assert eisenstein_scan(X(F5, [[4], [0], [1]]), 3) == []
    with pytest.raises(ValueError):
        eisenstein_check(f, P(F5, [1, 0, 1]))  # T^2 + 1 = (T-2)(T+2) over F_5


@pytest.mark.parametrize(
    "r,j,degrees,witness",
    [
        (3, 17, [24, 15, 0], [1, 0, 1]),
        (5, 49, [70, 45, 0], [1, 1, 1]),
        (3, 53, [123, 96, 51, 0], [1, 0, 2, 1]),
        (7, 97, [140, 91, 0], [1, 0, 1]),
    ],
)
def test_eisenstein_corpus(r, j, degrees, witness):
    f = xpoly_from_zeta(zeta_tilde(r, j))
    assert f.degrees() == degrees
    scan = eisenstein_scan(f, 3)
    assert scan and scan[0] == (P(field_for(r), witness), "forward")
    for v, _ in scan:
        assert eisenstein_check(f, v).forward


def test_reduction_mod_prime():
    f = X(F3, [[0, 2], [0], [1]])  # x^2 - T
    v = P(F3, [1, 1])  # T + 1
    red = reduce_mod_prime(f, v)
    has_root = any((red(FqElem(F3, c)) == FqElem(F3, 0)) for c in range(3))
    assert irreducible_mod_prime(f, v) == (not has_root)
    assert not irreducible_mod_prime(X(F3, [[2], [0], [1]]), v)
    with pytest.raises(ValueError):
        irreducible_mod_prime(X(F3, [[1], [0], [0, 1]]), P(F3, [0, 1]))  # v | lc


def test_resolvent_formula_instances():
    q = P(F5, [1, 2])
    f = XPoly([FqPoly.zero(F5), q, FqPoly.zero(F5), FqPoly.zero(F5), FqPoly.one(F5)])
    assert resolvent_cubic(f).coeffs == XPoly([-(q * q), FqPoly.zero(F5), FqPoly.zero(F5), FqPoly.one(F5)]).coeffs
    p = P(F5, [3, 0, 1])
    f = XPoly([FqPoly.zero(F5), FqPoly.zero(F5), p, FqPoly.zero(F5), FqPoly.one(F5)])
    res = resolvent_cubic(f)
    assert res.coeff(0).is_zero() and res.coeff(1).is_zero() and res.coeff(2) == -p




def test_resolvent_discriminant_equals_quartic_discriminant(rng):
    for trial in range(25):
        rows = [list(rng.integers(0, 5, rng.integers(1, 4))) for _ in range(4)] + [[1]]
        f = X(F5, rows)
        assert cubic_discriminant(resolvent_cubic(f)) == quartic_discriminant(f)


def test_quartic_discriminant_matches_specialization(rng):
    """disc commutes with evaluation T -> c for monic quartics."""
    for trial in range(10):
        rows = [list(rng.integers(0, 5, rng.integers(1, 4))) for _ in range(4)] + [[1]]
        f = X(F5, rows)
        d = quartic_discriminant(f)
        for c in range(5):
            spec = FqPoly(F5, [g(c) for g in f.coeffs])
            assert d(FqElem(F5, c)) == fq_discriminant(spec)


def test_discriminant_small_degrees():
    f = X(F5, [[1], [0, 1], [1]])  # x^2 + T x + 1
    assert discriminant(f) == P(F5, [-4 % 5, 0, 1])


def test_square_tests():
    assert disc_is_square(P(F5, [0, 0, 1]))
    assert not disc_is_square(P(F5, [0, 1]))
    assert not disc_is_square(P(F5, [0, 0, 2]))
    g = P(F5, [2, 3, 0, 1])
    assert poly_sqrt(g * g) in (g, -g)
    assert nonresidue_witness(P(F5, [0, 1])) is not None
    with pytest.raises(NotImplementedError):
        disc_is_square(P(get_field(2), [0, 0, 1]))


def test_factor_via_infinity_recovers_factors():
    f1 = XPoly([P(F5, [0, 1]), P(F5, [0, 0, 0, 1]), P(F5, [1])])  # x^2 + T^3 x + T
    f2 = XPoly([P(F5, [1, 1]), P(F5, [0, 0, 1]), P(F5, [1])])  # x^2 + T^2 x + T + 1
    assert [g.degree for g in factor_via_infinity(f1)] == [2]
    facs = factor_via_infinity(f1 * f2)
    assert sorted(g.degree for g in facs) == [2, 2]
    assert {g.coeffs for g in facs} == {f1.coeffs, f2.coeffs}


def test_roots_in_k():
    T = P(F5, [0, 1])
    zero, one = FqPoly.zero(F5), FqPoly.one(F5)
    assert len(roots_in_k(XPoly([-(T * T), zero, one]))) == 2
    assert roots_in_k(XPoly([-T, zero, one])) == []


def test_classification_examples():
    T = P(F5, [0, 1])
    one = P(F5, [1])
    a = XPoly([-T, FqPoly.zero(F5), one])
    b = XPoly([-(T + 1), FqPoly.zero(F5), one])
    assert quartic_galois_group(a * b).group == "reducible"
    assert quartic_galois_group(X(F5, [[0, 4], [0], [0], [0], [1]])).group == "D4-or-C4"
    assert quartic_galois_group(X(F5, [[1], [0], [3, 1], [0], [1]])).group == "V4"  # x^4 - (4T+2) x^2 + 1
    assert quartic_galois_group(X(F5, [[0, 1], [1, 1], [0], [0, 0, 1], [1]])).group == "S4"
    assert quartic_galois_group(X(get_field(2), [[0, 1], [0], [0], [0], [1]])).group == "undecided"


def test_depressed_quartic_roundtrip():
    f = X(F5, [[1, 2], [0, 1], [3], [2, 2], [1]])
    p, q, s = depressed_quartic(f)
    # disc of the depressed form equals disc of f (translation invariance)
    zero = FqPoly.zero(F5)
    g = XPoly([s, q, p, zero, FqPoly.one(F5)])
    assert quartic_discriminant(g) == quartic_discriminant(f)


def test_roberts_resolvent_irreducible_mod_sextic():
    f = xpoly_from_zeta(zeta_tilde(5, 1249))
    v = P(F5, [1] * 7)
    assert irreducible_mod_prime(resolvent_cubic(f), v)


def _has_root_brute(f: XPoly) -> bool:
    """Rational root search: x = a/b with a | a_0 and b | lc, by enumeration."""
    from ffzeta.poly import enumerate_monic

    F = f.field
    n = f.degree
    if f.coeff(0).is_zero():
        return True
    for db in range(f.lc.degree + 1):
        for b in enumerate_monic(F, db):
            for da in range(f.coeff(0).degree + 1):
                for a in enumerate_monic(F, da):
                    for u in range(1, F.q):
                        aa = a * u
                        acc = FqPoly.zero(F)
                        for i in range(n + 1):
                            acc = acc + f.coeff(i) * aa**i * b ** (n - i)
                        if acc.is_zero():
                            return True
    return False


def test_small_cubics_cross_checked_by_root_search(rng):
    """Degree <= 3: irreducible over k iff no root in k."""
    primes = [P(F3, [0, 1]), P(F3, [1, 1]), P(F3, [1, 0, 1])]
    seen_irreducible = seen_reducible = 0
    for _ in range(40):
        rows = [list(rng.integers(0, 3, int(rng.integers(1, 3)))) for _ in range(3)] + [[1]]
        f = X(F3, rows)
        brute = _has_root_brute(f)
        assert bool(roots_in_k(f)) == brute
        for v in primes:
            try:
                if irreducible_mod_prime(f, v):
                    assert not brute
            except ValueError:
                pass
        for v, _ in eisenstein_scan(f, 2):
            assert not brute
        seen_irreducible += not brute
        seen_reducible += brute
    assert seen_irreducible and seen_reducible


def test_roberts_quartic_eisenstein_needs_degree_four_primes():
    """The non-leading coefficients share exactly the primes of degree 1, 2 and 4."""
    f = xpoly_from_zeta(zeta_tilde(5, 1249))
    assert eisenstein_scan(f, 3) == []
    scan = eisenstein_scan(f, 4)
    assert len(scan) == 150 and all(v.degree == 4 and o == "forward" for v, o in scan)
    rep = quartic_galois_group(f)
    assert rep.group == "S4" and rep.irreducibility["method"] == "eisenstein"
    assert rep.resolvent["prime"] == "T^5 + 4*T + 1"
