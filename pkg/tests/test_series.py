"""Laurent series at places of F_q(T), p-adic exponents and Newton polygons."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffzeta.errors import PrecisionError
from ffzeta.field import get_field
from ffzeta.newton import hensel_zero_lift, newton_polygon
from ffzeta.poly import FqPoly, poly_from_ints
from ffzeta.ratfn import RatFn
from ffzeta.series import PadicInt, Place, ValSeries, one_unit_part, unit_pow_padic

F3 = get_field(3)
INF3 = Place.infinity(F3)


def ser(place, val, coeffs, prec):
    return ValSeries(place, val, coeffs, prec)


def test_one_unit_parts():
    P = lambda cs: poly_from_ints(3, cs)
    assert one_unit_part(P([0, 1]), INF3, 8).equal_to(ValSeries.one(INF3, 8), 8)
    assert one_unit_part(P([1, 1]), INF3, 8).equal_to(ser(INF3, 0, [1, 1], 8), 8)
    assert one_unit_part(P([1, 1, 1]), INF3, 8).equal_to(ser(INF3, 0, [1, 1, 1], 8), 8)


def test_unit_pow_padic_cases():
    one = ValSeries.one(INF3, 12)
    assert unit_pow_padic(one, PadicInt(3, Fraction(1, 5), 4), 12).equal_to(one, 12)
    u = ser(INF3, 0, [1, 1], 12)
    assert unit_pow_padic(u, 3, 12).equal_to(ser(INF3, 0, [1, 0, 0, 1], 12), 12)
    geo = ser(INF3, 0, [1, 2] * 6, 12)  # 1 - pi + pi^2 - ...
    assert unit_pow_padic(u, -1, 12).equal_to(geo, 12)
    assert (u * geo).equal_to(one, 12)


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_unit_pow_is_a_homomorphism_in_y(a, b):
    u = ser(INF3, 0, [1, 2, 0, 1, 1], 15)
    lhs = unit_pow_padic(u, a + b, 15)
    rhs = unit_pow_padic(u, a, 15) * unit_pow_padic(u, b, 15)
    assert lhs.equal_to(rhs, 15)


def test_unit_pow_fractional_exponent_root():
    u = ser(INF3, 0, [1, 1, 2], 20)
    y = PadicInt(3, Fraction(1, 2), 4)
    w = unit_pow_padic(u, y, 20)
    assert (w * w).equal_to(u, 20)


def test_unit_pow_precision_shortfall():
    u = ser(INF3, 0, [1, 1], 30)
    with pytest.raises(PrecisionError):
        unit_pow_padic(u, PadicInt(3, Fraction(1, 2), 2), 30)


def test_series_ops():
    a = ser(INF3, -2, [2, 1, 0, 1], 10)
    assert (a * a.inverse()).equal_to(ValSeries.one(INF3, 10), 10)
    one_plus = ser(INF3, 0, [1, 1], 10)
    one_minus = ser(INF3, 0, [1, 2], 10)
    assert (one_plus * one_minus).equal_to(ser(INF3, 0, [1, 0, 2], 10), 10)
    inv = one_plus.inverse()
    assert inv.equal_to(ser(INF3, 0, [1, 2] * 5, 10), 10)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=8), st.lists(st.integers(0, 4), min_size=1, max_size=8))
def test_ratfn_expansion_at_finite_place_is_multiplicative(a, b):
    F5 = get_field(5)
    v = poly_from_ints(5, [2, 0, 1])  # T^2 + 2, irreducible over F_5
    place = Place.finite(v)
    A, B = FqPoly(F5, a), FqPoly(F5, b)
    if A.is_zero() or B.is_zero():
        return
    lhs = ValSeries.from_poly(A * B, place, 10)
    rhs = ValSeries.from_poly(A, place, 10) * ValSeries.from_poly(B, place, 10)
    assert lhs.equal_to(rhs, 10 + lhs.val)
    assert lhs.val == place.ord(A * B)


def test_finite_place_reduction():
    place = Place.finite(poly_from_ints(5, [4, 1]))  # T - 1
    s = ValSeries.from_poly(poly_from_ints(5, [0, 0, 1]), place, 6)  # T^2 = (1 + pi)^2
    assert s.equal_to(ser(place, 0, [1, 2, 1], 6), 6)
    with pytest.raises(ValueError):
        Place.finite(poly_from_ints(5, [1, 0, 1]))


def test_padic_digits():
    y = PadicInt(5, Fraction(1, 3), 6)
    assert (y * 3) == PadicInt(5, 1)
    assert PadicInt(3, -1).digits(4) == [2, 2, 2, 2]
    with pytest.raises(PrecisionError):
        PadicInt(3, Fraction(1, 2), 3).digits(5)


def test_ratfn_series():
    x = RatFn(poly_from_ints(3, [1]), poly_from_ints(3, [1, 1]))  # 1/(T+1) = pi (1 - pi + ...)
    s = ValSeries.from_ratfn(x, INF3, 6)
    assert s.val == 1
    assert s.equal_to(ser(INF3, 1, [1, 2, 1, 2, 1, 2], 6), 7)


# ---------------------------------------------------------------------------
# Newton polygons


def test_newton_polygon_cases():
    p = newton_polygon([(0, 0), (1, 0)])
    assert [(s.slope, s.length) for s in p.segments] == [(0, 1)]
    p = newton_polygon([(0, 0), (1, None), (2, -2)])
    assert [(s.slope, s.length) for s in p.segments] == [(-1, 2)]


def test_newton_polygon_with_large_degree_coefficients():
    p = newton_polygon([(0, 0), (1, -1245), (2, -2470), (3, -3595), (4, -4220)])
    assert [s.slope for s in p.segments] == [-1245, -1225, -1125, -625]
    assert all(s.length == 1 for s in p.segments)


@given(st.lists(st.one_of(st.none(), st.integers(-30, 30)), min_size=2, max_size=12))
def test_newton_polygon_is_lower_convex_hull(vals):
    pts = list(enumerate(vals))
    if sum(v is not None for v in vals) < 1:
        return
    poly = newton_polygon(pts)
    slopes = [s.slope for s in poly.segments]
    assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)
    for s in poly.segments:
        for i, v in pts:
            if v is not None and s.start <= i <= s.end:
                assert v >= s.line(i)


def test_hensel_lift_cases():
    F2 = get_field(2)
    inf = Place.infinity(F2)
    one = ValSeries.one(inf, 20)
    seg = newton_polygon([(0, 0), (1, 0)]).segments[0]
    z = hensel_zero_lift([one, one], seg, 15)
    assert z.equal_to(one, 15)
    # 1 - z / pi has the zero pi
    inf3 = INF3
    coeffs = [ValSeries.one(inf3, 20), -ValSeries.uniformizer(inf3, 20).inverse()]
    seg = newton_polygon([(0, 0), (1, -1)]).segments[0]
    z = hensel_zero_lift(coeffs, seg, 15)
    assert z.equal_to(ValSeries.uniformizer(inf3, 20), 16)
    seg2 = newton_polygon([(0, 0), (1, None), (2, -2)]).segments[0]
    with pytest.raises(ValueError):
        hensel_zero_lift([one, ValSeries.zero(inf), one], seg2, 5)


def test_hensel_residual_meets_target():
    F5 = get_field(5)
    inf = Place.infinity(F5)
    P = lambda cs: ValSeries.from_poly(poly_from_ints(5, cs), inf, 40)
    coeffs = [P([1]), P([3, 2, 0, 1]), P([1, 0, 0, 0, 4])]  # valuations 0, -3, -4
    poly = newton_polygon([(k, c.valuation()) for k, c in enumerate(coeffs)])
    for seg in poly.segments:
        z = hensel_zero_lift(coeffs, seg, 20)
        acc = coeffs[2] * z * z + coeffs[1] * z + coeffs[0]
        vseg = seg.start_val + seg.start * int(-seg.slope)
        assert acc.valuation() - vseg >= 20


def test_one_unit_part_is_multiplicative(rng):
    for _ in range(20):
        a = poly_from_ints(3, list(rng.integers(0, 3, int(rng.integers(1, 6)))) + [1])
        b = poly_from_ints(3, list(rng.integers(0, 3, int(rng.integers(1, 6)))) + [1])
        lhs = one_unit_part(a * b, INF3, 15)
        assert lhs.equal_to(one_unit_part(a, INF3, 15) * one_unit_part(b, INF3, 15), 15)


def test_unit_pow_of_one_unit_part_matches_polynomial_power(rng):
    for _ in range(10):
        n = poly_from_ints(3, list(rng.integers(0, 3, 3)) + [1])
        j = int(rng.integers(1, 30))
        lhs = unit_pow_padic(one_unit_part(n, INF3, 15), j, 15)
        assert lhs.equal_to(one_unit_part(n**j, INF3, 15), 15)
