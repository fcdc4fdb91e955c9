"""Coefficient fields of the two quadratic CM examples."""

import numpy as np
import pytest

from ffzeta.cm import cm_hecke_coeffs, lambda_to_T
from ffzeta.field import get_field
from ffzeta.poly import FqPoly, enumerate_monic


def test_geometric_trivial_at_zero():
    res = cm_hecke_coeffs("geometric", 0, 6)
    assert res.is_trivial()
    assert res.coeffs[0] == FqPoly.one(get_field(3), "lambda")
    assert res.classification == "K"


def test_geometric_outside_K_at_minus_one():
    res = cm_hecke_coeffs("geometric", -1, 6)
    assert res.classification == "K1"
    # degree 1: g = lambda + c, g * g^sigma = c^2 - lambda^2; sum over c of g*N(g)
    assert res.coeffs[1] == FqPoly(get_field(3), [0, 2], "lambda")
    assert not res.in_K[1]


def test_geometric_brute_force_degree_two():
    """Direct sum over monic g of degree 2 in lambda, j = 2."""
    F = get_field(3)
    acc = FqPoly.zero(F, "lambda")
    for g in enumerate_monic(F, 2, "lambda"):
        c = [int(x) for x in g.c]
        gs = FqPoly(F, [c[k] if k % 2 == 0 else (-c[k]) % 3 for k in range(len(c))], "lambda")
        acc = acc + g * (g * gs) ** 2
    assert cm_hecke_coeffs("geometric", -2, 2).coeffs[2] == acc


@pytest.mark.parametrize("r", [3, 4, 5])
@pytest.mark.parametrize("y", [0, -1, -2, -3])
def test_constant_field_in_K(r, y):
    res = cm_hecke_coeffs("constant-field", y, 4, r=r)
    assert res.classification == "K"
    assert set(res.coeffs) == {0, 2, 4}


@pytest.mark.parametrize("r,y,want", [(2, -2, "T^2 + T"), (3, -4, "2*T^3 + T")])
def test_constant_field_nonvanishing_cases(r, y, want):
    # at r = 3 and y in {-1, -2, -3} every positive-degree coefficient through 6 vanishes
    res = cm_hecke_coeffs("constant-field", y, 2, r=r)
    # coefficients live in F_(r^2)[T]
    assert repr(res.coeffs[2]) == want
    assert res.in_K[2]


def test_lambda_to_T():
    F = get_field(3)
    c = FqPoly(F, [1, 0, 1, 0, 2], "lambda")  # 1 + lambda^2 + 2 lambda^4 = 1 - T + 2 T^2
    assert lambda_to_T(c) == FqPoly(F, [1, 2, 2], "T")
    with pytest.raises(ValueError):
        lambda_to_T(FqPoly(F, [0, 1], "lambda"))


def test_positive_y_rejected():
    with pytest.raises(NotImplementedError):
        cm_hecke_coeffs("geometric", 1, 3)
    with pytest.raises(ValueError):
        cm_hecke_coeffs("geometric", 0, 3, r=5)
    with pytest.raises(ValueError):
        cm_hecke_coeffs("drinfeld", 0, 3)


def test_json_shape():
    js = cm_hecke_coeffs("geometric", -1, 3).to_json()
    assert js["y"] == -1 and js["classification"] == "K1"
    assert set(js["coefficients"]) == {"0", "1", "2", "3"}
    assert np.all([isinstance(v["in_K"], bool) for v in js["coefficients"].values()])
