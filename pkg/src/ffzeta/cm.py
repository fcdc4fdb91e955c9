"""Dirichlet coefficients of two quadratic CM Hecke L-series at exact y = -j.

The series is sum over monic g of g * N(g)^(-s) with N(g) = g g^sigma in A.
At s = (x, -j) the x^(-d) coefficient is T^(-dj) sum_{deg N(g) = d} g N(g)^j,
and T^(-dj) lies in K, so membership in K is decided by the polynomial
c_d = sum g N(g)^j.

* constant field: g runs over monic polynomials of F_(r^2)[T] and sigma is
  Frobenius on constants; c_d lies in K iff every coefficient is fixed by
  c -> c^r.
* geometric (r = 3): A_1 = F_3[lambda] with lambda^2 = -T and
  sigma(lambda) = -lambda; g runs over monic polynomials in lambda, and c_d
  lies in F_3[T] iff only even powers of lambda occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .field import field_for, get_field
from .poly import FqPoly, enumerate_monic, pow_charp


@dataclass
class CMCoefficients:
    example: str
    r: int
    j: int
    var: str
    coeffs: dict = field(default_factory=dict)  # d -> FqPoly in var
    in_K: dict = field(default_factory=dict)

    @property
    def classification(self) -> str:
        return "K" if all(self.in_K.values()) else "K1"

    def is_trivial(self) -> bool:
        """L = 1: every coefficient of positive degree vanishes."""
        return all(c.is_zero() for d, c in self.coeffs.items() if d > 0)

    def to_json(self) -> dict:
        return {
            "example": self.example,
            "r": self.r,
            "y": -self.j,
            "classification": self.classification,
            "coefficients": {str(d): {"poly": repr(c), "in_K": self.in_K[d]} for d, c in self.coeffs.items()},
        }


def _exact_j(y) -> int:
    y = int(y)
    if y > 0:
        raise NotImplementedError("only exact y <= 0 are supported")
    return -y


def constant_field_coeffs(r: int, y: int, d_max: int) -> CMCoefficients:
    """Coefficients c_d for even d <= d_max over A_1 = F_(r^2)[T]."""
    j = _exact_j(y)
    base = field_for(r)
    p, m = base.p, base.m
    big = get_field(p, 2 * m)
    out = CMCoefficients("constant-field", r, j, "T")
    sub_r = _subfield_mask(big, r)
    for e in range(0, d_max // 2 + 1):
        acc = FqPoly.zero(big)
        for g in enumerate_monic(big, e):
            gs = g.new(big.frob(g.c, m)) if len(g.c) else g
            acc = acc + g * pow_charp(g * gs, j)
        d = 2 * e
        out.coeffs[d] = acc
        out.in_K[d] = bool(np.all(sub_r[acc.c])) if len(acc.c) else True
    return out


def _subfield_mask(big, r: int) -> np.ndarray:
    elems = big.elements()
    return big.pow(elems, r) == elems


def geometric_coeffs(y: int, d_max: int) -> CMCoefficients:
    """Coefficients c_d, d <= d_max, for lambda^2 = -T over F_3, as polynomials in lambda."""
    j = _exact_j(y)
    F = get_field(3)
    out = CMCoefficients("geometric", 3, j, "lambda")
    for d in range(0, d_max + 1):
        acc = FqPoly.zero(F, "lambda")
        for g in enumerate_monic(F, d, "lambda"):
            # sigma: lambda -> -lambda
            signs = np.array([1 if k % 2 == 0 else -1 for k in range(len(g.c))], dtype=np.int64)
            gs = g.new(g.c * signs % 3)
            acc = acc + g * pow_charp(g * gs, j)
        out.coeffs[d] = acc
        out.in_K[d] = not np.any(acc.c[1::2])
    return out


def cm_hecke_coeffs(example: str, y: int, d_max: int, r: int = 3) -> CMCoefficients:
    if example == "constant-field":
        return constant_field_coeffs(r, y, d_max)
    if example == "geometric":
        if r != 3:
            raise ValueError("the geometric example is defined over F_3")
        return geometric_coeffs(y, d_max)
    raise ValueError(f"unsupported example {example!r}")


def lambda_to_T(c: FqPoly) -> FqPoly:
    """Rewrite an even polynomial in lambda as a polynomial in T = -lambda^2."""
    if np.any(c.c[1::2]):
        raise ValueError("odd powers of lambda do not lie in F_3[T]")
    ev = c.c[::2].copy()
    signs = np.array([1 if k % 2 == 0 else -1 for k in range(len(ev))], dtype=np.int64)
    return FqPoly(c.field, ev * signs % 3, "T")
