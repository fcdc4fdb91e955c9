"""Rational functions num/den over F_q in lowest terms with monic denominator."""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch, NotInvertible
from .field import FqElem
from .poly import FqPoly, poly_gcd


class RatFn:
    __slots__ = ("num", "den")

    def __init__(self, num: FqPoly, den: FqPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = FqPoly.one(num.field, num.var)
        num._check(den)
        if den.is_zero():
            raise NotInvertible("zero denominator")
        if not reduced:
            if num.is_zero():
                den = FqPoly.one(num.field, num.var)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            if not den.is_monic():
                inv = num.field.inv(den.lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, a: FqPoly) -> "RatFn":
        return cls(a, FqPoly.one(a.field, a.var), reduced=True)

    @classmethod
    def constant(cls, field, code, var="T") -> "RatFn":
        return cls.from_poly(FqPoly.constant(field, code, var))

    @property
    def field(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    def zero(self) -> "RatFn":
        return RatFn.constant(self.field, 0, self.var)

    def one(self) -> "RatFn":
        return RatFn.constant(self.field, 1, self.var)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> FqPoly:
        if not self.is_poly():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def degree(self) -> int:
        """deg num - deg den, i.e. minus the valuation at infinity."""
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.num.degree - self.den.degree

    def _lift(self, other) -> "RatFn | None":
        if isinstance(other, RatFn):
            if self.field != other.field or self.var != other.var:
                raise FieldMismatch("rational functions over different fields or variables")
            return other
        if isinstance(other, FqPoly):
            return RatFn.from_poly(other) if other.var == self.var else _mismatch()
        if isinstance(other, (int, np.integer)):
            return RatFn.constant(self.field, self.field.from_int(int(other)), self.var)
        if isinstance(other, FqElem):
            self.field.check(other.field)
            return RatFn.constant(self.field, other.code, self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.zero()
        # cross-cancel before multiplying to keep degrees small
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n = (self.num // g1) * (o.num // g2)
        d = (self.den // g2) * (o.den // g1)
        return RatFn(n, d, reduced=True) if d.is_monic() else RatFn(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise NotInvertible("inverse of zero rational function")
        return RatFn(self.den, self.num, reduced=True) if self.num.is_monic() else RatFn(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        return RatFn(self.num**e, self.den**e, reduced=True)

    def frobenius(self, k: int = 1) -> "RatFn":
        """Raise to the p^k-th power."""
        return RatFn(self.num.frobenius(k), self.den.frobenius(k), reduced=True)

    def derivative(self) -> "RatFn":
        n, d = self.num, self.den
        return RatFn(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x: int) -> int:
        """Evaluate at a field code; the denominator must not vanish there."""
        dv = self.den(int(x))
        if dv == 0:
            raise NotInvertible("pole at evaluation point")
        return self.field.div(self.num(int(x)), dv)

    def with_var(self, var: str) -> "RatFn":
        return RatFn(self.num.with_var(var), self.den.with_var(var), reduced=True)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _mismatch():
    raise FieldMismatch("variable mismatch")
