"""Simple algebraic extensions k[u]/(f) over rational functions or local series."""

from __future__ import annotations

from . import genpoly
from .errors import FieldMismatch, NotInvertible
from .poly import FqPoly
from .ratfn import RatFn


class ExtField:
    """The ring base[u]/(f) for a monic separable f, with base scalars given by ``zero``/``one``.

    With RatFn scalars and irreducible f this is a field; irreducibility is
    the caller's claim and a failed inversion raises NotInvertible.
    """

    def __init__(self, modulus, zero, one, var: str = "u", check_separable: bool = True):
        f = genpoly.trim(list(modulus))
        if len(f) < 2:
            raise ValueError("modulus must have degree >= 1")
        lc = f[-1]
        f = [c / lc for c in f]
        self.modulus = tuple(f)
        self.zero, self.one, self.var = zero, one, var
        self.degree = len(f) - 1
        if check_separable and genpoly.degree(genpoly.gcd(f, genpoly.derivative(f), zero)) != 0:
            raise ValueError("modulus is not separable")

    @classmethod
    def over_ratfn(cls, coeffs, var: str = "u") -> "ExtField":
        """Extension of F_r(theta) from RatFn/FqPoly coefficients, lowest power first."""
        cs = [c if isinstance(c, RatFn) else RatFn.from_poly(c) for c in coeffs]
        fld, v = cs[0].field, cs[0].var
        return cls(cs, RatFn.constant(fld, 0, v), RatFn.constant(fld, 1, v), var)

    def __eq__(self, other):
        return isinstance(other, ExtField) and self.modulus == other.modulus and self.var == other.var

    def __hash__(self):
        return hash((self.modulus, self.var))

    def reduce(self, coeffs) -> list:
        _, r = genpoly.divmod_(genpoly.trim(list(coeffs)), list(self.modulus), self.zero)
        return r

    def element(self, coeffs) -> "ExtElt":
        return ExtElt(self, self.reduce(coeffs))

    def scalar(self, c) -> "ExtElt":
        return ExtElt(self, genpoly.trim([self._scalar(c)]))

    def _scalar(self, c):
        if isinstance(c, int):
            return self.one * c
        if isinstance(c, FqPoly) and isinstance(self.one, RatFn):
            return RatFn.from_poly(c)
        return c

    def gen(self) -> "ExtElt":
        return self.element([self.zero, self.one])

    def evaluate(self, coeffs, x: "ExtElt") -> "ExtElt":
        acc = self.scalar(0)
        for c in reversed(list(coeffs)):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"ExtField({self.var}: {list(self.modulus)!r})"


class ExtElt:
    __slots__ = ("ext", "c")

    def __init__(self, ext: ExtField, coeffs):
        self.ext = ext
        self.c = tuple(genpoly.trim(list(coeffs)))

    def _lift(self, other) -> "ExtElt | None":
        if isinstance(other, ExtElt):
            if other.ext != self.ext:
                raise FieldMismatch("elements of different extensions")
            return other
        try:
            return self.ext.scalar(other)
        except (TypeError, AttributeError):
            return None

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, k: int):
        return self.c[k] if k < len(self.c) else self.ext.zero

    def coeffs(self) -> list:
        return [self.coeff(k) for k in range(self.ext.degree)]

    def is_scalar(self) -> bool:
        return len(self.c) <= 1

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ExtElt(self.ext, genpoly.add(list(self.c), list(o.c)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElt(self.ext, genpoly.neg(list(self.c)))

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
        return self.ext.element(genpoly.mul(list(self.c), list(o.c), self.ext.zero))

    __rmul__ = __mul__

    def inverse(self) -> "ExtElt":
        if self.is_zero():
            raise NotInvertible("inverse of zero")
        ext = self.ext
        g, s, _ = genpoly.xgcd(list(self.c), list(ext.modulus), ext.zero, ext.one)
        if len(g) != 1:
            raise NotInvertible("element shares a factor with the modulus")
        return ext.element(s)

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
        out = self.ext.scalar(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(self.c)

    def to_json(self) -> dict:
        return {"var": self.ext.var, "coeffs": [c.to_json() for c in self.c]}

    def __repr__(self):
        if not self.c:
            return "0"
        v = self.ext.var
        terms = []
        for k, c in enumerate(self.c):
            if genpoly.is_zero(c):
                continue
            mon = "" if k == 0 else (v if k == 1 else f"{v}^{k}")
            terms.append(f"({c!r})" + (f"*{mon}" if mon else ""))
        return " + ".join(terms)
