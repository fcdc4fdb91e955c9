"""Truncated Laurent series at a place of F_q(T) and p-adic exponents.

A place is either infinity, with uniformizer 1/T and residue field F_q, or a
monic irreducible v, with residue field A/v.  At a finite place T embeds as the
series t(pi) solving v(t) = pi, so reduction mod v is the constant term and
polynomials map to series by substitution.  Residue fields of degree > 1 are
built as F_p[X]/(v), which needs q prime.

``ValSeries`` carries a leading exponent ``val`` and ``prec`` known
coefficients, i.e. it is known modulo pi^(val + prec).  A zero series stores
no coefficients and uses ``val`` for its absolute precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import FieldMismatch, NotInvertible, PrecisionError
from .field import FqElem, FqField, get_field
from .poly import FqPoly, mul_codes, series_inverse_codes

EXACT = 1 << 60


@dataclass(frozen=True)
class Place:
    base: FqField
    v: FqPoly | None = None

    @classmethod
    def infinity(cls, base: FqField) -> "Place":
        return cls(base, None)

    @classmethod
    def finite(cls, v: FqPoly) -> "Place":
        from .factor import irreducible_test

        if not v.is_monic() or not irreducible_test(v):
            raise ValueError(f"{v!r} is not monic irreducible")
        if v.degree > 1 and v.field.m != 1:
            raise NotImplementedError("places of degree > 1 need a prime constant field")
        return cls(v.field, v)

    @property
    def is_infinite(self) -> bool:
        return self.v is None

    @property
    def degree(self) -> int:
        return 1 if self.v is None else self.v.degree

    @property
    def residue(self) -> FqField:
        if self.v is None or self.v.degree == 1:
            return self.base
        return get_field(self.base.p, self.v.degree, tuple(int(c) for c in self.v.c))

    def reduce(self, a: FqPoly) -> int:
        """Image of a polynomial in the residue field A/v, as a code."""
        if self.v is None:
            raise ValueError("no reduction map at infinity")
        rem = a % self.v
        if self.v.degree == 1:
            return rem.coeff(0)
        res = self.residue
        return int(res.from_digits(np.pad(rem.c, (0, self.v.degree - len(rem.c)))))

    def ord(self, a: FqPoly) -> int:
        """Valuation of a nonzero polynomial at this place."""
        if a.is_zero():
            raise ValueError("valuation of zero")
        if self.v is None:
            return -a.degree
        e = 0
        while True:
            q, r = divmod(a, self.v)
            if not r.is_zero():
                return e
            a, e = q, e + 1

    def to_json(self):
        return "inf" if self.v is None else {"v": self.v.to_json()}

    def __repr__(self):
        return "Place(inf)" if self.v is None else f"Place({self.v!r})"

    def __hash__(self):
        return hash((self.base, self.v))


class ValSeries:
    __slots__ = ("place", "val", "c")

    def __init__(self, place: Place, val: int, coeffs, prec: int | None = None):
        arr = np.asarray(coeffs, dtype=np.int64)
        if prec is not None:
            arr = np.concatenate([arr[:prec], np.zeros(max(0, prec - len(arr)), dtype=np.int64)])
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            self.place, self.val, self.c = place, int(val) + len(arr), arr[:0]
            return
        s = int(nz[0])
        self.place, self.val, self.c = place, int(val) + s, arr[s:].copy()

    @classmethod
    def _raw(cls, place, val, c):
        obj = cls.__new__(cls)
        obj.place, obj.val, obj.c = place, val, c
        return obj

    # constructors ---------------------------------------------------------------

    @classmethod
    def zero(cls, place: Place, abs_prec: int = EXACT) -> "ValSeries":
        return cls._raw(place, abs_prec, np.zeros(0, dtype=np.int64))

    @classmethod
    def constant(cls, place: Place, code: int, prec: int) -> "ValSeries":
        return cls(place, 0, [code], prec)

    @classmethod
    def one(cls, place: Place, prec: int) -> "ValSeries":
        return cls.constant(place, 1, prec)

    @classmethod
    def uniformizer(cls, place: Place, prec: int) -> "ValSeries":
        return cls(place, 1, [1], prec)

    @classmethod
    def from_poly(cls, a: FqPoly, place: Place, prec: int) -> "ValSeries":
        """Expansion of a polynomial with ``prec`` known coefficients."""
        if a.is_zero():
            return cls.zero(place)
        if place.is_infinite:
            place.base.check(a.field)
            return cls(place, -a.degree, a.c[::-1], prec)
        e = place.ord(a)
        b = a // place.v**e if e else a
        t = _embedding(place, prec)
        res = place.residue
        acc = np.zeros(prec, dtype=np.int64)
        for k in range(len(b.c) - 1, -1, -1):
            acc = mul_codes(res, acc, t)[:prec]
            # constants of the prime field keep their code in A/v
            acc[0] = res.add(int(acc[0]), int(b.c[k]))
        return cls(place, e, acc, prec)

    @classmethod
    def from_ratfn(cls, f, place: Place, prec: int) -> "ValSeries":
        if f.is_zero():
            return cls.zero(place)
        return cls.from_poly(f.num, place, prec) / cls.from_poly(f.den, place, prec)

    # precision ------------------------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self.c)

    @property
    def abs_prec(self) -> int:
        return self.val + len(self.c)

    @property
    def residue(self) -> FqField:
        return self.place.residue

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def valuation(self) -> int:
        if self.is_zero():
            return self.val
        return self.val

    def lead(self) -> int:
        if self.is_zero():
            raise ValueError("zero series has no leading coefficient")
        return int(self.c[0])

    def with_prec(self, prec: int) -> "ValSeries":
        """Truncate (or zero-pad, for exact inputs) to relative precision prec."""
        if self.is_zero():
            return self
        return ValSeries(self.place, self.val, self.c, prec)

    def with_abs_prec(self, n: int) -> "ValSeries":
        if self.is_zero():
            return ValSeries.zero(self.place, min(self.val, n))
        if n <= self.val:
            return ValSeries.zero(self.place, n)
        return ValSeries._raw(self.place, self.val, self.c[: n - self.val])

    def coeff(self, k: int) -> int:
        """Coefficient of pi^k; raises if it lies beyond the known precision."""
        if k >= self.abs_prec:
            raise PrecisionError(f"coefficient {k} beyond precision {self.abs_prec}")
        if k < self.val:
            return 0
        return int(self.c[k - self.val])

    def coeffs_from(self, start: int, stop: int) -> np.ndarray:
        out = np.zeros(max(0, stop - start), dtype=np.int64)
        for k in range(start, stop):
            out[k - start] = self.coeff(k)
        return out

    # arithmetic -------------------------------------------------------------------

    def _check(self, other: "ValSeries"):
        if self.place != other.place:
            raise FieldMismatch(f"series at {self.place!r} vs {other.place!r}")

    def _coerce(self, other):
        if isinstance(other, ValSeries):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            code = self.residue.from_int(int(other))
        elif isinstance(other, FqElem):
            code = other.code
        else:
            return None
        if code == 0:
            return ValSeries.zero(self.place)
        # enough digits that the constant never limits the result
        known = self.abs_prec if self.abs_prec < EXACT // 2 else 0
        return ValSeries.constant(self.place, code, max(self.prec, known, 1))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ap = min(self.abs_prec, o.abs_prec)
        if self.is_zero():
            return o.with_abs_prec(ap)
        if o.is_zero():
            return self.with_abs_prec(ap)
        lo = min(self.val, o.val)
        n = ap - lo
        if n <= 0:
            return ValSeries.zero(self.place, ap)
        out = np.zeros(n, dtype=np.int64)
        a = self.c[: max(0, ap - self.val)]
        b = o.c[: max(0, ap - o.val)]
        out[self.val - lo : self.val - lo + len(a)] = a
        seg = out[o.val - lo : o.val - lo + len(b)]
        out[o.val - lo : o.val - lo + len(b)] = self.residue.add(seg, b)
        return ValSeries(self.place, lo, out)

    __radd__ = __add__

    def __neg__(self):
        return ValSeries._raw(self.place, self.val, self.residue.neg(self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            if self.is_zero() and o.is_zero():
                return ValSeries.zero(self.place, min(EXACT, self.val + o.val))
            z, nz = (self, o) if self.is_zero() else (o, self)
            return ValSeries.zero(self.place, min(EXACT, z.val + nz.val))
        n = min(self.prec, o.prec)
        c = mul_codes(self.residue, self.c[:n], o.c[:n])[:n]
        return ValSeries._raw(self.place, self.val + o.val, c)

    __rmul__ = __mul__

    def scale(self, code: int) -> "ValSeries":
        if code == 0:
            return ValSeries.zero(self.place, self.abs_prec)
        return ValSeries._raw(self.place, self.val, self.residue.mul(self.c, int(code)))

    def shift(self, k: int) -> "ValSeries":
        """Multiply by pi^k."""
        return ValSeries._raw(self.place, self.val + k, self.c)

    def inverse(self) -> "ValSeries":
        if self.is_zero():
            raise NotInvertible("inverse of a series that is zero to its precision")
        c = series_inverse_codes(self.residue, self.c, self.prec)
        return ValSeries._raw(self.place, -self.val, c)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        out = ValSeries.one(self.place, self.prec if not self.is_zero() else 1)
        if e == 0:
            return out
        base = self
        first = True
        while e:
            if e & 1:
                out = base if first else out * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return out

    def frobenius(self, k: int = 1) -> "ValSeries":
        """Raise to the p^k-th power by spreading exponents."""
        if k == 0:
            return self
        step = self.residue.p**k
        if self.is_zero():
            return ValSeries.zero(self.place, min(EXACT, self.val * step))
        c = np.zeros((len(self.c) - 1) * step + 1 + (step - 1), dtype=np.int64)
        c[::step] = self.residue.frob(self.c, k)
        return ValSeries._raw(self.place, self.val * step, c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self - o
        return d.is_zero()

    def equal_to(self, other: "ValSeries", n: int) -> bool:
        """Agreement modulo pi^n; raises when either side is known to less."""
        if min(self.abs_prec, other.abs_prec) < n:
            raise PrecisionError("operands not known to the requested precision")
        return (self - other).valuation() >= n

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "place": self.place.to_json(),
            "val": self.val,
            "prec": self.prec,
            "coeffs": self.residue.digits(self.c).tolist() if len(self.c) else [],
        }

    def __repr__(self):
        if self.is_zero():
            return f"O(pi^{self.val})"
        terms = []
        for i, a in enumerate(self.c[:8]):
            if a:
                terms.append(f"{FqElem(self.residue, int(a))!r}*pi^{self.val + i}")
        return " + ".join(terms) + f" + O(pi^{self.abs_prec})"


@lru_cache(maxsize=64)
def _embedding_cached(place: Place, prec: int) -> np.ndarray:
    res = place.residue
    v = place.v
    if v.degree == 1:
        t = np.zeros(max(prec, 2), dtype=np.int64)
        t[0] = res.neg(int(v.c[0]))
        t[1] = 1
        return t[:prec] if prec >= 2 else t[:1]
    # Newton iteration for v(t) = pi starting from the class of T
    alpha = res.p  # code of X
    t = np.zeros(prec, dtype=np.int64)
    t[0] = alpha
    dv = v.derivative()
    n = 1
    while n < prec:
        n = min(2 * n, prec)
        vt = _horner_codes(res, v, t[:n], n)
        vt[1] = res.sub(int(vt[1]), 1)
        dvt = _horner_codes(res, dv, t[:n], n)
        corr = mul_codes(res, vt, series_inverse_codes(res, dvt, n))[:n]
        t[:n] = res.sub(t[:n], corr)
    return t


def _horner_codes(res: FqField, a: FqPoly, t: np.ndarray, n: int) -> np.ndarray:
    acc = np.zeros(n, dtype=np.int64)
    for k in range(len(a.c) - 1, -1, -1):
        acc = mul_codes(res, acc, t)[:n]
        if len(acc) < n:
            acc = np.pad(acc, (0, n - len(acc)))
        acc[0] = res.add(int(acc[0]), int(a.c[k]))
    return acc


def _embedding(place: Place, prec: int) -> np.ndarray:
    t = _embedding_cached(place, max(prec, 1))
    out = np.zeros(prec, dtype=np.int64)
    out[: min(prec, len(t))] = t[:prec]
    return out


# ---------------------------------------------------------------------------
# p-adic integers as exponents


class PadicInt:
    """An element of Z_p known modulo p^M, or an exact integer (M = None)."""

    __slots__ = ("p", "value", "M")

    def __init__(self, p: int, value, M: int | None = None):
        self.p = p
        self.M = M
        if isinstance(value, Fraction):
            if M is None:
                if value.denominator != 1:
                    raise ValueError("exact p-adic integers must be integers")
                value = int(value)
            else:
                if value.denominator % p == 0:
                    raise ValueError("not a p-adic integer")
                value = value.numerator * pow(value.denominator, -1, p**M)
        self.value = int(value) if M is None else int(value) % p**M

    @classmethod
    def from_digits(cls, p: int, digits) -> "PadicInt":
        return cls(p, sum(int(d) * p**i for i, d in enumerate(digits)), len(digits))

    @property
    def is_exact(self) -> bool:
        return self.M is None

    def digits(self, n: int) -> list[int]:
        """First n base-p digits."""
        if self.M is not None and n > self.M:
            raise PrecisionError(f"only {self.M} p-adic digits known, {n} requested")
        x = self.value % self.p**n
        out = []
        for _ in range(n):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def residue_mod(self, n: int) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits(n)))

    def __neg__(self):
        return PadicInt(self.p, -self.value, self.M)

    def __add__(self, other):
        o = other if isinstance(other, PadicInt) else PadicInt(self.p, int(other))
        return PadicInt(self.p, self.value + o.value, _minM(self.M, o.M))

    def __mul__(self, other):
        o = other if isinstance(other, PadicInt) else PadicInt(self.p, int(other))
        return PadicInt(self.p, self.value * o.value, _minM(self.M, o.M))

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        o = other if isinstance(other, PadicInt) else PadicInt(self.p, int(other))
        M = _minM(self.M, o.M)
        if M is None:
            return self.value == o.value
        return (self.value - o.value) % self.p**M == 0

    __hash__ = None

    def __repr__(self):
        return f"{self.value}" if self.M is None else f"{self.value} + O({self.p}^{self.M})"


def _minM(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def digits_needed(p: int, prec: int) -> int:
    """Number of p-adic exponent digits that matter for a 1-unit to relative precision prec."""
    n = 0
    while p**n < prec:
        n += 1
    return n


def one_unit_part(a: FqPoly, place: Place, prec: int, pi: ValSeries | None = None) -> ValSeries:
    """<a> = a * pi^deg(a) / sgn(a) at infinity, a 1-unit."""
    if not place.is_infinite:
        raise ValueError("one-unit part is taken at infinity")
    s = ValSeries.from_poly(a, place, prec)
    if pi is None:
        u = s.shift(a.degree)
    else:
        u = s * pi ** a.degree
    lead = u.lead()
    if u.val != 0:
        raise PrecisionError("uniformizer must have valuation 1")
    return u.scale(u.residue.inv(lead))


def unit_pow_padic(u: ValSeries, y, prec: int) -> ValSeries:
    """u^y for a 1-unit u and y in Z_p, to relative precision prec.

    Uses u^y = prod_i (u^(p^i))^(y_i) over the base-p digits of y; only digits
    with p^i < prec contribute because u^(p^i) = 1 + O(pi^(p^i)).
    """
    if u.is_zero() or u.val != 0 or u.lead() != 1:
        raise ValueError("argument is not a 1-unit")
    if u.prec < prec:
        raise PrecisionError(f"1-unit known to {u.prec}, {prec} requested")
    p = u.residue.p
    u = u.with_prec(prec)
    if isinstance(y, (int, np.integer)):
        y = PadicInt(p, int(y))
    if y.p != p:
        raise ValueError("exponent lives in the wrong p-adic ring")
    n = digits_needed(p, prec)
    if y.M is not None and y.M < n:
        raise PrecisionError(f"exponent known to {y.M} digits, {n} needed for precision {prec}")
    out = ValSeries.one(u.place, prec)
    base = u
    for d in y.digits(n):
        if d:
            out = out * base**d
        base = base.frobenius(1).with_prec(prec)
    return out.with_prec(prec)
