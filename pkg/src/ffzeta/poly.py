"""Dense univariate polynomials over F_q.

Coefficients are stored little-endian as a read-only int64 array of field
codes with no trailing zeros, so the zero polynomial is an empty array and has
degree -1.  Multiplication is Karatsuba over a schoolbook base case; over
F_{p^m} with m > 1 the coefficients are Kronecker-packed into one long F_p
polynomial first, which keeps the inner loops in numpy.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch, NotInvertible
from .field import FqElem, FqField, get_field

KARATSUBA_THRESHOLD = 512


def set_karatsuba_threshold(n: int) -> None:
    global KARATSUBA_THRESHOLD
    if n < 1:
        raise ValueError("threshold must be positive")
    KARATSUBA_THRESHOLD = int(n)


# ---------------------------------------------------------------------------
# raw coefficient kernels (arrays of codes)


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _base_limit(p: int) -> int:
    # keep convolution partial sums below 2^62
    return max(1, min(KARATSUBA_THRESHOLD, (1 << 62) // (p - 1) ** 2 if p > 2 else KARATSUBA_THRESHOLD))


def _add_shifted(acc: np.ndarray, x: np.ndarray, k: int) -> None:
    # entries past the end of acc are multiples of p and are dropped
    x = x[: len(acc) - k]
    acc[k : k + len(x)] += x


def mul_fp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two F_p coefficient arrays, reduced mod p (not trimmed)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    return _karatsuba(a, b, p, _base_limit(p))


def _karatsuba(a, b, p, limit):
    if len(a) < len(b):
        a, b = b, a
    nb = len(b)
    if nb <= limit:
        if nb == 1:
            return (a * b[0]) % p
        return np.convolve(a, b) % p
    na = len(a)
    out = np.zeros(na + nb - 1, dtype=np.int64)
    if na >= 2 * nb:
        # unbalanced: cut a into chunks of b's length
        for start in range(0, na, nb):
            part = _karatsuba(a[start : start + nb], b, p, limit)
            _add_shifted(out, part, start)
        return out % p
    h = (na + 1) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, p, limit)
    z2 = _karatsuba(a1, b1, p, limit) if len(b1) else np.zeros(0, dtype=np.int64)
    sa = a0.copy()
    sa[: len(a1)] += a1
    sb = b0.copy()
    sb[: len(b1)] += b1
    z1 = _karatsuba(sa % p, sb % p, p, limit)
    z1[: len(z0)] -= z0
    z1[: len(z2)] -= z2
    _add_shifted(out, z0, 0)
    _add_shifted(out, z1, h)
    _add_shifted(out, z2, 2 * h)
    return out % p


_REDUCERS: dict = {}


def _reducer(field: FqField) -> np.ndarray:
    # row s holds the digits of X^s mod the field modulus, s < 2m - 1
    R = _REDUCERS.get(field)
    if R is None:
        m, p = field.m, field.p
        R = np.zeros((2 * m - 1, m), dtype=np.int64)
        for s in range(2 * m - 1):
            R[s] = field.digits(field.pow(p, s)) if s else field.digits(1)
        _REDUCERS[field] = R
    return R


def mul_codes(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of coefficient arrays over any F_q (not trimmed)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    p, m = field.p, field.m
    if m == 1:
        return mul_fp(a, b, p)
    if len(a) == 1 or len(b) == 1:
        if len(a) == 1:
            a, b = b, a
        return field.mul(a, b[0])
    w = 2 * m - 1
    pa = np.zeros((len(a), w), dtype=np.int64)
    pa[:, :m] = field.digits(a)
    pb = np.zeros((len(b), w), dtype=np.int64)
    pb[:, :m] = field.digits(b)
    prod = mul_fp(pa.ravel(), pb.ravel(), p)
    n = len(a) + len(b) - 1
    full = np.zeros(n * w, dtype=np.int64)
    full[: len(prod)] = prod[: n * w]
    rows = full.reshape(n, w)
    return ((rows @ _reducer(field)) % p) @ field._pw


def add_codes(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = field.add(a[: len(b)], b)
    return out


def sub_codes(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    out[: len(b)] = field.sub(out[: len(b)], b)
    return out


def series_inverse_codes(field: FqField, f: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of 1/f as a power series; f[0] must be nonzero."""
    if len(f) == 0 or f[0] == 0:
        raise NotInvertible("series with zero constant term")
    g = np.array([field.inv(int(f[0]))], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = mul_codes(field, f[:k], g)[:k]
        corr = np.asarray(field.neg(fg), dtype=np.int64).copy()
        corr[0] = field.add(int(corr[0]), field.from_int(2))
        g = mul_codes(field, g, corr)[:k]
    out = np.zeros(n, dtype=np.int64)
    out[: len(g)] = g[:n]
    return out


def divmod_codes(field: FqField, a: np.ndarray, b: np.ndarray):
    """Quotient and remainder of trimmed arrays, b nonzero."""
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return np.zeros(0, dtype=np.int64), a.copy()
    nq = len(a) - db
    if nq > 64 and db > 32:
        rb = b[::-1]
        inv = series_inverse_codes(field, rb, nq)
        q = mul_codes(field, a[::-1][:nq], inv)[:nq][::-1].copy()
        r = sub_codes(field, a, mul_codes(field, q, b))[:db]
        return _trim(q), _trim(r)
    rem = a.copy()
    q = np.zeros(nq, dtype=np.int64)
    ilc = field.inv(int(b[-1]))
    p = field.p
    if field.m == 1:
        for i in range(nq - 1, -1, -1):
            c = rem[i + db] * ilc % p
            if c:
                q[i] = c
                rem[i : i + db + 1] = (rem[i : i + db + 1] - c * b) % p
    else:
        for i in range(nq - 1, -1, -1):
            c = field.mul(int(rem[i + db]), ilc)
            if c:
                q[i] = c
                rem[i : i + db + 1] = field.sub(rem[i : i + db + 1], field.mul(b, c))
    return q, _trim(rem[:db])


REM_BLOCK = 256


def rem_codes(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Remainder of a by a short b over a prime field, block by block.

    With R[k] = T^k mod b, each block of REM_BLOCK coefficients folds into the
    running remainder by two small matrix products.
    """
    db = len(b) - 1
    if field.m != 1 or db < 1 or db > 64 or len(a) < 4 * REM_BLOCK:
        return divmod_codes(field, a, b)[1]
    p = field.p
    B = REM_BLOCK
    R = np.zeros((B + db, db), dtype=np.int64)
    R[:db] = np.eye(db, dtype=np.int64)
    ilc = field.inv(int(b[-1]))
    tail = (-b[:db] * ilc) % p  # T^db = tail mod b
    for k in range(db, B + db):
        prev = R[k - 1]
        top = prev[-1]
        row = np.zeros(db, dtype=np.int64)
        row[1:] = prev[:-1]
        R[k] = (row + top * tail) % p
    acc = np.zeros(db, dtype=np.int64)
    nblocks = -(-len(a) // B)
    padded = np.zeros(nblocks * B, dtype=np.int64)
    padded[: len(a)] = a
    blocks = padded.reshape(nblocks, B)
    for blk in blocks[::-1]:
        acc = (acc @ R[B : B + db] + blk @ R[:B]) % p
    return _trim(acc)


# ---------------------------------------------------------------------------


class FqPoly:
    """Polynomial over an FqField in a named variable (default ``T``)."""

    __slots__ = ("field", "c", "var")

    def __init__(self, field: FqField, coeffs=(), var: str = "T"):
        arr = np.array(
            [int(x.code) if isinstance(x, FqElem) else int(x) for x in coeffs]
            if not isinstance(coeffs, np.ndarray)
            else coeffs,
            dtype=np.int64,
        )
        if field.m == 1:
            arr %= field.p
        elif arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError("coefficient codes out of range")
        arr = _trim(arr)
        arr.flags.writeable = False
        self.field = field
        self.c = arr
        self.var = var

    @classmethod
    def _raw(cls, field, arr, var):
        obj = cls.__new__(cls)
        arr = _trim(np.ascontiguousarray(arr, dtype=np.int64))
        arr.flags.writeable = False
        obj.field, obj.c, obj.var = field, arr, var
        return obj

    # constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, field, var="T"):
        return cls._raw(field, np.zeros(0, dtype=np.int64), var)

    @classmethod
    def one(cls, field, var="T"):
        return cls.constant(field, 1, var)

    @classmethod
    def constant(cls, field, code, var="T"):
        return cls(field, [code], var)

    @classmethod
    def gen(cls, field, var="T"):
        return cls(field, [0, 1], var)

    @classmethod
    def monomial(cls, field, k: int, code=1, var="T"):
        arr = np.zeros(k + 1, dtype=np.int64)
        arr[k] = int(code)
        return cls(field, arr, var)

    def new(self, arr) -> "FqPoly":
        return FqPoly._raw(self.field, arr, self.var)

    # basic properties -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __len__(self):
        return len(self.c)

    def coeff(self, k: int) -> int:
        return int(self.c[k]) if 0 <= k < len(self.c) else 0

    @property
    def lc(self) -> int:
        return int(self.c[-1]) if len(self.c) else 0

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def monic(self) -> "FqPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lc))

    def valuation(self) -> int:
        """Order of vanishing at var = 0; -1 for the zero polynomial."""
        nz = np.flatnonzero(self.c)
        return int(nz[0]) if nz.size else -1

    def with_var(self, var: str) -> "FqPoly":
        return FqPoly._raw(self.field, self.c, var)

    # arithmetic -----------------------------------------------------------------

    def _check(self, other: "FqPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.var != other.var:
            raise FieldMismatch(f"variables {self.var} vs {other.var}")

    def _scalar(self, s) -> int:
        if isinstance(s, FqElem):
            self.field.check(s.field)
            return s.code
        return self.field.from_int(int(s))

    def _lift(self, other):
        if isinstance(other, FqPoly):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer, FqElem)):
            return FqPoly.constant(self.field, self._scalar(other), self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.new(add_codes(self.field, self.c, o.c))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.new(sub_codes(self.field, self.c, o.c))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return self.new(self.field.neg(self.c))

    def scale(self, code) -> "FqPoly":
        if isinstance(code, FqElem):
            code = code.code
        return self.new(self.field.mul(self.c, int(code)))

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, FqElem)):
            return self.scale(self._scalar(other))
        if not isinstance(other, FqPoly):
            return NotImplemented
        self._check(other)
        return self.new(mul_codes(self.field, self.c, other.c))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        q, r = divmod_codes(self.field, self.c, o.c)
        return self.new(q), self.new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.c) == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self.new(rem_codes(self.field, self.c, o.c))

    def exact_div(self, other: "FqPoly") -> "FqPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divides(self, other: "FqPoly") -> bool:
        return (other % self).is_zero()

    def __pow__(self, e: int):
        return pow_charp(self, int(e))

    def __eq__(self, other):
        if isinstance(other, FqPoly):
            return self.field == other.field and self.var == other.var and np.array_equal(self.c, other.c)
        if isinstance(other, (int, np.integer)):
            return self == FqPoly.constant(self.field, self.field.from_int(int(other)), self.var)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.var, self.c.tobytes()))

    # transforms -----------------------------------------------------------------

    def shift(self, k: int) -> "FqPoly":
        """Multiply by var^k (k >= 0) or drop the k lowest terms (k < 0)."""
        if self.is_zero():
            return self
        if k >= 0:
            return self.new(np.concatenate([np.zeros(k, dtype=np.int64), self.c]))
        return self.new(self.c[-k:])

    def truncate(self, n: int) -> "FqPoly":
        return self.new(self.c[: max(n, 0)])

    def reverse(self, n: int | None = None) -> "FqPoly":
        """var^n * f(1/var) with n defaulting to the degree."""
        n = self.degree if n is None else n
        arr = np.zeros(n + 1, dtype=np.int64)
        arr[: len(self.c)] = self.c
        return self.new(arr[::-1].copy())

    def frobenius(self, k: int = 1) -> "FqPoly":
        """f^(p^k), computed by spreading exponents."""
        if self.is_zero() or k == 0:
            return self
        step = self.field.p**k
        arr = np.zeros((len(self.c) - 1) * step + 1, dtype=np.int64)
        arr[::step] = self.field.frob(self.c, k)
        return self.new(arr)

    def derivative(self) -> "FqPoly":
        if len(self.c) <= 1:
            return FqPoly.zero(self.field, self.var)
        ks = np.arange(1, len(self.c), dtype=np.int64) % self.field.p
        if self.field.m == 1:
            return self.new(self.c[1:] * ks % self.field.p)
        out = np.array([self.field.smul(int(k), int(x)) for k, x in zip(ks, self.c[1:])], dtype=np.int64)
        return self.new(out)

    def __call__(self, x):
        """Evaluate at a field code / FqElem, or compose with a polynomial."""
        if isinstance(x, FqPoly):
            self._check(x)
            acc = FqPoly.zero(self.field, self.var)
            for a in self.c[::-1]:
                acc = acc * x + FqPoly.constant(self.field, int(a), self.var)
            return acc
        code = x.code if isinstance(x, FqElem) else int(x)
        acc = 0
        f = self.field
        for a in self.c[::-1]:
            acc = f.add(f.mul(acc, code), int(a))
        return FqElem(f, acc) if isinstance(x, FqElem) else acc

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        f = self.field
        for a in self.c[::-1]:
            acc = f.add(f.mul(acc, xs), int(a))
        return acc

    # serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        d = self.field.to_json()
        d["var"] = self.var
        d["coeffs"] = self.field.digits(self.c).tolist() if len(self.c) else []
        return d

    @staticmethod
    def from_json(d: dict) -> "FqPoly":
        field = FqField.from_json(d)
        coeffs = d.get("coeffs", [])
        codes = [int(field.from_digits(np.array(c, dtype=np.int64))) if isinstance(c, list) else int(c) for c in coeffs]
        return FqPoly(field, codes, d.get("var", "T"))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = int(self.c[k])
            if not a:
                continue
            cs = repr(FqElem(self.field, a))
            if self.field.m > 1 and "+" in cs:
                cs = f"({cs})"
            mon = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mon:
                terms.append(cs)
            elif a == 1:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# exponentiation, gcd


def pow_charp(f: FqPoly, e: int) -> FqPoly:
    """f^e via the base-p digits of e; each p^i-th power is a Frobenius spread."""
    if e < 0:
        raise ValueError("negative exponent for a polynomial")
    one = FqPoly.one(f.field, f.var)
    if e == 0:
        return one
    if f.is_zero():
        return f
    p = f.field.p
    small = [one, f]
    out = one
    i = 0
    while e:
        e, d = divmod(e, p)
        if d:
            while len(small) <= d:
                small.append(small[-1] * f)
            out = out * small[d].frobenius(i)
        i += 1
    return out


def powmod(f: FqPoly, e: int, g: FqPoly) -> FqPoly:
    """f^e mod g by square-and-multiply."""
    if e < 0:
        raise ValueError("negative exponent")
    out = FqPoly.one(f.field, f.var) % g
    base = f % g
    while e:
        if e & 1:
            out = (out * base) % g
        e >>= 1
        if e:
            base = (base * base) % g
    return out


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    """Monic gcd (zero if both inputs are zero)."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: FqPoly, b: FqPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    a._check(b)
    field, var = a.field, a.var
    r0, r1 = a, b
    s0, s1 = FqPoly.one(field, var), FqPoly.zero(field, var)
    t0, t1 = FqPoly.zero(field, var), FqPoly.one(field, var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = field.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_from_ints(r_or_field, coeffs, var="T") -> FqPoly:
    field = r_or_field if isinstance(r_or_field, FqField) else get_field(r_or_field)
    return FqPoly(field, coeffs, var)


def enumerate_monic(field: FqField, d: int, var: str = "T"):
    """All monic polynomials of degree d, in code order of the low coefficients."""
    q = field.q
    for idx in range(q**d):
        arr = np.zeros(d + 1, dtype=np.int64)
        x = idx
        for k in range(d):
            x, arr[k] = divmod(x, q)
        arr[d] = 1
        yield FqPoly._raw(field, arr, var)
