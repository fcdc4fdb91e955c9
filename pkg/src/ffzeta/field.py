"""Finite fields F_q with q = p^m.

Elements are integer codes in [0, q).  A code packs the coordinates of the
element in the basis 1, X, ..., X^(m-1) of F_p[X]/(modulus) as base-p digits,
so code 0 is zero, code 1 is one, and for m = 1 the code is the residue itself.
Multiplication goes through discrete log / antilog tables built once per
field, which is why q is capped by ``WORD_BUDGET``.

All arithmetic methods accept Python ints or numpy integer arrays and
broadcast like numpy.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import FieldMismatch, NotInvertible

WORD_BUDGET = 1 << 22


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m, raising ValueError when q is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, m = fs[0], 0
    while q > 1:
        q //= p
        m += 1
    return p, m


class FqField:
    """The field F_{p^m} realised as F_p[X]/(modulus)."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        q = p**m
        if q > WORD_BUDGET:
            raise ValueError(f"q = {q} exceeds the table budget {WORD_BUDGET}")
        self.p, self.m, self.q = p, m, q
        if modulus is None:
            modulus = _default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self.modulus = modulus
        if m > 1 and not _modulus_irreducible(p, modulus):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self._pw = p ** np.arange(m, dtype=np.int64)
        self._build_tables()

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"FqField({self.p})"
        return f"FqField({self.p}, {self.m}, modulus={list(self.modulus)})"

    def check(self, other: "FqField") -> None:
        if self != other:
            raise FieldMismatch(f"{self!r} vs {other!r}")

    def __call__(self, code) -> "FqElem":
        return FqElem(self, code)

    def from_int(self, n: int) -> int:
        """Code of the prime-field image of the integer n."""
        return int(n) % self.p

    def to_json(self) -> dict:
        d = {"p": self.p, "m": self.m}
        if self.m > 1:
            d["modulus"] = list(self.modulus)
        return d

    @staticmethod
    def from_json(d: dict) -> "FqField":
        return get_field(d["p"], d.get("m", 1), tuple(d["modulus"]) if "modulus" in d else None)

    # tables -----------------------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da = [(a // p**i) % p for i in range(m)]
        db = [(b // p**i) % p for i in range(m)]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for i in range(m + 1):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return sum(prod[i] * p**i for i in range(m))

    def _slow_pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return out

    def _mul_matrix(self, c: int) -> np.ndarray:
        # row i holds the digits of c * X^i, so digits(x) @ M = digits(c * x)
        rows = [self._slow_mul(c, self.p**i) for i in range(self.m)]
        return np.array([[(r // self.p**k) % self.p for k in range(self.m)] for r in rows], dtype=np.int64)

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        exps = [order // ell for ell in prime_factors(order)] if order > 1 else []
        g = 1 if q == 2 else next(
            c for c in range(2, q) if all(self._slow_pow(c, e) != 1 for e in exps)
        )
        self.generator = g
        block = isqrt(max(order, 1)) + 1
        first = np.empty(block, dtype=np.int64)
        x = 1
        for k in range(block):
            first[k] = x
            x = self._slow_mul(x, g)
        step = self._mul_matrix(x)
        expt = np.empty(order + block, dtype=np.int64)
        cur = first
        for start in range(0, order, block):
            expt[start : start + block] = cur
            dig = (cur[:, None] // self._pw) % p
            cur = ((dig @ step) % p) @ self._pw
        expt = expt[:order]
        self._exp = np.concatenate([expt, expt])
        self._log = np.zeros(q, dtype=np.int64)
        self._log[expt] = np.arange(order, dtype=np.int64)
        if len(set(expt.tolist())) != order:
            raise AssertionError("generator search produced a non-primitive element")
        self._frob = self.pow(np.arange(q, dtype=np.int64), p)

    # digits -----------------------------------------------------------------

    def digits(self, a) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64)[..., None] // self._pw) % self.p

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._pw

    # arithmetic ---------------------------------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return _like(a, b, self.from_digits(self.digits(a) + self.digits(b)))

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return _like(a, b, self.from_digits(self.digits(a) - self.digits(b)))

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return _like(a, a, self.from_digits(-self.digits(a)))

    def smul(self, n: int, a):
        """Integer multiple n*a (n taken mod p)."""
        n %= self.p
        if self.m == 1:
            return (n * a) % self.p
        if n == 0:
            return a * 0
        return _like(a, a, self.from_digits(n * self.digits(a)))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            if a % self.q == 0:
                raise NotInvertible("inverse of zero in " + repr(self))
            return int(self._exp[(-self._log[a % self.q]) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise NotInvertible("inverse of zero in " + repr(self))
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if isinstance(a, (int, np.integer)):
            a = int(a) % self.q if self.m == 1 else int(a)
            if a == 0:
                if e < 0:
                    raise NotInvertible("zero to a negative power")
                return 1 if e == 0 else 0
            return int(self._exp[(self._log[a] * e) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise NotInvertible("zero to a negative power")
        out = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def frob(self, a, k: int = 1):
        """Apply x -> x^(p^k)."""
        k %= self.m
        if k == 0:
            return a
        if isinstance(a, (int, np.integer)):
            for _ in range(k):
                a = int(self._frob[a])
            return a
        a = np.asarray(a, dtype=np.int64)
        for _ in range(k):
            a = self._frob[a]
        return a

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.size else np.int64(0)
        if axis is None:
            return self.from_digits(self.digits(a.ravel()).sum(axis=0))
        return self.from_digits(self.digits(a).sum(axis=axis))

    def dot(self, a, b):
        if self.m == 1:
            return int(np.dot(a, b) % self.p)
        return int(self.sum(self.mul(a, b)))

    def is_square(self, a) -> bool:
        a = int(a)
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a) -> int:
        a = int(a)
        if a == 0:
            return 0
        if self.p == 2:
            return self.frob(a, self.m - 1)
        lg = int(self._log[a])
        if lg % 2:
            raise ValueError("not a square")
        return int(self._exp[lg // 2])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def prime_subfield_mask(self) -> np.ndarray:
        return self.frob(self.elements()) == self.elements()


def _like(a, b, out):
    if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
        return int(out)
    return out


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        cand = tuple((code // p**i) % p for i in range(m)) + (1,)
        if cand[0] != 0 and _modulus_irreducible(p, cand):
            return cand
    raise AssertionError("no irreducible polynomial found")


def _modulus_irreducible(p: int, modulus) -> bool:
    from .factor import irreducible_test
    from .poly import FqPoly

    return irreducible_test(FqPoly(get_field(p), list(modulus), var="X"))


@lru_cache(maxsize=None)
def get_field(p: int, m: int = 1, modulus=None) -> FqField:
    """Cached field constructor; equal arguments return the same object."""
    return FqField(p, m, modulus)


def field_for(r: int) -> FqField:
    p, m = prime_power(r)
    return get_field(p, m)


class FqElem:
    """A scalar in F_q with operator overloading.

    Plain ints mixed into arithmetic are read as elements of the prime field.
    """

    __slots__ = ("field", "code")

    def __init__(self, field: FqField, code):
        if isinstance(code, FqElem):
            field.check(code.field)
            code = code.code
        code = int(code)
        if field.m == 1:
            code %= field.p
        elif not 0 <= code < field.q:
            raise ValueError(f"code {code} out of range for {field!r}")
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FqElem):
            self.field.check(other.field)
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.div(o, self.code))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.code, int(e)))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.code))

    def frobenius(self, k: int = 1):
        return FqElem(self.field, self.field.frob(self.code, k))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.field.m == 1:
            return str(self.code)
        dig = self.field.digits(self.code).tolist()
        terms = [
            (str(c) if i == 0 else (f"{c}*X" if i == 1 else f"{c}*X^{i}")) for i, c in enumerate(dig) if c
        ]
        return "+".join(terms) or "0"
