"""The Carlitz module, its tensor powers and their exponential and logarithm.

Operators are twisted series sum A_i tau^i with t x t matrix coefficients and
the rule (A tau^i)(B tau^j) = A B^(r^i) tau^(i+j).  Scalars are FqPoly or
RatFn in ``theta`` (or any type with ring operations and ``frobenius``).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvariantError, PrecisionError
from .field import field_for
from .poly import FqPoly
from .powersum import base_digits
from .ratfn import RatFn

THETA = "theta"


# ---------------------------------------------------------------------------
# matrices of scalars (tuples of tuples)


def mat_identity(t: int, zero, one):
    return tuple(tuple(one if i == j else zero for j in range(t)) for i in range(t))


def mat_zero(t: int, zero):
    return tuple(tuple(zero for _ in range(t)) for _ in range(t))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A, c):
    return tuple(tuple(a * c for a in row) for row in A)


def mat_mul(A, B, zero):
    t = len(A)
    out = []
    for i in range(t):
        row = []
        for j in range(t):
            acc = zero
            for k in range(t):
                a = A[i][k]
                if not a.is_zero():
                    b = B[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _scalar_field(x):
    return x.field if hasattr(x, "field") else x.place.base


def twist(x, i: int):
    """x^(r^i) where r is the size of the constant field of x."""
    if i == 0 or x.is_zero():
        return x
    return x.frobenius(_scalar_field(x).m * i)


def mat_twist(A, i: int):
    if i == 0:
        return A
    return tuple(tuple(twist(a, i) for a in row) for row in A)


def mat_is_zero(A) -> bool:
    return all(a.is_zero() for row in A for a in row)


def mat_map(A, fn):
    return tuple(tuple(fn(a) for a in row) for row in A)


# ---------------------------------------------------------------------------


class TauMatSeries:
    """sum_{i <= N} A_i tau^i; N is None for an exact twisted polynomial."""

    __slots__ = ("t", "coeffs", "N", "zero", "one")

    def __init__(self, coeffs, zero, one, N: int | None = None):
        cs = list(coeffs)
        if not cs:
            raise ValueError("at least one coefficient is required")
        self.t = len(cs[0])
        if N is not None:
            cs = cs[: N + 1]
            while len(cs) < N + 1:
                cs.append(mat_zero(self.t, zero))
        else:
            while len(cs) > 1 and mat_is_zero(cs[-1]):
                cs.pop()
        self.coeffs = tuple(cs)
        self.N = N
        self.zero, self.one = zero, one

    @classmethod
    def identity(cls, t: int, zero, one, N: int | None = None) -> "TauMatSeries":
        return cls([mat_identity(t, zero, one)], zero, one, N)

    @classmethod
    def scalar(cls, M, zero, one, N: int | None = None) -> "TauMatSeries":
        return cls([M], zero, one, N)

    @property
    def is_exact(self) -> bool:
        return self.N is None

    @property
    def degree(self) -> int:
        """Largest tau-degree stored."""
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        if self.N is not None and i > self.N:
            raise PrecisionError(f"tau-degree {i} beyond truncation {self.N}")
        if i < len(self.coeffs):
            return self.coeffs[i]
        return mat_zero(self.t, self.zero)

    def tau0(self):
        return self.coeffs[0]

    def truncate(self, N: int) -> "TauMatSeries":
        if self.N is not None:
            N = min(N, self.N)
        return TauMatSeries(self.coeffs, self.zero, self.one, N)

    def _n(self, other) -> int | None:
        if self.N is None:
            return other.N
        if other.N is None:
            return self.N
        return min(self.N, other.N)

    def __add__(self, other: "TauMatSeries") -> "TauMatSeries":
        N = self._n(other)
        n = max(len(self.coeffs), len(other.coeffs))
        if N is not None:
            n = min(n, N + 1)
        cs = [mat_add(self.coeff(i) if i < len(self.coeffs) else mat_zero(self.t, self.zero),
                      other.coeff(i) if i < len(other.coeffs) else mat_zero(self.t, self.zero)) for i in range(n)]
        return TauMatSeries(cs, self.zero, self.one, N)

    def __neg__(self):
        return TauMatSeries([mat_scale(A, -1) for A in self.coeffs], self.zero, self.one, self.N)

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "TauMatSeries") -> "TauMatSeries":
        """self o other in the twisted ring."""
        N = self._n(other)
        top = len(self.coeffs) + len(other.coeffs) - 2
        if N is not None:
            top = min(top, N)
        out = [mat_zero(self.t, self.zero) for _ in range(top + 1)]
        for i, A in enumerate(self.coeffs):
            if i > top or mat_is_zero(A):
                continue
            for j, B in enumerate(other.coeffs):
                if i + j > top:
                    break
                if mat_is_zero(B):
                    continue
                out[i + j] = mat_add(out[i + j], mat_mul(A, mat_twist(B, i), self.zero))
        return TauMatSeries(out, self.zero, self.one, N)

    __mul__ = compose

    def map(self, fn, zero, one) -> "TauMatSeries":
        """Apply a ring map to every scalar (e.g. reduction or a change of scalar type)."""
        return TauMatSeries([mat_map(A, fn) for A in self.coeffs], zero, one, self.N)

    def equal_to(self, other: "TauMatSeries", N: int) -> bool:
        return all(self.coeff(i) == other.coeff(i) for i in range(N + 1))

    def __eq__(self, other):
        if not isinstance(other, TauMatSeries):
            return NotImplemented
        if self.N is None and other.N is None:
            return self.coeffs == other.coeffs
        N = self._n(other)
        return self.equal_to(other, N)

    def __hash__(self):
        return hash((self.coeffs, self.N))

    def to_json(self) -> dict:
        return {
            "dimension": self.t,
            "truncation": self.N,
            "terms": [[i, [a.to_json() for row in A for a in row]] for i, A in enumerate(self.coeffs) if not mat_is_zero(A)],
        }

    def __repr__(self):
        terms = []
        for i, A in enumerate(self.coeffs):
            if mat_is_zero(A):
                continue
            body = repr(A[0][0]) if self.t == 1 else repr([list(row) for row in A])
            terms.append(f"({body})tau^{i}" if i else f"({body})")
        tail = "" if self.N is None else f" + O(tau^{self.N + 1})"
        return " + ".join(terms or ["0"]) + tail


# ---------------------------------------------------------------------------
# actions


def _ring(r: int, kind=FqPoly):
    fld = field_for(r)
    if kind is RatFn:
        return RatFn.constant(fld, 0, THETA), RatFn.constant(fld, 1, THETA)
    return FqPoly.zero(fld, THETA), FqPoly.one(fld, THETA)


def generator_matrices(n: int, r: int, kind=FqPoly):
    """(d_T, V): d_T = theta I + N with N the superdiagonal, V the lower-left unit."""
    zero, one = _ring(r, kind)
    gen = FqPoly.gen(field_for(r), THETA)
    theta = gen if kind is FqPoly else RatFn.from_poly(gen)
    dT = tuple(tuple(theta if i == j else (one if j == i + 1 else zero) for j in range(n)) for i in range(n))
    V = tuple(tuple(one if (i == n - 1 and j == 0) else zero for j in range(n)) for i in range(n))
    return dT, V, zero, one


def tensor_power_action(n: int, a: FqPoly, kind=FqPoly) -> TauMatSeries:
    """C^{(x)n}_a: the image of a under T -> (theta I + N) + V tau."""
    if n < 1:
        raise ValueError("tensor power must be >= 1")
    r = a.field.q
    dT, V, zero, one = generator_matrices(n, r, kind)
    CT = TauMatSeries([dT, V], zero, one)
    fld = a.field
    acc = TauMatSeries([mat_zero(n, zero)], zero, one)
    for k in range(len(a.c) - 1, -1, -1):
        acc = acc.compose(CT)
        c = int(a.c[k])
        if c:
            const = FqPoly.constant(fld, c, THETA) if kind is FqPoly else RatFn.constant(fld, c, THETA)
            acc = acc + TauMatSeries([mat_identity(n, zero, const)], zero, one)
    return acc


def carlitz_action(a: FqPoly, kind=FqPoly) -> TauMatSeries:
    return tensor_power_action(1, a, kind)


# ---------------------------------------------------------------------------
# exponential and logarithm


def bracket(r: int, i: int) -> FqPoly:
    """[i] = theta^(r^i) - theta."""
    fld = field_for(r)
    return FqPoly.monomial(fld, r**i, 1, THETA) - FqPoly.gen(fld, THETA)


def tensor_exp_log(r: int, n: int, N: int) -> tuple[TauMatSeries, TauMatSeries]:
    """Exponential and logarithm of C^{(x)n} to tau-degree N, over F_r(theta).

    Exp solves A_i d_T^(r^i) - d_T A_i = V A_(i-1)^(r), i.e.
    ([i] + ad) A_i = V A_(i-1)^(r) with ad(X) = X N - N X nilpotent, inverted by
    a finite Neumann series.  Log is the compositional inverse.
    """
    if N < 0:
        raise ValueError("truncation must be >= 0")
    dT, V, zero, one = generator_matrices(n, r, RatFn)
    Nil = tuple(tuple(one if j == i + 1 else zero for j in range(n)) for i in range(n))
    I = mat_identity(n, zero, one)
    E = [I]
    for i in range(1, N + 1):
        rhs = mat_mul(V, mat_twist(E[-1], 1), zero)
        ci = RatFn.from_poly(bracket(r, i))
        inv = ci.inverse()
        term = mat_scale(rhs, inv)
        total = term
        for _ in range(2 * n):
            # term <- -ad(term) / [i]
            ad = mat_sub(mat_mul(term, Nil, zero), mat_mul(Nil, term, zero))
            if mat_is_zero(ad):
                break
            term = mat_scale(ad, -inv)
            total = mat_add(total, term)
        else:
            raise InvariantError("nilpotent Neumann series did not terminate")
        E.append(total)
    exp = TauMatSeries(E, zero, one, N)
    L = [I]
    for k in range(1, N + 1):
        acc = mat_zero(n, zero)
        for i in range(k):
            acc = mat_add(acc, mat_mul(L[i], mat_twist(E[k - i], i), zero))
        L.append(mat_scale(acc, -1))
    log = TauMatSeries(L, zero, one, N)
    return exp, log


def carlitz_exp(r: int, N: int) -> TauMatSeries:
    return tensor_exp_log(r, 1, N)[0]


def carlitz_log(r: int, N: int) -> TauMatSeries:
    return tensor_exp_log(r, 1, N)[1]


def exp_functional_residual(r: int, n: int, exp: TauMatSeries) -> TauMatSeries:
    """e o d_T - C_T o e; zero through the truncation when exp is correct."""
    dT, V, zero, one = generator_matrices(n, r, RatFn)
    left = exp.compose(TauMatSeries([dT], zero, one))
    right = TauMatSeries([dT, V], zero, one).compose(exp)
    return left - right


# ---------------------------------------------------------------------------
# factorials, Bernoulli-Carlitz numbers


class CarlitzData:
    """Cached D_i = [i] D_(i-1)^r, L_i = [i] L_(i-1) and Carlitz factorials for one r."""

    def __init__(self, r: int):
        self.r = r
        self.field = field_for(r)
        self._D = [FqPoly.one(self.field, THETA)]
        self._L = [FqPoly.one(self.field, THETA)]

    def bracket(self, i: int) -> FqPoly:
        return bracket(self.r, i)

    def D(self, i: int) -> FqPoly:
        while len(self._D) <= i:
            k = len(self._D)
            self._D.append(self.bracket(k) * self._D[-1].frobenius(self.field.m))
        return self._D[i]

    def L(self, i: int) -> FqPoly:
        while len(self._L) <= i:
            k = len(self._L)
            self._L.append(self.bracket(k) * self._L[-1])
        return self._L[i]

    def factorial(self, i: int) -> FqPoly:
        """Pi(i) = prod D_k^(c_k) over the base-r digits c_k of i."""
        if i < 0:
            raise ValueError("factorial of a negative integer")
        out = FqPoly.one(self.field, THETA)
        for k, c in enumerate(base_digits(i, self.r)):
            if c:
                out = out * self.D(k) ** c
        return out


@lru_cache(maxsize=None)
def carlitz_data(r: int) -> CarlitzData:
    return CarlitzData(r)


def carlitz_factorial(r: int, i: int) -> FqPoly:
    return carlitz_data(r).factorial(i)


def bernoulli_carlitz(r: int, i: int, prec: int | None = None) -> RatFn:
    """BC_i from z / e(z) = sum BC_i / Pi(i) z^i.

    e(z)/z = sum_k z^(r^k - 1) / D_k, so the inverse series obeys a sparse
    recursion over the exponents r^k - 1.
    """
    if i < 0:
        raise ValueError("index must be nonnegative")
    if prec is not None and prec < i:
        raise PrecisionError(f"z-series precision {prec} < {i}; need at least {i}")
    data = carlitz_data(r)
    fld = data.field
    one = RatFn.constant(fld, 1, THETA)
    steps = []
    k = 1
    while r**k - 1 <= i:
        steps.append((r**k - 1, RatFn.from_poly(data.D(k)).inverse()))
        k += 1
    b = [one] + [None] * i
    for m in range(1, i + 1):
        acc = one.zero()
        for e, c in steps:
            if e > m:
                break
            if not b[m - e].is_zero():
                acc = acc + b[m - e] * c
        b[m] = -acc
    return b[i] * RatFn.from_poly(data.factorial(i))


# ---------------------------------------------------------------------------
# v-adic reduction


def _vals(x: FqPoly, v: FqPoly, cap: int) -> int:
    if x.is_zero():
        return cap
    e = 0
    while e < cap:
        q, rem = divmod(x, v)
        if not rem.is_zero():
            return e
        x, e = q, e + 1
    return cap


def vadic_reduce_action(n: int, a: FqPoly, v: FqPoly, M: int | None, M_out: int) -> tuple[TauMatSeries, dict]:
    """C^{(x)n}_a reduced mod v^M_out for an approximant a of a v-adic integer known mod v^M.

    Changing a by v^M b changes C_a by C_b o C_{v^M}; twisting only raises
    valuations, so the tau^k coefficient is determined mod v^(m_k) with
    m_k = min over j <= k of the v-valuation of the tau^j coefficient of
    C_{v^M}.  The result is truncated at the last k with m_k >= M_out.
    ``M=None`` marks an exact element of A.
    """
    if M_out < 0:
        raise ValueError("output precision must be nonnegative")
    vt = v.with_var(THETA)
    mod = vt**M_out
    act = tensor_power_action(n, a)
    if M is None:
        N = None
        info = {"truncation": None, "precision_profile": None}
    else:
        if M < M_out:
            raise PrecisionError(f"input precision {M} below requested {M_out}")
        err = tensor_power_action(n, v**M)
        profile = []
        cur = M_out + 1
        for A in err.coeffs:
            cur = min(cur, min(_vals(x, vt, M_out + 1) for row in A for x in row))
            profile.append(cur)
        good = [k for k, m in enumerate(profile) if m >= M_out]
        if not good or good[0] != 0:
            raise PrecisionError(f"precision {M} is insufficient for output precision {M_out}")
        N = 0
        while N + 1 < len(profile) and profile[N + 1] >= M_out:
            N += 1
        info = {"truncation": N, "precision_profile": profile}
    zero = act.zero
    red = act.map(lambda x: x % mod, zero, act.one % mod if M_out else zero)
    if N is not None:
        red = red.truncate(N)
    return red, info
