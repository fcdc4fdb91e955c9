"""Tangent algebras R[eps]/(eps^t), separable lifts and multi-valued operators."""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import ceil, log2

from .carlitz import THETA, TauMatSeries, mat_identity, mat_scale
from .errors import InvariantError, NotInvertible
from .extension import ExtElt, ExtField
from .field import field_for
from .hyperderiv import binom_mod, hyperderive
from .poly import FqPoly
from .ratfn import RatFn
from .series import ValSeries


class TangentElt:
    """c_0 + c_1 eps + ... + c_(t-1) eps^(t-1) with eps^t = 0."""

    __slots__ = ("t", "c", "zero", "one")

    def __init__(self, coeffs, t: int, zero, one):
        if t < 1:
            raise ValueError("nilpotency order must be >= 1")
        cs = list(coeffs)[:t]
        cs += [zero] * (t - len(cs))
        self.t, self.c, self.zero, self.one = t, tuple(cs), zero, one

    @classmethod
    def scalar(cls, c, t: int, zero, one) -> "TangentElt":
        return cls([c], t, zero, one)

    def _like(self, coeffs) -> "TangentElt":
        return TangentElt(coeffs, self.t, self.zero, self.one)

    def _lift(self, other) -> "TangentElt":
        if isinstance(other, TangentElt):
            if other.t != self.t:
                raise ValueError("nilpotency orders differ")
            return other
        return self._like([self.one * other if isinstance(other, int) else other])

    @property
    def scalar_part(self):
        return self.c[0]

    def nilpotent_part(self) -> "TangentElt":
        return self._like([self.zero] + list(self.c[1:]))

    def is_unit(self) -> bool:
        return not self.c[0].is_zero()

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def __add__(self, other):
        o = self._lift(other)
        return self._like([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out = [self.zero] * self.t
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j in range(self.t - i):
                b = o.c[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return tangent_invert(self) ** (-e)
        out = self._like([self.one])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __truediv__(self, other):
        return self * tangent_invert(self._lift(other))

    def __eq__(self, other):
        if not isinstance(other, TangentElt):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return self.t == other.t and all((a - b).is_zero() for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    def eps_order(self) -> int | None:
        """Smallest k >= 1 with a nonzero eps^k coefficient, or None."""
        for k in range(1, self.t):
            if not self.c[k].is_zero():
                return k
        return None

    def map(self, fn, zero, one) -> "TangentElt":
        return TangentElt([fn(x) for x in self.c], self.t, zero, one)

    def as_matrix(self):
        """Upper-triangular Toeplitz matrix sum c_i N^i with N the superdiagonal."""
        t = self.t
        return tuple(tuple(self.c[j - i] if j >= i else self.zero for j in range(t)) for i in range(t))

    def to_json(self) -> dict:
        return {"t": self.t, "coeffs": [x.to_json() for x in self.c]}

    def __repr__(self):
        terms = []
        for k, x in enumerate(self.c):
            if x.is_zero():
                continue
            mon = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
            terms.append(f"({x!r})" + (f"*{mon}" if mon else ""))
        return " + ".join(terms) if terms else "0"


def _ratfn_ring(r: int):
    fld = field_for(r)
    return RatFn.constant(fld, 0, THETA), RatFn.constant(fld, 1, THETA)


def tangent_of_operator(a: FqPoly, t: int) -> TangentElt:
    """E_{a,*} = sum_{i<t} D_i(a) eps^i with theta in place of T."""
    zero, one = _ratfn_ring(a.field.q)
    cs = [RatFn.from_poly(hyperderive(i, a).with_var(THETA)) for i in range(t)]
    return TangentElt(cs, t, zero, one)


def tangent_invert(x: TangentElt) -> TangentElt:
    """x^-1 = c^-1 sum_k (-n/c)^k for x = c + n with n nilpotent."""
    if not x.is_unit():
        raise NotInvertible("scalar part is zero")
    c = x.c[0]
    cinv = c.inverse() if hasattr(c, "inverse") else x.one / c
    m = x.nilpotent_part() * (-cinv)
    out = x._like([x.one])
    term = out
    for _ in range(1, x.t):
        term = term * m
        out = out + term
    return out * cinv


def series_hyperderive(x: ValSeries, i: int) -> ValSeries:
    """D_i with respect to T of a series at infinity or at a degree-1 finite place."""
    place = x.place
    if i == 0 or x.is_zero():
        return x
    res = place.residue
    p = res.p
    if place.is_infinite:
        # D_i(T^-k) = binom(-k, i) T^(-k-i) = (-1)^i binom(k+i-1, i) T^(-k-i)
        out = []
        for idx, c in enumerate(x.c):
            k = x.val + idx
            b = _binom_signed(-k, i, p)
            out.append(res.smul(b, int(c)) if b else 0)
        return ValSeries(place, x.val + i, out, len(out))
    if place.degree != 1:
        raise NotImplementedError("hyperderivatives at places of degree > 1")
    # pi = T - c, so D_i(pi^k) = binom(k, i) pi^(k-i)
    out = []
    for idx, c in enumerate(x.c):
        k = x.val + idx
        b = _binom_signed(k, i, p)
        out.append(res.smul(b, int(c)) if b else 0)
    return ValSeries(place, x.val - i, out, len(out))


def _binom_signed(n: int, i: int, p: int) -> int:
    if n >= 0:
        return binom_mod(n, i, p)
    # binom(-k, i) = (-1)^i binom(k+i-1, i)
    b = binom_mod(-n + i - 1, i, p)
    return b if i % 2 == 0 else (-b) % p


def tangent_extend_K(x, t: int) -> TangentElt:
    """Tangent of an element of K: exact for RatFn, to precision for ValSeries."""
    if isinstance(x, RatFn):
        if x.is_zero():
            zero, one = _ratfn_ring(x.field.q)
            return TangentElt([], t, zero, one)
        num = tangent_of_operator(x.num.with_var("T"), t)
        den = tangent_of_operator(x.den.with_var("T"), t)
        return num * tangent_invert(den)
    if isinstance(x, ValSeries):
        if x.is_zero():
            raise NotInvertible("zero series has no tangent denominator")
        zero = ValSeries.zero(x.place)
        one = ValSeries.one(x.place, x.prec)
        return TangentElt([series_hyperderive(x, i) for i in range(t)], t, zero, one)
    raise TypeError(f"unsupported scalar {type(x).__name__}")


# ---------------------------------------------------------------------------
# separable lifts


@dataclass
class LiftProblem:
    """Minimal polynomial sum a_i u^i (a_i in A) and nilpotency order t."""

    coeffs: list
    t: int
    ext: ExtField = dfield(init=False)

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("nilpotency order must be >= 1")
        cs = [c.with_var("T") for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if len(cs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        self.coeffs = cs
        self.ext = ExtField.over_ratfn([c.with_var(THETA) for c in cs])

    @property
    def r(self) -> int:
        return self.coeffs[0].field.q

    def lam(self) -> ExtElt:
        return self.ext.gen()


def _ext_tangent(E: TangentElt, ext: ExtField) -> TangentElt:
    return E.map(ext.scalar, ext.scalar(0), ext.scalar(1))


def _lift_equation(problem: LiftProblem):
    ext = problem.ext
    Es = [_ext_tangent(tangent_of_operator(a, problem.t), ext) for a in problem.coeffs]
    return Es


def _newton(Es, X: TangentElt, t: int) -> TangentElt:
    iters = ceil(log2(t)) + 1 if t > 1 else 1
    for _ in range(iters + 1):
        g = X * 0
        dg = X * 0
        pw = X._like([X.one])
        for i, E in enumerate(Es):
            g = g + E * pw
            if i + 1 < len(Es):
                dg = dg + Es[i + 1] * pw * (i + 1)
            pw = pw * X
        if g.is_zero():
            return X
        X = X - g / dg
    raise InvariantError("Newton iteration did not converge")


def lift_residual(problem: LiftProblem, X: TangentElt) -> TangentElt:
    Es = _lift_equation(problem)
    out = X * 0
    pw = X._like([X.one])
    for E in Es:
        out = out + E * pw
        pw = pw * X
    return out


def separable_lift(problem: LiftProblem, start: TangentElt | None = None) -> TangentElt:
    """lambda-bar + eps_lambda solving sum E_{a_i,*} X^i = 0 in k(lambda)[eps]/(eps^t)."""
    ext, t = problem.ext, problem.t
    X = TangentElt([problem.lam()], t, ext.scalar(0), ext.scalar(1)) if start is None else start
    return _newton(_lift_equation(problem), X, t)


def vadic_separable_lift(coeffs, place, t: int, prec: int):
    """The separable lift with scalars in k_v[u]/(f), k_v = completion at a finite place.

    Coefficients are expanded to ``prec`` v-adic digits; the returned
    tangent coefficients carry their own precision.
    """
    cs = [c.with_var("T") for c in coeffs]
    zero = ValSeries.zero(place)
    one = ValSeries.one(place, prec)

    def ser(a: FqPoly) -> ValSeries:
        return ValSeries.from_poly(a, place, prec) if not a.is_zero() else zero

    ext = ExtField([ser(c) for c in cs], zero, one, check_separable=False)
    Es = []
    for a in cs:
        Es.append(TangentElt([ext.scalar(ser(hyperderive(i, a))) for i in range(t)], t, ext.scalar(0), ext.scalar(1)))
    X = TangentElt([ext.gen()], t, ext.scalar(0), ext.scalar(1))
    iters = ceil(log2(t)) + 2 if t > 1 else 1
    for _ in range(iters):
        g = X * 0
        dg = X * 0
        pw = X._like([X.one])
        for i, E in enumerate(Es):
            g = g + E * pw
            if i + 1 < len(Es):
                dg = dg + Es[i + 1] * pw * (i + 1)
            pw = pw * X
        X = X - g / dg
    return X, ext


# ---------------------------------------------------------------------------
# liftability of p^s-th roots


@dataclass
class Liftability:
    status: str  # "liftable", "scalar-only", "obstructed"
    reason: str = ""
    witness: TangentElt | None = None
    root_exact: bool = True

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
            "root_exact": self.root_exact,
        }


def pth_root_ratfn(x: RatFn, k: int):
    """x^(1/p^k) when it lies in F_r(theta), else None."""
    out = []
    for poly in (x.num, x.den):
        step = poly.field.p**k
        if any(int(c) for i, c in enumerate(poly.c) if i % step):
            return None
        fld = poly.field
        sub = poly.c[::step]
        if fld.m > 1:
            # inverse Frobenius on the constants
            sub = fld.frob(sub, (fld.m - k % fld.m) % fld.m)
        out.append(poly.new(sub))
    return RatFn(out[0], out[1])


def liftability_check(target: TangentElt, p: int, s: int) -> Liftability:
    """Solvability of X^(p^s) = target for X = c + n in the tangent algebra."""
    if s < 1:
        raise ValueError("s must be >= 1")
    q = p**s
    nil = [(k, x) for k, x in enumerate(target.c) if k and not x.is_zero()]
    if not nil:
        return Liftability("scalar-only", "nilpotent part is zero; only a scalar p^s-th root is possible")
    bad = [k for k, _ in nil if k % q]
    if bad:
        return Liftability(
            "obstructed",
            f"eps^{bad[0]} has nonzero coefficient but eps-exponents of n^(p^s) are multiples of {q}",
        )
    cs = [target.zero] * target.t
    exact = True
    for k, x in nil:
        root = pth_root_ratfn(x, s) if isinstance(x, RatFn) else None
        if root is None:
            exact = False
            root = x
        cs[k // q] = root
    n = TangentElt(cs, target.t, target.zero, target.one)
    if exact and not (n**q == target.nilpotent_part()):
        raise InvariantError("witness does not reproduce the target")
    reason = "n^(p^s) equals the nilpotent part" if exact else "coefficients need p^s-th roots outside F_r(theta)"
    return Liftability("liftable", reason, n, exact)


# ---------------------------------------------------------------------------
# multi-valued operators


def multivalued_operator(M, exp: TauMatSeries, log: TauMatSeries, N: int) -> TauMatSeries:
    """e o (M tau^0) o log, truncated at tau-degree N."""
    t = exp.t
    ident = TauMatSeries.identity(t, exp.zero, exp.one, N)
    if not log.truncate(N).compose(exp.truncate(N)) == ident:
        raise InvariantError("log is not inverse to exp through the truncation")
    mid = TauMatSeries([M], exp.zero, exp.one, N)
    return exp.truncate(N).compose(mid).compose(log.truncate(N))


def tangent_matrix(a: FqPoly, t: int):
    """a-bar I + sum D_i(a) N^i as a t x t matrix over F_r(theta)."""
    return tangent_of_operator(a, t).as_matrix()


def scalar_matrix(x, t: int, zero, one):
    return mat_scale(mat_identity(t, zero, one), x)

