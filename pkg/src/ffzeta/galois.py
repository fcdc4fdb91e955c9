"""Galois analysis of polynomials in x over k = F_r(T) with coefficients in A = F_r[T].

Covers Eisenstein witnesses, reduction modulo primes of A, discriminants,
the resolvent cubic, exact square roots in A, roots in k by v-adic Hensel
lifting, and the classification of quartic Galois groups in odd
characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .factor import irreducible_test, poly_factor, roots
from .field import FqField
from .poly import FqPoly, enumerate_monic, poly_gcd
from .series import Place, ValSeries


class XPoly:
    """Polynomial in x with FqPoly coefficients, index = power of x."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[FqPoly]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("zero polynomial in x")
        f0 = cs[0]
        for c in cs[1:]:
            f0._check(c)
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, field: FqField, rows) -> "XPoly":
        """Coefficients given as lists of T-coefficient codes, lowest x-power first."""
        return cls(FqPoly(field, r) for r in rows)

    @property
    def field(self) -> FqField:
        return self.coeffs[0].field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FqPoly:
        return self.coeffs[-1]

    def coeff(self, k: int) -> FqPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return FqPoly.zero(self.field)

    def is_monic(self) -> bool:
        return self.lc.is_one()

    def content(self) -> FqPoly:
        g = FqPoly.zero(self.field)
        for c in self.coeffs:
            g = poly_gcd(g, c)
            if g.degree == 0:
                break
        return g

    def is_primitive(self) -> bool:
        return self.content().degree == 0

    def primitive_part(self) -> "XPoly":
        g = self.content()
        return XPoly(c.exact_div(g) for c in self.coeffs) if g.degree > 0 else self

    def reciprocal(self) -> "XPoly":
        """x^deg f(1/x)."""
        return XPoly(reversed(self.coeffs))

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "XPoly") -> "XPoly":
        zero = FqPoly.zero(self.field)
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out)

    def __call__(self, y):
        acc = y * 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def degrees(self) -> list[int]:
        return [c.degree for c in self.coeffs]

    def to_json(self) -> dict:
        return {"x_degree": self.degree, "coefficients": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        return "XPoly(" + ", ".join(f"[{c!r}]" for c in self.coeffs) + ")"


def xpoly_from_zeta(zp, reciprocal: bool = True) -> XPoly:
    """The special polynomial sum_d S_d x^(-d) as a polynomial in x (monic) or in x^-1."""
    cs = list(zp.coeffs)
    return XPoly(reversed(cs)) if reciprocal else XPoly(cs)


def _require_irreducible(v: FqPoly) -> None:
    if v.degree < 1 or not irreducible_test(v):
        raise ValueError(f"{v!r} is not irreducible")


def _odd(f: FqField) -> None:
    if f.p == 2:
        raise NotImplementedError("even characteristic is not supported")


# ---------------------------------------------------------------------------
# Eisenstein


@dataclass(frozen=True)
class EisensteinResult:
    forward: bool
    reverse: bool

    def __bool__(self):
        return self.forward or self.reverse


def _eisenstein_one(cs, v: FqPoly) -> bool:
    if v.divides(cs[-1]):
        return False
    if not all(v.divides(c) for c in cs[:-1]):
        return False
    return not (v * v).divides(cs[0])


def eisenstein_check(f: XPoly, v: FqPoly) -> EisensteinResult:
    """Eisenstein at v with x^n leading (forward) and with the constant term leading (reverse)."""
    if f.degree < 1:
        raise ValueError("degree must be at least 1")
    _require_irreducible(v)
    cs = f.coeffs
    return EisensteinResult(_eisenstein_one(cs, v), _eisenstein_one(cs[::-1], v))


def _prime_factors_upto(a: FqPoly, bound: int) -> list[FqPoly]:
    if a.degree < 1:
        return []
    return [g for g, _ in poly_factor(a, max_degree=bound)]


def _gcd_all(polys) -> FqPoly:
    g = FqPoly.zero(polys[0].field)
    for c in polys:
        g = poly_gcd(g, c)
        if g.degree == 0:
            break
    return g


def eisenstein_scan(f: XPoly, degree_bound: int) -> list[tuple[FqPoly, str]]:
    """Witnesses (v, orientation) among monic irreducibles of degree <= bound.

    A forward witness divides every non-leading coefficient, so only prime
    factors of their gcd are tried; likewise for the reverse orientation.
    """
    cs = list(f.coeffs)
    cands = set()
    for part in (cs[:-1], cs[1:]):
        for g in _prime_factors_upto(_gcd_all(part), degree_bound):
            cands.add(g)
    out = []
    for v in sorted(cands, key=lambda g: (g.degree, tuple(int(x) for x in g.c))):
        res = eisenstein_check(f, v)
        if res.forward:
            out.append((v, "forward"))
        if res.reverse:
            out.append((v, "reverse"))
    return out


# ---------------------------------------------------------------------------
# reduction mod primes


def reduce_mod_prime(f: XPoly, v: FqPoly) -> FqPoly:
    """Image of f in (A/v)[x]; the variable of the result is x."""
    place = Place.finite(v.monic())
    res = place.residue
    return FqPoly(res, [place.reduce(c) for c in f.coeffs], var="x")


def irreducible_mod_prime(f: XPoly, v: FqPoly) -> bool:
    """True when f mod v is irreducible of full degree, which certifies f irreducible over k."""
    _require_irreducible(v)
    if v.divides(f.lc):
        raise ValueError("leading coefficient vanishes modulo v")
    return irreducible_test(reduce_mod_prime(f, v))


def monic_irreducibles(field: FqField, max_degree: int):
    """Monic irreducibles of degree 1..max_degree in (degree, lexicographic) order."""
    for d in range(1, max_degree + 1):
        if d > 1 and field.m > 1:
            return
        for v in enumerate_monic(field, d):
            if d == 1 or irreducible_test(v):
                yield v


def mod_prime_scan(f: XPoly, primes: Iterable[FqPoly]) -> FqPoly | None:
    """First prime modulo which f stays irreducible, or None."""
    for v in primes:
        if v.divides(f.lc):
            continue
        if irreducible_mod_prime(f, v):
            return v
    return None


# ---------------------------------------------------------------------------
# discriminants, resolvent


def cubic_discriminant(f: XPoly) -> FqPoly:
    if f.degree != 3:
        raise ValueError("cubic expected")
    d, c, b, a = f.coeffs
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def quartic_discriminant(f: XPoly) -> FqPoly:
    if f.degree != 4:
        raise ValueError("quartic expected")
    e, d, c, b, a = f.coeffs
    terms = [
        (256, a**3 * e**3),
        (-192, a * a * b * d * e * e),
        (-128, a * a * c * c * e * e),
        (144, a * a * c * d * d * e),
        (-27, a * a * d**4),
        (144, a * b * b * c * e * e),
        (-6, a * b * b * d * d * e),
        (-80, a * b * c * c * d * e),
        (18, a * b * c * d**3),
        (16, a * c**4 * e),
        (-4, a * c**3 * d * d),
        (-27, b**4 * e * e),
        (18, b**3 * c * d * e),
        (-4, b**3 * d**3),
        (-4, b * b * c**3 * e),
        (1, b * b * c * c * d * d),
    ]
    out = FqPoly.zero(f.field)
    for k, t in terms:
        out = out + t * k
    return out


def discriminant(f: XPoly) -> FqPoly:
    if f.degree == 2:
        c, b, a = f.coeffs
        return b * b - 4 * a * c
    if f.degree == 3:
        return cubic_discriminant(f)
    if f.degree == 4:
        return quartic_discriminant(f)
    raise ValueError("discriminant formulas cover degrees 2..4")


def depressed_quartic(f: XPoly) -> tuple[FqPoly, FqPoly, FqPoly]:
    """(p, q, s) with f(x - a3/4) = x^4 + p x^2 + q x + s."""
    if f.degree != 4 or not f.is_monic():
        raise ValueError("monic quartic expected")
    _odd(f.field)
    a0, a1, a2, a3, _ = f.coeffs
    fld = f.field
    i4, i8, i16, i256 = (fld.inv(fld.from_int(n)) for n in (4, 8, 16, 256))
    p = a2 - (a3 * a3 * 3).scale(i8)
    q = a1 - (a3 * a2).scale(fld.inv(fld.from_int(2))) + (a3**3).scale(i8)
    s = a0 - (a3 * a1).scale(i4) + (a3 * a3 * a2).scale(i16) - (a3**4 * 3).scale(i256)
    return p, q, s


def resolvent_cubic(f: XPoly) -> XPoly:
    """y^3 - p y^2 - 4 s y + (4 p s - q^2) for the depressed form of f."""
    p, q, s = depressed_quartic(f)
    one = FqPoly.one(f.field)
    return XPoly([p * s * 4 - q * q, -(s * 4), -p, one])


# ---------------------------------------------------------------------------
# squares


def poly_sqrt(d: FqPoly) -> FqPoly | None:
    """Exact square root in A (up to sign), or None when d is not a square in k."""
    fld = d.field
    if d.is_zero():
        return d
    if d.degree % 2:
        return None
    if fld.p == 2:
        # squares in characteristic 2 are polynomials in T^2 with square-rooted coefficients
        if np.any(d.c[1::2]):
            return None
        return d.new(fld.frob(d.c[::2], fld.m - 1)) if fld.m > 1 else d.new(d.c[::2])
    lc = d.lc
    if not fld.is_square(lc):
        return None
    n = d.degree // 2
    # reversed series 1 + ... and its square root by coefficient recursion
    rev = fld.mul(d.c[::-1], fld.inv(lc))
    s = np.zeros(n + 1, dtype=np.int64)
    s[0] = 1
    half = fld.inv(fld.from_int(2))
    for k in range(1, n + 1):
        acc = fld.dot(s[1:k], s[k - 1 : 0 : -1]) if k > 1 else 0
        s[k] = fld.mul(fld.sub(int(rev[k]), int(acc)), half)
    root = d.new(s[::-1]).scale(fld.sqrt(lc))
    return root if root * root == d else None


def disc_is_square(d: FqPoly) -> bool:
    """Whether d is a square in F_r(T)."""
    _odd(d.field)
    if d.is_zero():
        raise ValueError("zero discriminant")
    return poly_sqrt(d) is not None


def nonresidue_witness(d: FqPoly, max_degree: int = 3) -> FqPoly | None:
    """A prime v with v not dividing d and d a non-square mod v, if one of degree <= max_degree exists."""
    for v in monic_irreducibles(d.field, max_degree):
        place = Place.finite(v)
        a = place.reduce(d)
        if a and not place.residue.is_square(a):
            return v
    return None


# ---------------------------------------------------------------------------
# roots in k


def _cauchy_degree(cs: list[FqPoly]) -> int:
    n = len(cs) - 1
    return max((-(-c.degree // (n - i)) for i, c in enumerate(cs[:-1]) if not c.is_zero()), default=0)


def _good_linear_prime(cs: list[FqPoly]) -> int | None:
    fld = cs[0].field
    for t in range(fld.q):
        red = FqPoly(fld, [c(t) for c in cs], var="x")
        if red.degree != len(cs) - 1:
            continue
        if poly_gcd(red, red.derivative()).degree == 0:
            return t
    return None


def roots_in_A_monic(f: XPoly) -> list[FqPoly]:
    """Roots in A of a monic f with squarefree reduction at some degree-1 prime.

    Each root of f mod (T - t) is lifted by Newton iteration in F_r[[T - t]]
    past the degree bound on roots, then checked exactly.
    """
    if not f.is_monic():
        raise ValueError("monic polynomial expected")
    cs = list(f.coeffs)
    fld = f.field
    t = _good_linear_prime(cs)
    if t is None:
        return _roots_by_divisors(f)
    bound = _cauchy_degree(cs)
    N = bound + 2
    v = FqPoly(fld, [fld.neg(t), 1])
    place = Place.finite(v)
    ser = [ValSeries.from_poly(c, place, N) for c in cs]
    dser = [ser[k] * k for k in range(1, len(ser))]
    red = FqPoly(fld, [c(t) for c in cs], var="x")
    out = []
    for r0 in roots(red):
        z = ValSeries.constant(place, r0, N)
        for _ in range(64):
            fz = _horner(ser, z)
            if fz.is_zero() or fz.valuation() >= N:
                break
            z = (z - fz / _horner(dser, z)).with_prec(N)
        # back to a polynomial in T: sum z_k (T - t)^k
        cand = FqPoly.zero(fld)
        for k in range(N - 1, -1, -1):
            cand = cand * v + FqPoly.constant(fld, z.coeff(k) if k < z.abs_prec else 0)
        if cand.degree <= bound and f(cand).is_zero():
            out.append(cand)
    return sorted(out, key=lambda g: (g.degree, tuple(int(x) for x in g.c)))


DIVISOR_SEARCH_MAX_DEGREE = 200


def _roots_by_divisors(f: XPoly) -> list[FqPoly]:
    """Fallback: a root in A of a monic f divides the constant term (or is 0)."""
    cs = list(f.coeffs)
    fld = f.field
    out = []
    if cs[0].is_zero():
        out.append(FqPoly.zero(fld))
        k = next(i for i, c in enumerate(cs) if not c.is_zero())
        cs = cs[k:]
        if len(cs) == 1:
            return out
    if cs[0].degree > DIVISOR_SEARCH_MAX_DEGREE:
        raise ValueError("no degree-1 prime with squarefree reduction and constant term too large to factor")
    divisors = [FqPoly.one(fld)]
    for g, e in poly_factor(cs[0]):
        divisors = [d * g**k for d in divisors for k in range(e + 1)]
    for d in divisors:
        for u in range(1, fld.q):
            cand = d * u
            if f(cand).is_zero():
                out.append(cand)
    return sorted(out, key=lambda g: (g.degree, tuple(int(x) for x in g.c)))


def _horner(cs, z):
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * z + c
    return acc


def roots_in_k(f: XPoly) -> list:
    """Roots of f in k as RatFn values (via the monic transform y = lc * x)."""
    from .ratfn import RatFn

    n = f.degree
    c = f.lc
    # g(y) = c^(n-1) f(y/c) is monic with coefficients c^(n-1-i) a_i
    g = XPoly([a * c ** (n - 1 - i) for i, a in enumerate(f.coeffs[:-1])] + [FqPoly.one(f.field)])
    return [RatFn(y, c) for y in roots_in_A_monic(g)]


def is_square_k(x) -> bool:
    """Whether a RatFn is a square in k."""
    if x.is_zero():
        return True
    return poly_sqrt(x.num) is not None and poly_sqrt(x.den) is not None


def _sqrt_k(x):
    from .ratfn import RatFn

    a, b = poly_sqrt(x.num), poly_sqrt(x.den)
    if a is None or b is None:
        return None
    return RatFn(a, b)


def xdivmod_monic(f: XPoly, g: XPoly) -> tuple[list[FqPoly], list[FqPoly]]:
    """Quotient and remainder coefficient lists of f by a monic g over A."""
    if not g.is_monic():
        raise ValueError("monic divisor expected")
    rem = list(f.coeffs)
    n, m = f.degree, g.degree
    quo = [FqPoly.zero(f.field)] * max(0, n - m + 1)
    for k in range(n - m, -1, -1):
        c = rem[k + m]
        quo[k] = c
        if c.is_zero():
            continue
        for i, gc in enumerate(g.coeffs):
            rem[k + i] = rem[k + i] - c * gc
    return quo, rem[:m]


def _divides(g: XPoly, f: XPoly) -> bool:
    _, rem = xdivmod_monic(f, g)
    return all(r.is_zero() for r in rem)


def roots_at_infinity(f: XPoly):
    """All roots of a monic f in F_r((1/T)), when every Newton segment at infinity has length 1.

    Returns (roots, valuations) with each root known to absolute precision
    1 + sum of the positive root degrees, or None when some segment is longer.
    """
    from .errors import PrecisionError
    from .newton import hensel_zero_lift, newton_polygon

    if not f.is_monic() or f.coeffs[0].is_zero():
        return None
    place = Place.infinity(f.field)
    poly = newton_polygon([(k, -c.degree if not c.is_zero() else None) for k, c in enumerate(f.coeffs)])
    segs = poly.segments
    if any(s.length != 1 or s.slope.denominator != 1 for s in segs):
        return None
    vals = [int(s.zero_valuation) for s in segs]
    target = 1 + sum(max(0, -v) for v in vals)
    spread = sum(abs(v) for v in vals) + max(c.degree for c in f.coeffs)
    out = []
    for i, seg in enumerate(segs):
        vi = vals[i]
        vdf = sum(min(vi, vj) for j, vj in enumerate(vals) if j != i)
        vseg = seg.start_val + seg.start * vi
        # v(z - root) = v(f(z)) - v(f'(root)) >= vseg + need - vdf
        need = max(target + vdf - vseg + 1, 1)
        prec = need + 2 * spread + 4
        for _ in range(4):
            cs = [ValSeries.from_poly(c, place, prec) for c in f.coeffs]
            try:
                z = hensel_zero_lift(cs, seg, need)
                break
            except PrecisionError:
                prec *= 2
        else:
            return None
        # v(z - root) = v(f(z)) - v(f'(root))
        resid = _horner(cs, z)
        err = (resid.valuation() if not resid.is_zero() else resid.abs_prec) - vdf
        if err < target or z.abs_prec < target:
            return None
        out.append(z.with_abs_prec(target))
    return out, vals


def _truncate_poly(z: ValSeries, fld: FqField) -> FqPoly:
    """Polynomial part sum_{k<=0} z_k T^(-k) of a series in 1/T."""
    if z.is_zero() or z.val > 0:
        return FqPoly.zero(fld)
    return FqPoly(fld, [z.coeff(-m) for m in range(0, -z.val + 1)])


def factor_via_infinity(f: XPoly):
    """Monic factorization of f over A by recombining its roots at infinity.

    Returns the sorted list of monic irreducible factors, or None when the
    roots at infinity are not all simple and rational.
    """
    from itertools import combinations

    data = roots_at_infinity(f)
    if data is None:
        return None
    rts, _ = data
    fld = f.field
    place = Place.infinity(fld)
    n = f.degree
    remaining = list(range(n))
    factors = []
    cur = f
    size = 1
    while size <= len(remaining) // 2:
        found = False
        for S in combinations(remaining, size):
            prod = [ValSeries.one(place, rts[0].abs_prec + sum(abs(v) for v in data[1]) + 1)]
            for i in S:
                # multiply by (x - alpha_i)
                nxt = [ValSeries.zero(place)] * (len(prod) + 1)
                for k, c in enumerate(prod):
                    nxt[k + 1] = nxt[k + 1] + c
                    nxt[k] = nxt[k] - c * rts[i]
                prod = nxt
            g = XPoly([_truncate_poly(c, fld) for c in prod[:-1]] + [FqPoly.one(fld)])
            if _divides(g, cur):
                factors.append(g)
                quo, _ = xdivmod_monic(cur, g)
                cur = XPoly(quo)
                remaining = [i for i in remaining if i not in S]
                found = True
                break
        if not found:
            size += 1
    factors.append(cur)
    return sorted(factors, key=lambda g: (g.degree, [c.degree for c in g.coeffs]))


def quartic_has_quadratic_factor(f: XPoly) -> bool:
    """Whether a monic quartic (odd characteristic) is a product of two quadratics over k."""
    from .ratfn import RatFn

    p, q, s = depressed_quartic(f)
    if not q.is_zero():
        # (x^2 + u x + a)(x^2 - u x + b) needs u^2 a nonzero square root of this cubic
        one = FqPoly.one(f.field)
        cub = XPoly([-(q * q), p * p - s * 4, p * 2, one])
        return any(not U.is_zero() and is_square_k(U) for U in roots_in_k(cub))
    # biquadratic x^4 + p x^2 + s
    disc = p * p - s * 4
    if poly_sqrt(disc) is not None:
        return True
    w = poly_sqrt(s)
    if w is None:
        return False
    for sign in (1, -1):
        u2 = RatFn.from_poly(w * (2 * sign) - p)
        if is_square_k(u2):
            return True
    return False


# ---------------------------------------------------------------------------
# classification


@dataclass
class GaloisReport:
    group: str
    orientation: str = "reciprocal (monic in x)"
    degree: int = 0
    coefficient_degrees: list = field(default_factory=list)
    irreducibility: dict = field(default_factory=dict)
    resolvent_degrees: list = field(default_factory=list)
    resolvent: dict = field(default_factory=dict)
    discriminant: dict = field(default_factory=dict)
    eisenstein: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "orientation": self.orientation,
            "degree": self.degree,
            "coefficient_degrees": self.coefficient_degrees,
            "irreducibility": self.irreducibility,
            "resolvent_degrees": self.resolvent_degrees,
            "resolvent": self.resolvent,
            "discriminant": self.discriminant,
            "eisenstein": self.eisenstein,
        }


def _poly_str(v: FqPoly) -> str:
    return repr(v)


def _candidate_primes(fld: FqField, modprimes, bound: int):
    """Given primes first, then monic irreducibles up to ``bound``, lazily."""
    seen = []
    for v in modprimes or []:
        v = v.monic()
        seen.append(v)
        yield v
    for v in monic_irreducibles(fld, bound):
        if v not in seen:
            yield v


def _factor_status(f: XPoly, modprimes, scan_bound: int, modprime_bound: int, eis) -> dict:
    """Irreducibility verdict for f over k with the method that decided it.

    Cheap certificates first (Eisenstein, small primes), then exact factor
    and root searches, then the long scan over primes up to ``modprime_bound``.
    """
    if eis:
        v, orient = eis[0]
        return {"status": "irreducible", "method": "eisenstein", "prime": _poly_str(v), "orientation": orient}
    fld = f.field
    v = mod_prime_scan(f, _candidate_primes(fld, modprimes, scan_bound))
    if v is not None:
        return {"status": "irreducible", "method": "mod-prime", "prime": _poly_str(v)}
    facs = factor_via_infinity(f) if f.is_monic() else None
    if facs is not None:
        degs = [g.degree for g in facs]
        status = "irreducible" if len(facs) == 1 else "reducible"
        return {"status": status, "method": "recombination at infinity", "factor_degrees": degs}
    failure = ValueError("no certificate found")
    try:
        rts = roots_in_k(f)
        if rts:
            return {"status": "reducible", "method": "root", "roots": [repr(x) for x in rts]}
        if f.degree <= 3:
            return {"status": "irreducible", "method": "no root"}
        if f.degree == 4:
            if quartic_has_quadratic_factor(f):
                return {"status": "reducible", "method": "quadratic factor"}
            return {"status": "irreducible", "method": "no root, no quadratic factor"}
    except ValueError as exc:
        failure = exc
    v = mod_prime_scan(f, (u for u in _candidate_primes(fld, [], modprime_bound) if u.degree > scan_bound))
    if v is not None:
        return {"status": "irreducible", "method": "mod-prime", "prime": _poly_str(v)}
    raise failure


def quartic_galois_group(f: XPoly, modprimes=None, scan_bound: int = 4, modprime_bound: int = 6) -> GaloisReport:
    """Galois group of a quartic over k: S4, A4, D4-or-C4, V4, reducible or undecided.

    ``scan_bound`` caps the degree of Eisenstein candidates and
    ``modprime_bound`` the degree of primes tried for irreducible reductions.
    """
    if f.degree != 4:
        raise ValueError("quartic expected")
    fld = f.field
    rep = GaloisReport("undecided", degree=4, coefficient_degrees=f.degrees())
    if fld.p == 2:
        rep.irreducibility = {"status": "undecided", "method": "even characteristic"}
        return rep
    if not f.is_monic():
        # classify the monic transform lc^3 f(y / lc), same splitting field
        c = f.lc
        f = XPoly([a * c ** (3 - i) for i, a in enumerate(f.coeffs[:-1])] + [FqPoly.one(fld)])
        rep.orientation += ", scaled to monic"
    disc = quartic_discriminant(f)
    try:
        eis = eisenstein_scan(f.primitive_part(), scan_bound)
    except ValueError:
        eis = []
    rep.eisenstein = [(_poly_str(v), o) for v, o in eis]
    if disc.is_zero():
        rep.discriminant = {"zero": True}
        rep.irreducibility = {"status": "reducible", "method": "repeated factor"}
        rep.group = "reducible"
        return rep
    square = disc_is_square(disc)
    witness = None if square else nonresidue_witness(disc)
    rep.discriminant = {
        "degree": disc.degree,
        "is_square": square,
        "leading_coefficient": int(disc.lc),
        "nonresidue_prime": None if witness is None else _poly_str(witness),
    }
    try:
        irr = _factor_status(f, modprimes, scan_bound, modprime_bound, eis)
    except ValueError as exc:
        rep.irreducibility = {"status": "undecided", "method": str(exc)}
        return rep
    rep.irreducibility = irr
    if irr["status"] != "irreducible":
        rep.group = "reducible"
        return rep
    res = resolvent_cubic(f)
    rep.resolvent_degrees = res.degrees()
    try:
        rs = _factor_status(res, modprimes, scan_bound, modprime_bound, [])
    except ValueError as exc:
        rep.resolvent = {"status": "undecided", "method": str(exc)}
        return rep
    rep.resolvent = rs
    if rs["status"] == "irreducible":
        rep.group = "A4" if square else "S4"
        return rep
    if "factor_degrees" in rs:
        nroots = rs["factor_degrees"].count(1)
    else:
        nroots = len(rs.get("roots", [])) or len(roots_in_k(res))
    rep.group = "V4" if nroots == 3 else "D4-or-C4"
    return rep
