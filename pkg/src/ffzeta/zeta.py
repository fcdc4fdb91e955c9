"""Zeta values and special polynomials for A = F_r[T].

Conventions: the sign of a polynomial is its leading coefficient, the
uniformizer at infinity is pi = 1/T and <n> = n / T^deg n for monic n.  Series
rows are power series in z = 1/x; a zero z0 corresponds to x = 1/z0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvariantError
from .field import FqField, field_for
from .newton import NewtonPolygon, Segment, hensel_zero_lift, lift_precision_available, newton_polygon
from .poly import FqPoly, enumerate_monic, pow_charp
from .powersum import base_digits, digit_sum, sum_of_powers, sum_unit_powers
from .series import PadicInt, Place, ValSeries, digits_needed, unit_pow_padic


# ---------------------------------------------------------------------------
# power sums and special polynomials


@lru_cache(maxsize=4096)
def power_sum(r: int, d: int, j: int) -> FqPoly:
    """S_d(j): the sum of n^j over monic n of degree d in F_r[T]."""
    if d < 0 or j < 0:
        raise ValueError("degree and exponent must be non-negative")
    F = field_for(r)
    return FqPoly(F, sum_of_powers(F, d, j))


def power_sum_direct(r: int, d: int, j: int) -> FqPoly:
    """Same sum, one monic at a time with characteristic-p powering."""
    F = field_for(r)
    acc = FqPoly.zero(F)
    for n in enumerate_monic(F, d):
        acc = acc + pow_charp(n, j)
    return acc


@dataclass
class ZetaPoly:
    """sum_d S_d x^(-d) with coefficients in A."""

    r: int
    j: int
    coeffs: list
    tilde: bool = False
    stop_d: int | None = None
    v: FqPoly | None = None

    @property
    def field(self) -> FqField:
        return field_for(self.r)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, d: int) -> FqPoly:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else FqPoly.zero(self.field)

    def at_one(self) -> FqPoly:
        acc = FqPoly.zero(self.field)
        for c in self.coeffs:
            acc = acc + c
        return acc

    def degrees(self) -> list[int]:
        return [c.degree for c in self.coeffs]

    def valuations(self) -> list:
        """Valuations at infinity of the coefficients (None for zero)."""
        return [None if c.is_zero() else -c.degree for c in self.coeffs]

    def to_json(self) -> dict:
        d = {
            "r": self.r,
            "j": self.j,
            "tilde": self.tilde,
            "stop_d": self.stop_d,
            "coeffs": [c.to_json() for c in self.coeffs],
        }
        if self.v is not None:
            d["v"] = self.v.to_json()
        return d


def _strip(coeffs: list) -> list:
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


@lru_cache(maxsize=2048)
def zeta_special_poly(r: int, j: int, extra: int = 12) -> ZetaPoly:
    """z(x,-j) = sum_d S_d(j) x^(-d).

    Coefficients are computed until d(r-1) exceeds the base-r digit sum of j
    and two consecutive coefficients vanish.  ``extra`` bounds how far past
    the digit-sum degree the search may go before declaring a broken invariant.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    ell = digit_sum(j, r)
    coeffs = []
    run = 0
    d = 0
    while True:
        s = power_sum(r, d, j)
        coeffs.append(s)
        run = run + 1 if s.is_zero() else 0
        if d * (r - 1) > ell and run >= 2:
            break
        d += 1
        if d > ell // (r - 1) + extra:
            raise InvariantError(f"power sums for j={j} did not vanish past degree {d}")
    return ZetaPoly(r, j, _strip(coeffs), stop_d=d)


def has_trivial_zero(r: int, j: int) -> bool:
    return j > 0 and j % (r - 1) == 0


def remove_trivial_zero(z: ZetaPoly) -> ZetaPoly:
    """Divide by (1 - 1/x) when (r-1) | j, j > 0; otherwise only set the flag."""
    if z.tilde:
        return z
    if not has_trivial_zero(z.r, z.j):
        return ZetaPoly(z.r, z.j, list(z.coeffs), True, z.stop_d, z.v)
    # z_d = w_d - w_(d-1), so w is the running sum and the final sum must vanish
    w = []
    acc = FqPoly.zero(z.field)
    for c in z.coeffs:
        acc = acc + c
        w.append(acc)
    if not w[-1].is_zero():
        raise InvariantError(f"z(1) != 0 for r={z.r}, j={z.j}")
    w.pop()
    return ZetaPoly(z.r, z.j, _strip(w or [FqPoly.zero(z.field)]), True, z.stop_d, z.v)


def zeta_tilde(r: int, j: int) -> ZetaPoly:
    return remove_trivial_zero(zeta_special_poly(r, j))


def vadic_zeta_poly(r: int, v: FqPoly, j: int) -> ZetaPoly:
    """Coefficients sum over monic n of degree d with v not dividing n, of n^j."""
    Place.finite(v)  # validates irreducibility
    z = zeta_special_poly(r, j)
    dv = v.degree
    vj = pow_charp(v, j)
    coeffs = []
    for d in range(z.degree + dv + 1):
        c = z.coeff(d)
        if d >= dv:
            c = c - vj * z.coeff(d - dv)
        coeffs.append(c)
    return ZetaPoly(r, j, _strip(coeffs), stop_d=z.stop_d, v=v)


# ---------------------------------------------------------------------------
# series rows at y in Z_p


def tail_lower_bound(r: int, d: int) -> int:
    """Lower bound for the valuation of any S_d(y), y in Z_p.

    Expand <n>^(-y) in the free coefficients a_1..a_d of <n> = 1 + a_1 pi + ...
    A monomial prod a_i^(k_i) survives summation over F_r only if every k_i is
    a positive multiple of r - 1, so each k_i has base-p digit sum >= p - 1,
    and its multinomial coefficient is nonzero mod p only if the k_i add
    without carries.  The cheapest such weight sum(i * k_i) puts
    k_i = (p-1) p^(d-i).
    """
    p = field_for(r).p
    return (p - 1) * sum(i * p ** (d - i) for i in range(1, d + 1))


def _bound_step(r: int, d: int) -> int:
    # tail_lower_bound(r, d + 1) - tail_lower_bound(r, d)
    return field_for(r).p ** (d + 1) - 1


def _as_padic(p: int, y) -> PadicInt:
    if isinstance(y, PadicInt):
        if y.p != p:
            raise ValueError("exponent lives in the wrong p-adic ring")
        return y
    if isinstance(y, Fraction):
        raise ValueError("pass rational exponents as PadicInt with a digit count")
    return PadicInt(p, int(y))


def exponent_representative(r: int, y: PadicInt, prec: int) -> int:
    """Non-negative integer j' with <n>^(-y) = <n>^(j') mod pi^prec for every monic n."""
    p = field_for(r).p
    n = digits_needed(p, prec)
    rep = (-y).residue_mod(n)
    if y.is_exact and -y.value >= 0 and digit_sum(-y.value, r) < digit_sum(rep, r):
        return -y.value
    return rep


@dataclass
class ZetaSeriesRow:
    r: int
    y: PadicInt
    prec: int
    d_max: int
    coeffs: list
    d_cert: int | None = None

    def valuation_bound(self, d: int) -> int:
        """Lower bound for v(S_d) at an index whose value is not known exactly."""
        b = tail_lower_bound(self.r, d)
        if d <= self.d_max or (self.d_cert is not None and d > self.d_cert):
            b = max(b, self.prec)
        return b

    def known_points(self) -> list:
        return [(d, None if s.is_zero() else s.valuation()) for d, s in enumerate(self.coeffs)]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "y": {"value": self.y.value, "M": self.y.M},
            "prec": self.prec,
            "d_max": self.d_max,
            "d_cert": self.d_cert,
            "coeffs": [s.to_json() for s in self.coeffs],
        }


def zeta_series_row(r: int, y, d_max: int, prec: int) -> ZetaSeriesRow:
    """S_d(y) = sum over monic n of degree d of <n>^(-y), for d <= d_max, mod pi^prec."""
    F = field_for(r)
    p = F.p
    y = _as_padic(p, y)
    n = digits_needed(p, prec)
    e = -y
    digits = e.digits(n)  # raises PrecisionError when y has too few digits
    place = Place.infinity(F)
    coeffs = []
    for d in range(d_max + 1):
        c = sum_unit_powers(F, d, digits, prec)
        coeffs.append(ValSeries(place, 0, c, prec))
    jrep = exponent_representative(r, y, prec)
    return ZetaSeriesRow(r, y, prec, d_max, coeffs, digit_sum(jrep, r) // (r - 1))


def zeta_at_positive(r: int, i: int, prec: int) -> ValSeries:
    """zeta_A(i) = sum over monic n of n^(-i), to absolute precision prec."""
    if i < 1:
        raise ValueError("i must be positive")
    F = field_for(r)
    p = F.p
    total = np.zeros(prec, dtype=np.int64)
    d = 0
    while True:
        Q = prec - d * i
        if Q <= 0 or d >= Q:
            break
        n = digits_needed(p, Q)
        block = sum_unit_powers(F, d, base_digits((-i) % p**n, p), Q)
        total[d * i :] = F.add(total[d * i :], block[: prec - d * i])
        d += 1
    return ValSeries(Place.infinity(F), 0, total, prec)


# ---------------------------------------------------------------------------
# zero analysis


@dataclass
class ZeroRecord:
    segment: Segment
    certified: bool
    k_rational: bool
    simple: bool
    zero: ValSeries | None = None
    residual: int | None = None
    lift_prec: int | None = None
    note: str = ""

    @property
    def slope(self) -> Fraction:
        return self.segment.slope

    @property
    def valuation(self) -> Fraction:
        return -self.segment.slope

    def to_json(self) -> dict:
        d = {
            "slope": str(self.slope),
            "length": self.segment.length,
            "zero_valuation": str(self.valuation),
            "certified": self.certified,
            "k_rational": self.k_rational,
            "simple": self.simple,
            "residual": self.residual,
            "lift_prec": self.lift_prec,
        }
        if self.zero is not None:
            d["zero"] = self.zero.to_json()
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ZeroFieldReport:
    parameter: str
    polygon: NewtonPolygon
    zeros: list = field(default_factory=list)

    @property
    def all_in_K(self) -> bool:
        return all(z.certified and z.k_rational for z in self.zeros)

    @property
    def all_simple(self) -> bool:
        return all(z.certified and z.simple for z in self.zeros)

    @property
    def zero_field(self) -> str:
        return "K" if self.all_in_K else "not-certified"

    @property
    def certified_vertices(self) -> int:
        pts = set()
        for z in self.zeros:
            if z.certified:
                pts.add(z.segment.start)
                pts.add(z.segment.end)
        return len(pts)

    def to_json(self) -> dict:
        return {
            "parameter": self.parameter,
            "polygon": self.polygon.to_json(),
            "zeros": [z.to_json() for z in self.zeros],
            "all_in_K": self.all_in_K,
            "all_simple": self.all_simple,
            "zero_field": self.zero_field,
            "certified_vertices": self.certified_vertices,
        }


def _exact_lift_coeffs(polys: list, seg: Segment, prec: int) -> list:
    place = Place.infinity(polys[0].field)
    vz = int(-seg.slope)
    vseg = seg.start_val + seg.start * vz
    out = []
    for k, a in enumerate(polys):
        if a.is_zero():
            out.append(ValSeries.zero(place))
            continue
        need = vseg + prec + 2 - k * vz  # absolute precision this term needs
        out.append(ValSeries.from_poly(a, place, max(1, need + a.degree)))
    return out


def _analyze_exact(z: ZetaPoly, prec: int) -> ZeroFieldReport:
    poly = newton_polygon(list(enumerate(z.valuations())))
    rep = ZeroFieldReport(f"j={z.j}", poly)
    for seg in poly.segments:
        ok = seg.length == 1
        rec = ZeroRecord(seg, True, ok, ok)
        if ok:
            coeffs = _exact_lift_coeffs(z.coeffs, seg, prec)
            z0 = hensel_zero_lift(coeffs, seg, prec)
            rec.zero = z0
            rec.lift_prec = prec
            rec.residual = _residual(coeffs, z0) - (seg.start_val + seg.start * int(-seg.slope))
        rep.zeros.append(rec)
    return rep


def _residual(coeffs: list, z: ValSeries) -> int:
    acc = coeffs[-1]
    for a in reversed(coeffs[:-1]):
        acc = acc * z + a
    return acc.valuation()


def segment_certified(row: ZetaSeriesRow, seg: Segment, limit: int = 100000) -> bool:
    """True when every coefficient not known exactly lies strictly above the segment's line."""
    for d, v in row.known_points():
        if v is None and row.valuation_bound(d) <= seg.line(d):
            return False
    for d in range(row.d_max + 1, limit):
        if row.valuation_bound(d) <= seg.line(d):
            return False
        # past this point the bound outgrows the line for good
        if tail_lower_bound(row.r, d) > seg.line(d) and _bound_step(row.r, d) >= seg.slope:
            return True
    return False


def row_tail_valuation(row: ZetaSeriesRow, vz: int, limit: int = 100000) -> int:
    """Lower bound for v(sum_{d > d_max} S_d z^d) when v(z) = vz."""
    best = None
    d = row.d_max + 1
    while d < limit:
        val = row.valuation_bound(d) + d * vz
        best = val if best is None else min(best, val)
        if tail_lower_bound(row.r, d) + d * vz > best and _bound_step(row.r, d) + vz >= 0:
            break
        d += 1
    return best


def _row_lift_coeffs(row: ZetaSeriesRow) -> list:
    # a coefficient that vanishes to the working precision also obeys the tail bound
    out = []
    for d, s in enumerate(row.coeffs):
        if s.is_zero():
            s = ValSeries.zero(s.place, max(s.val, row.valuation_bound(d)))
        out.append(s)
    return out


def _analyze_row(row: ZetaSeriesRow, prec: int) -> ZeroFieldReport:
    poly = newton_polygon(row.known_points())
    rep = ZeroFieldReport(f"y={row.y!r}", poly)
    for seg in poly.segments:
        cert = segment_certified(row, seg)
        ok = seg.length == 1
        rec = ZeroRecord(seg, cert, ok and cert, ok and cert)
        if not cert:
            rec.note = "insufficient precision"
        elif ok:
            vz = int(-seg.slope)
            vseg = seg.start_val + seg.start * vz
            coeffs = _row_lift_coeffs(row)
            avail = min(lift_precision_available(coeffs, seg), row_tail_valuation(row, vz) - vseg)
            target = min(prec, avail)
            if target >= 1:
                z0 = hensel_zero_lift(coeffs, seg, target)
                rec.zero, rec.lift_prec = z0, target
                rec.residual = _residual(coeffs, z0) - vseg
                if target < prec:
                    rec.note = f"lift limited to relative precision {target}"
            else:
                rec.note = "lift impossible at this precision"
        rep.zeros.append(rec)
    return rep


def zero_field_analysis(obj, prec: int = 20) -> ZeroFieldReport:
    """Newton polygon and lifted zeros of a special polynomial or a series row."""
    if isinstance(obj, ZetaPoly):
        if obj.coeff(0) != FqPoly.one(obj.field):
            raise ValueError("constant coefficient must be 1")
        return _analyze_exact(obj, prec)
    if isinstance(obj, ZetaSeriesRow):
        if obj.coeffs[0].is_zero():
            raise ValueError("zero row")
        return _analyze_row(obj, prec)
    raise TypeError("expected ZetaPoly or ZetaSeriesRow")


# ---------------------------------------------------------------------------
# identities


def _normalized_coeff(s: FqPoly, d: int, j: int, abs_prec: int, place: Place) -> ValSeries:
    """T^(-dj) * s as a series at infinity known to absolute precision abs_prec."""
    if s.is_zero():
        return ValSeries.zero(place)
    val = d * j - s.degree
    return ValSeries.from_poly(s, place, max(1, abs_prec - val)).shift(d * j)


def wan_identity_check(r: int, j: int, prec: int = 60) -> tuple[bool, dict]:
    """Check (1 - 1/x)^(-1) zeta_{A,(T)}(x,-j) = zeta_A(x,-j) coefficientwise mod pi^prec.

    The left side maps T -> 1/T on the v-adic coefficients.
    """
    if not has_trivial_zero(r, j):
        raise ValueError("need j > 0 with (r-1) | j")
    F = field_for(r)
    place = Place.infinity(F)
    T = FqPoly.gen(F)
    V = vadic_zeta_poly(r, T, j)
    Z = zeta_special_poly(r, j)
    D = max(V.degree, Z.degree) + 2
    lhs = ValSeries.zero(place)
    rows = []
    ok = True
    for d in range(D + 1):
        vd = V.coeff(d)
        # T -> 1/T turns the coefficient list into a polynomial in pi
        img = ValSeries(place, 0, vd.c, prec) if not vd.is_zero() else ValSeries.zero(place)
        lhs = (lhs + img).with_abs_prec(prec)
        rhs = _normalized_coeff(Z.coeff(d), d, j, prec, place).with_abs_prec(prec)
        good = lhs.equal_to(rhs, prec) if lhs.abs_prec >= prec and rhs.abs_prec >= prec else (lhs - rhs).valuation() >= prec
        ok &= good
        rows.append({"d": d, "match": good, "valuation": None if rhs.is_zero() else rhs.valuation()})
    return ok, {"r": r, "j": j, "prec": prec, "rows": rows}


def _monic_unit_alt(n: FqPoly, pi2: ValSeries, prec: int) -> ValSeries:
    place = pi2.place
    s = ValSeries.from_poly(n, place, prec) * pi2**n.degree
    return s.with_prec(prec)


def alt_series_row(r: int, y, u: ValSeries, d_max: int, prec: int) -> ZetaSeriesRow:
    """Series row for the uniformizer pi/u, summed one monic at a time."""
    F = field_for(r)
    p = F.p
    y = _as_padic(p, y)
    place = Place.infinity(F)
    pi2 = ValSeries.uniformizer(place, prec) / u
    coeffs = []
    for d in range(d_max + 1):
        acc = ValSeries.zero(place, prec)
        for n in enumerate_monic(F, d):
            un = _monic_unit_alt(n, pi2, prec)
            acc = acc + unit_pow_padic(un, -y, prec)
        coeffs.append(acc.with_abs_prec(prec))
    jrep = exponent_representative(r, y, prec)
    return ZetaSeriesRow(r, y, prec, d_max, coeffs, digit_sum(jrep, r) // (r - 1))


def pi_covariance_check(r: int, y, u: ValSeries, d_max: int, prec: int, lift_prec: int = 10) -> tuple[bool, dict]:
    """Compare rows for pi and pi/u: S1_d = u^(-d y) S2_d, and certified zeros scale by u^y."""
    if u.is_zero() or u.val != 0 or u.lead() != 1:
        raise ValueError("u must be a 1-unit")
    F = field_for(r)
    y = _as_padic(F.p, y)
    row1 = zeta_series_row(r, y, d_max, prec)
    row2 = alt_series_row(r, y, u, d_max, prec)
    coeff_ok = True
    for d in range(d_max + 1):
        factor = unit_pow_padic(u, -(y * d), prec)
        if not (row1.coeffs[d] - factor * row2.coeffs[d]).valuation() >= prec:
            coeff_ok = False
    rep1 = zero_field_analysis(row1, lift_prec)
    rep2 = zero_field_analysis(row2, lift_prec)
    uy = unit_pow_padic(u, y, prec)
    matches = []
    z1s = [z for z in rep1.zeros if z.zero is not None]
    z2s = [z for z in rep2.zeros if z.zero is not None]
    zero_ok = len(z1s) == len(z2s)
    for a, b in zip(z1s, z2s):
        n = min(a.zero.abs_prec, (b.zero * uy).abs_prec)
        good = (a.zero - b.zero * uy).valuation() >= n
        matches.append({"valuation": str(a.valuation), "match": good, "to": n})
        zero_ok &= good
    flags_ok = rep1.zero_field == rep2.zero_field
    report = {
        "r": r,
        "y": repr(y),
        "prec": prec,
        "d_max": d_max,
        "coefficients_match": coeff_ok,
        "zeros": matches,
        "zero_field": [rep1.zero_field, rep2.zero_field],
    }
    return coeff_ok and zero_ok and flags_ok, report
