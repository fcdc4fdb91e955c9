"""Newton polygons of power series in z and Hensel extraction of zeros.

A segment of horizontal length L and slope s accounts for exactly L zeros of
valuation -s.  Only length-1 segments are lifted: their zero is simple and
lies in the base completion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionError
from .series import ValSeries


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    start_val: int
    end_val: int

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end_val - self.start_val, self.end - self.start)

    @property
    def zero_valuation(self) -> Fraction:
        return -self.slope

    def line(self, i: int) -> Fraction:
        return self.start_val + self.slope * (i - self.start)

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "slope": str(self.slope),
            "length": self.length,
        }


@dataclass
class NewtonPolygon:
    points: list  # (index, valuation or None)
    vertices: list = field(default_factory=list)
    segments: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "segments": [s.to_json() for s in self.segments]}


def newton_polygon(points) -> NewtonPolygon:
    """Lower convex hull of (index, valuation) pairs; None marks a zero coefficient."""
    finite = sorted((int(i), int(v)) for i, v in points if v is not None)
    if not finite:
        raise ValueError("all coefficients are zero")
    hull: list[tuple[int, int]] = []
    for pt in finite:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it is on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = [Segment(a[0], b[0], a[1], b[1]) for a, b in zip(hull, hull[1:])]
    return NewtonPolygon(list(points), hull, segs)


def _eval(coeffs: list[ValSeries], z: ValSeries) -> tuple[ValSeries, ValSeries]:
    """f(z) and f'(z) by Horner."""
    n = len(coeffs) - 1
    f = coeffs[n]
    df = coeffs[n] * 0 if n == 0 else None
    for k in range(n - 1, -1, -1):
        df = f if df is None else df * z + f
        f = f * z + coeffs[k]
    return f, df


def lift_precision_available(coeffs: list[ValSeries], seg: Segment) -> int:
    """Relative residual precision the coefficient data can support for this segment's zero."""
    vz = int(-seg.slope)
    vseg = seg.start_val + seg.start * vz
    return min(a.abs_prec + k * vz for k, a in enumerate(coeffs)) - vseg


def hensel_zero_lift(coeffs: list[ValSeries], seg: Segment, prec: int, max_iter: int = 64) -> ValSeries:
    """Zero z0 of sum a_k z^k on a length-1 segment with v(f(z0)) >= v_seg + prec.

    ``v_seg`` is the common valuation of the two dominant terms.  Raises
    ValueError for longer segments and PrecisionError when the coefficients
    are not known well enough.
    """
    if seg.length != 1 or seg.slope.denominator != 1:
        raise ValueError("zero is not certified rational and simple: segment length must be 1")
    vz = int(-seg.slope)
    vseg = seg.start_val + seg.start * vz
    avail = lift_precision_available(coeffs, seg)
    if avail < prec:
        raise PrecisionError(f"coefficients support residual precision {avail}, {prec} requested")
    i = seg.start
    a0, a1 = coeffs[i], coeffs[i + 1]
    res = a0.residue
    lead = res.neg(res.div(a0.lead(), a1.lead()))
    work = prec + 2
    z = ValSeries(a0.place, vz, [lead], work)
    for _ in range(max_iter):
        f, df = _eval(coeffs, z)
        if f.valuation() >= vseg + prec:
            # v(f'(z0)) = v_seg - v(z0) on a length-1 segment, so the residual
            # precision is exactly the relative precision of z0
            return z.with_prec(prec) if z.prec > prec else z
        step = f / df
        z = (z - step).with_prec(work)
    raise PrecisionError("Newton iteration did not reach the requested precision")
