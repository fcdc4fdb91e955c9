"""Text forms of polynomials accepted on the command line.

Either the JSON serialization of an FqPoly or an expression such as
``T^6 + 2*T + 1`` or ``u^2 + T*u + T^3``.  Constants are integer codes of F_q.
"""

from __future__ import annotations

import json
import re

from .field import FqField
from .poly import FqPoly

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\^(\d+))?$")


def parse_monomials(text: str, field: FqField, variables: tuple[str, ...]) -> dict:
    """Map exponent tuples to coefficient codes for a sum of monomials in ``variables``."""
    text = text.replace("**", "^").strip()
    if not text:
        raise ValueError("empty polynomial")
    out: dict = {}
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign, body = m.group(1), m.group(2).strip()
        coef = 1
        exps = [0] * len(variables)
        for fac in body.split("*"):
            fac = fac.strip()
            if fac.isdigit():
                coef *= int(fac)
                continue
            fm = _FACTOR.match(fac)
            if not fm or fm.group(1) not in variables:
                raise ValueError(f"unknown factor {fac!r} in {text!r}")
            exps[variables.index(fm.group(1))] += int(fm.group(2) or 1)
        code = field.from_int(coef) if field.m == 1 else coef % field.q
        if code and sign == "-":
            code = field.neg(code)
        key = tuple(exps)
        out[key] = field.add(out.get(key, 0), code)
    if pos != len(text):
        raise ValueError(f"cannot parse {text!r}")
    return {k: int(c) for k, c in out.items() if c}


def parse_poly(text: str, field: FqField, var: str = "T") -> FqPoly:
    text = text.strip()
    if text.startswith("{"):
        poly = FqPoly.from_json(json.loads(text))
        if poly.field != field:
            raise ValueError("polynomial is over a different field")
        return poly.with_var(var)
    mons = parse_monomials(text, field, (var,))
    deg = max((k[0] for k in mons), default=0)
    codes = [0] * (deg + 1)
    for (e,), c in mons.items():
        codes[e] = c
    return FqPoly(field, codes, var)


def parse_bivariate(text: str, field: FqField, outer: str, inner: str) -> list[FqPoly]:
    """Coefficients (lowest power of ``outer`` first) as polynomials in ``inner``."""
    mons = parse_monomials(text, field, (outer, inner))
    deg = max((k[0] for k in mons), default=0)
    rows = [[0] for _ in range(deg + 1)]
    for (a, b), c in mons.items():
        row = rows[a]
        row.extend([0] * (b + 1 - len(row)))
        row[b] = c
    return [FqPoly(field, row, inner) for row in rows]
