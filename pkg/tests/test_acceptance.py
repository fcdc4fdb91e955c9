"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are printed with capture disabled) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import json
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from ffzeta.carlitz import THETA, bernoulli_carlitz, carlitz_factorial, tensor_exp_log, tensor_power_action
from ffzeta.cli import run_subcommand
from ffzeta.cm import cm_hecke_coeffs
from ffzeta.factor import irreducible_test
from ffzeta.field import field_for
from ffzeta.hyperderiv import hyperderive, leibniz_check, power_formula, vadic_continuity_bound
from ffzeta.lift import (
    LiftProblem,
    TangentElt,
    liftability_check,
    multivalued_operator,
    separable_lift,
    tangent_matrix,
)
from ffzeta.poly import FqPoly
from ffzeta.ratfn import RatFn
from ffzeta.series import PadicInt, Place, ValSeries
from ffzeta.zeta import (
    pi_covariance_check,
    remove_trivial_zero,
    wan_identity_check,
    zero_field_analysis,
    zeta_at_positive,
    zeta_series_row,
    zeta_special_poly,
    zeta_tilde,
)

SEED = 20240611


def P(r, cs, var="T"):
    return FqPoly(field_for(r), cs, var)


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_subcommand(list(argv), out, err)
    return code, (json.loads(out.getvalue())["result"] if code == 0 else err.getvalue())


# ---------------------------------------------------------------------------
# criteria; each returns (ok, detail)


def criterion_1():
    """Roberts: r = 5, j = 1249 through the CLI, under 60 s."""
    t0 = time.perf_counter()
    code, z = _cli("zeta-poly", "--r", "5", "--j", "1249")
    code2, g = _cli("galois", "--r", "5", "--j", "1249", "--modprime", "T^6+T^5+T^4+T^3+T^2+T+1")
    elapsed = time.perf_counter() - t0
    if code or code2:
        return False, f"exit codes {code}, {code2}"
    degs = z["coefficient_degrees"]
    check = g["modprime_checks"][0]
    ok = (
        z["degree"] == 4
        and degs[1:] == [1245, 2470, 3595, 4220]
        and g["group"] == "S4"
        and check["resolvent_irreducible"]
        and not g["discriminant"]["is_square"]
        and elapsed < 60
    )
    return ok, f"degrees {degs[1:]}, group {g['group']}, resolvent irreducible mod sextic {check['resolvent_irreducible']}, disc square {g['discriminant']['is_square']}, {elapsed:.1f}s"


def criterion_2():
    """Trivial zeros: z(1,-j) = 0 and exact division by (1 - 1/x)."""
    t0 = time.perf_counter()
    checked = 0
    for r in (2, 3, 5):
        for j in range(r - 1, 201, r - 1):
            z = zeta_special_poly(r, j)
            if not z.at_one().is_zero():
                return False, f"z(1,-{j}) != 0 at r={r}"
            t = remove_trivial_zero(z)
            back = [t.coeff(d) - t.coeff(d - 1) for d in range(z.degree + 1)]
            if back != list(z.coeffs):
                return False, f"division not exact at r={r}, j={j}"
            checked += 1
    elapsed = time.perf_counter() - t0
    return elapsed < 300, f"{checked} (r, j) pairs, {elapsed:.1f}s"


def _spot_row(r, y, prec=40, max_dmax=24):
    """Smallest d_max giving at least 3 certified polygon vertices."""
    for d_max in range(3, max_dmax + 1):
        rep = zero_field_analysis(zeta_series_row(r, y, d_max, prec), 20)
        if rep.certified_vertices >= 3:
            return d_max, rep
    return None, rep


SPOT_Y = [Fraction(1, 3), Fraction(-1, 3), Fraction(1, 5), Fraction(-1, 5), Fraction(1, 7),
          Fraction(-1, 7), Fraction(3, 5), Fraction(-3, 5), Fraction(1, 9), Fraction(-1, 9)]


def criterion_3():
    """Newton polygons of z~ have length-1 integer-slope segments; lifted zeros re-substitute."""
    worst = None
    zeros = 0
    for r in (2, 3, 5):
        for j in range(1, 201):
            rep = zero_field_analysis(zeta_tilde(r, j), 20)
            for z in rep.zeros:
                if z.segment.length != 1 or z.slope.denominator != 1:
                    return False, f"segment {z.segment.to_json()} at r={r}, j={j}"
                if z.residual is None or z.residual < 20:
                    return False, f"residual {z.residual} at r={r}, j={j}"
                worst = z.residual if worst is None else min(worst, z.residual)
                zeros += 1
    spot = []
    for y in SPOT_Y:
        d_max, rep = _spot_row(2, PadicInt(2, y, 6))
        good = d_max is not None and all(
            z.segment.length == 1 and z.slope.denominator == 1 for z in rep.zeros if z.certified
        )
        spot.append((str(y), d_max, rep.certified_vertices, good))
    spot_ok = all(s[3] for s in spot)
    detail = f"{zeros} zeros, min residual {worst}; spot checks (y, d_max, vertices): " + ", ".join(
        f"({y}, {d}, {v})" for y, d, v, _ in spot
    )
    return spot_ok, detail


def criterion_4():
    """Wan identity to precision 60 for v = (T)."""
    n = 0
    for r in (2, 3, 5):
        for j in range(r - 1, 101, r - 1):
            ok, info = wan_identity_check(r, j, 60)
            if not ok:
                return False, f"mismatch at r={r}, j={j}"
            n += 1
    return True, f"{n} (r, j) pairs equal to precision 60"


def criterion_5():
    prob = LiftProblem([P(5, [0, 0, 0, 1]), P(5, [0, 1]), P(5, [1])], 2)
    X = separable_lift(prob)
    lam = prob.lam()
    th = prob.ext.scalar(P(5, [0, 1], THETA))
    want = (-lam - th * th * 3) / (lam * 2 + th)
    ok = X.c[0] == lam and X.c[1] == want
    return ok, f"eps coefficient {X.c[1]!r}"


def criterion_6():
    th2 = RatFn.from_poly(P(2, [0, 1], THETA))
    obs = liftability_check(TangentElt([th2, th2.one()], 2, th2.zero(), th2.one()), 2, 1)
    th3 = RatFn.from_poly(P(3, [0, 1], THETA))
    scalars = [
        liftability_check(TangentElt([th2], 2, th2.zero(), th2.one()), 2, 1),
        liftability_check(TangentElt([th3 * th3 + 1], 2, th3.zero(), th3.one()), 3, 1),
    ]
    ok = obs.status == "obstructed" and all(s.status == "scalar-only" for s in scalars)
    return ok, f"theta + eps at p=2: {obs.status}; scalar targets: {[s.status for s in scalars]}"


def criterion_7():
    rng = np.random.default_rng(SEED)
    cases = leib = vb = 0
    for _ in range(600):
        r = int(rng.choice([2, 3, 5]))
        f = P(r, list(rng.integers(0, r, int(rng.integers(1, 6)))))
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 7))
        if power_formula(f, m, n) != hyperderive(n, f**m):
            return False, f"power formula fails for f={f!r}, m={m}, n={n}, r={r}"
        cases += 1
        g = P(r, list(rng.integers(0, r, int(rng.integers(1, 11)))))
        if not leibniz_check(n, f, g):
            return False, f"Leibniz fails for {f!r}, {g!r}, n={n}"
        leib += 1
    tight = 0
    for _ in range(150):
        r = int(rng.choice([2, 3, 5]))
        while True:
            f = P(r, list(rng.integers(0, r, int(rng.integers(1, 4)))) + [1])
            if irreducible_test(f):
                break
        c = P(r, list(rng.integers(0, r, 4)))
        m = int(rng.integers(2, 9))
        for n in range(1, m):
            if not vadic_continuity_bound(n, c, f, m):
                return False, f"continuity bound fails for c={c!r}, f={f!r}, m={m}, n={n}"
            vb += 1
            d = hyperderive(n, c * f**m)
            tight += not d.is_zero() and not (d % f ** (m - n + 1)).is_zero()
    return tight > 0, f"{cases} power-formula cases, {leib} Leibniz cases, {vb} continuity cases, {tight} tight"


def criterion_8():
    rng = np.random.default_rng(SEED + 8)
    n_checked = 0
    for r in (2, 3, 5):
        for _ in range(200):
            a = P(r, list(rng.integers(0, r, int(rng.integers(1, 8)))))
            for n in range(1, 5):
                t0 = tensor_power_action(n, a).tau0()
                for i in range(n):
                    for j in range(n):
                        want = hyperderive(j - i, a).with_var(THETA) if j >= i else P(r, [], THETA)
                        if t0[i][j] != want:
                            return False, f"mismatch at r={r}, n={n}, a={a!r}"
                n_checked += 1
    return True, f"{n_checked} (r, a, n) cases"


def criterion_9():
    r, N = 2, 8
    results = []
    for n in (1, 2):
        e, lg = tensor_exp_log(r, n, N)
        for cs in ([0, 1], [1, 0, 1], [0, 1, 0, 1]):
            a = P(r, cs)
            psi = multivalued_operator(tangent_matrix(a, n), e, lg, N)
            direct = tensor_power_action(n, a, kind=RatFn).truncate(N)
            results.append((n, repr(a), psi == direct))
    return all(x[2] for x in results), ", ".join(f"n={n} a={a}: {ok}" for n, a, ok in results)


def criterion_10():
    r, prec = 3, 30
    place = Place.infinity(field_for(r))

    def ratio(i):
        z = zeta_at_positive(r, i, prec)
        c = RatFn.from_poly(carlitz_factorial(r, i)) / bernoulli_carlitz(r, i)
        return z * ValSeries.from_ratfn(c.with_var("T"), place, prec)

    X, Y = ratio(2), ratio(4)
    rel = (X * X - Y).valuation() - Y.valuation()
    return rel >= 25, f"v(X^2 - Y) - v(Y) = {rel}"


def criterion_11():
    r, prec = 3, 40
    place = Place.infinity(field_for(r))
    u = ValSeries(place, 0, [1, 1], prec)
    out = []
    for y in (1, -1, 3):
        ok, rep = pi_covariance_check(r, y, u, 4, prec)
        out.append((y, ok, rep["coefficients_match"], len(rep["zeros"])))
    return all(o[1] for o in out), ", ".join(f"y={y}: coefficients {c}, zeros matched {k}" for y, _, c, k in out)


def criterion_12():
    geo0 = cm_hecke_coeffs("geometric", 0, 6)
    const = [cm_hecke_coeffs("constant-field", y, 6, r=3) for y in (-1, -2, -3)]
    geo1 = cm_hecke_coeffs("geometric", -1, 6)
    ok = geo0.is_trivial() and all(c.classification == "K" for c in const) and geo1.classification == "K1"
    outside = [d for d, v in geo1.in_K.items() if not v]
    return ok, (
        f"geometric y=0 trivial {geo0.is_trivial()}; constant-field y=-1,-2,-3 in K "
        f"{[c.classification == 'K' for c in const]}; geometric y=-1 degrees outside K {outside}"
    )


CRITERIA = {
    1: ("Roberts quartic and S4", criterion_1),
    2: ("trivial zeros", criterion_2),
    3: ("simple K-rational zeros", criterion_3),
    4: ("Wan identity", criterion_4),
    5: ("eps_lambda closed form", criterion_5),
    6: ("inseparability obstruction", criterion_6),
    7: ("hyperderivative suite", criterion_7),
    8: ("tangent action and hyperderivatives", criterion_8),
    9: ("multi-valued operator identity", criterion_9),
    10: ("Bernoulli-Carlitz cross-check", criterion_10),
    11: ("uniformizer covariance", criterion_11),
    12: ("CM coefficient fields", criterion_12),
}


def _line(k):
    name, fn = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k} ({name}): {detail} [{time.perf_counter() - t0:.1f}s]"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = _line(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, line = _line(k)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
