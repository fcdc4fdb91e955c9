"""Command-line entry point: ``ffzeta <subcommand> [flags]``.

Every subcommand prints one JSON document (``"schema": 1``) or, with
``--csv``, a flat table.  A manifest with the config hash, versions and
timings goes to ``<out>/manifest.json`` when ``--out`` is given and to
stderr otherwise, so stdout is byte-identical across runs.

Exit codes: 0 success, 2 usage, 3 precision shortfall, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .carlitz import (
    bernoulli_carlitz,
    carlitz_factorial,
    tensor_exp_log,
    tensor_power_action,
    vadic_reduce_action,
)
from .cm import cm_hecke_coeffs
from .config import RunConfig, content_hash
from .errors import InvariantError, PrecisionError
from .field import field_for
from .galois import irreducible_mod_prime, quartic_galois_group, resolvent_cubic, xpoly_from_zeta
from .hyperderiv import hyperderive, power_formula, vadic_continuity_bound
from .lift import (
    LiftProblem,
    TangentElt,
    lift_residual,
    liftability_check,
    multivalued_operator,
    separable_lift,
    tangent_matrix,
)
from .parse import parse_bivariate, parse_poly
from .poly import FqPoly, set_karatsuba_threshold
from .ratfn import RatFn
from .series import PadicInt
from .zeta import (
    has_trivial_zero,
    vadic_zeta_poly,
    wan_identity_check,
    zero_field_analysis,
    zeta_series_row,
    zeta_special_poly,
    zeta_tilde,
)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_PRECISION, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Output:
    def __init__(self, payload: dict, header: list[str] | None = None, rows: list | None = None):
        self.payload = payload
        self.header = header
        self.rows = rows


# ---------------------------------------------------------------------------
# helpers


def _field(r: int):
    try:
        return field_for(r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _poly(text: str, r: int, var: str = "T") -> FqPoly:
    try:
        return parse_poly(text, _field(r), var)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _padic(text: str, p: int, digits: int | None) -> PadicInt:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad exponent {text!r}") from exc
    if value.denominator != 1 and digits is None:
        raise UsageError("a rational exponent needs --digits")
    return PadicInt(p, value, digits)


def _zeta_table(z) -> tuple[list[str], list]:
    rows = [[d, c.degree, None if c.is_zero() else -c.degree] for d, c in enumerate(z.coeffs)]
    return ["d", "coefficient_degree", "valuation"], rows


def _zero_table(rep) -> tuple[list[str], list]:
    rows = []
    for i, z in enumerate(rep.zeros):
        rows.append([i, str(z.slope), str(z.valuation), z.segment.length, z.certified, z.simple, z.k_rational, z.residual])
    return ["zero", "slope", "valuation", "length", "certified", "simple", "k_rational", "residual"], rows


def _ratfn_action(n: int, a: FqPoly):
    return tensor_power_action(n, a.with_var("T"), kind=RatFn)


# ---------------------------------------------------------------------------
# zeta-engine


def cmd_zeta_poly(a, cfg):
    z = zeta_tilde(cfg.r, a.j) if a.tilde else zeta_special_poly(cfg.r, a.j)
    payload = {
        "r": cfg.r,
        "j": a.j,
        "tilde": z.tilde,
        "degree": z.degree,
        "coefficient_degrees": z.degrees(),
        "stop_d": z.stop_d,
        "trivial_zero": has_trivial_zero(cfg.r, a.j),
        "value_at_one_is_zero": z.at_one().is_zero(),
        "coeffs": [c.to_json() for c in z.coeffs],
    }
    return Output(payload, *_zeta_table(z))


def cmd_zeta_row(a, cfg):
    y = _padic(a.y, _field(cfg.r).p, a.digits)
    row = zeta_series_row(cfg.r, y, cfg.d_max, cfg.prec)
    payload = row.to_json()
    payload["valuations"] = [v for _, v in row.known_points()]
    rows = [[d, v] for d, v in row.known_points()]
    return Output(payload, ["d", "valuation"], rows)


def cmd_vadic_zeta(a, cfg):
    v = _poly(a.v, cfg.r)
    z = vadic_zeta_poly(cfg.r, v, a.j)
    payload = {"r": cfg.r, "j": a.j, "v": v.to_json(), "coefficient_degrees": z.degrees(), "coeffs": [c.to_json() for c in z.coeffs]}
    return Output(payload, *_zeta_table(z))


def cmd_wan_check(a, cfg):
    ok, info = wan_identity_check(cfg.r, a.j, a.prec if a.prec is not None else 60)
    info["equal"] = ok
    rows = [[x["d"], x["match"], x["valuation"]] for x in info["rows"]]
    return Output(info, ["d", "match", "valuation"], rows)


def cmd_cm(a, cfg):
    example = {"constfield": "constant-field", "geometric": "geometric"}[a.example]
    res = cm_hecke_coeffs(example, a.y, cfg.d_max, r=cfg.r)
    payload = res.to_json()
    payload["trivial"] = res.is_trivial()
    rows = [[d, c.degree, res.in_K[d]] for d, c in res.coeffs.items()]
    return Output(payload, ["d", "coefficient_degree", "in_K"], rows)


def cmd_zero_report(a, cfg):
    if (a.j is None) == (a.y is None):
        raise UsageError("give exactly one of --j and --y")
    if a.j is not None:
        rep = zero_field_analysis(zeta_tilde(cfg.r, a.j), a.lift_prec)
    else:
        y = _padic(a.y, _field(cfg.r).p, a.digits)
        rep = zero_field_analysis(zeta_series_row(cfg.r, y, cfg.d_max, cfg.prec), a.lift_prec)
    return Output(rep.to_json(), *_zero_table(rep))


# ---------------------------------------------------------------------------
# galois-tools


def cmd_galois(a, cfg):
    z = zeta_tilde(cfg.r, a.j)
    f = xpoly_from_zeta(z)
    if f.degree != 4:
        raise UsageError(f"z~ has degree {f.degree} in 1/x; the classifier needs a quartic")
    primes = [_poly(s, cfg.r) for s in a.modprime]
    rep = quartic_galois_group(f, modprimes=primes, scan_bound=a.scan_bound, modprime_bound=a.modprime_bound)
    payload = rep.to_json()
    checks = []
    res = resolvent_cubic(f) if cfg.r % 2 else None
    for v in primes:
        item = {"prime": repr(v), "quartic_irreducible": irreducible_mod_prime(f, v)}
        if res is not None:
            item["resolvent_irreducible"] = irreducible_mod_prime(res, v)
        checks.append(item)
    payload["modprime_checks"] = checks
    payload["r"], payload["j"] = cfg.r, a.j
    rows = [[k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v] for k, v in payload.items()]
    return Output(payload, ["field", "value"], rows)


# ---------------------------------------------------------------------------
# carlitz-modules


def _series_table(s) -> tuple[list[str], list]:
    rows = []
    for i, A in enumerate(s.coeffs):
        for ri, row in enumerate(A):
            for ci, x in enumerate(row):
                if not x.is_zero():
                    rows.append([i, ri, ci, repr(x)])
    return ["tau_degree", "row", "col", "entry"], rows


def cmd_carlitz(a, cfg):
    if a.exp:
        N = a.prec if a.prec is not None else 4
        exp, log = tensor_exp_log(cfg.r, a.n, N)
        payload = {"r": cfg.r, "n": a.n, "exp": exp.to_json(), "log": log.to_json()}
        return Output(payload, *_series_table(exp))
    if a.action is None:
        raise UsageError("give --action POLY or --exp")
    act = tensor_power_action(a.n, _poly(a.action, cfg.r))
    payload = {"r": cfg.r, "n": a.n, "action": act.to_json()}
    return Output(payload, *_series_table(act))


def cmd_bc(a, cfg):
    bc = bernoulli_carlitz(cfg.r, a.i, a.prec)
    pi = carlitz_factorial(cfg.r, a.i)
    payload = {"r": cfg.r, "i": a.i, "bc": bc.to_json(), "bc_text": repr(bc), "factorial": pi.to_json()}
    return Output(payload, ["i", "bc", "factorial"], [[a.i, repr(bc), repr(pi)]])


def cmd_vreduce(a, cfg):
    approx = _poly(a.a, cfg.r)
    v = _poly(a.v, cfg.r)
    red, info = vadic_reduce_action(a.n, approx, v, a.input_prec, a.prec)
    payload = {"r": cfg.r, "n": a.n, "M_out": a.prec, "M_in": a.input_prec, "action": red.to_json(), **info}
    return Output(payload, *_series_table(red))


# ---------------------------------------------------------------------------
# hyperderiv


def cmd_hyper(a, cfg):
    f = _poly(a.f, cfg.r)
    if a.power_check:
        if a.m is None or a.n is None:
            raise UsageError("--power-check needs --m and --n")
        lhs = hyperderive(a.n, f**a.m)
        rhs = power_formula(f, a.m, a.n)
        payload = {"f": repr(f), "m": a.m, "n": a.n, "equal": lhs == rhs, "value": lhs.to_json()}
        return Output(payload, ["m", "n", "equal"], [[a.m, a.n, lhs == rhs]])
    if a.vbound:
        if a.m is None or a.n is None or a.c is None:
            raise UsageError("--vbound needs --c, --m and --n")
        c = _poly(a.c, cfg.r)
        ok = vadic_continuity_bound(a.n, c, f, a.m)
        payload = {"f": repr(f), "c": repr(c), "m": a.m, "n": a.n, "divisible": ok}
        return Output(payload, ["m", "n", "divisible"], [[a.m, a.n, ok]])
    if a.j is None:
        raise UsageError("give --j, --power-check or --vbound")
    d = hyperderive(a.j, f)
    return Output({"f": repr(f), "j": a.j, "value": d.to_json(), "text": repr(d)}, ["j", "value"], [[a.j, repr(d)]])


# ---------------------------------------------------------------------------
# mvop-lift


def cmd_lift(a, cfg):
    if a.check_obstruction:
        if a.p is None or a.s is None or a.target is None:
            raise UsageError("--check-obstruction needs --p, --s and --target")
        r = cfg.r if cfg.r % a.p == 0 else a.p
        fld = _field(r)
        try:
            parts = parse_bivariate(a.target, fld, "eps", "theta")
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        zero, one = RatFn.constant(fld, 0, "theta"), RatFn.constant(fld, 1, "theta")
        cs = [RatFn.from_poly(c) for c in parts][: a.t] + [zero] * max(0, a.t - len(parts))
        res = liftability_check(TangentElt(cs, a.t, zero, one), a.p, a.s)
        payload = {"p": a.p, "s": a.s, "t": a.t, **res.to_json()}
        return Output(payload, ["status", "reason"], [[res.status, res.reason]])
    if a.f is None:
        raise UsageError("give --f POLY_IN_u or --check-obstruction")
    try:
        coeffs = parse_bivariate(a.f, _field(cfg.r), "u", "T")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    prob = LiftProblem(coeffs, a.t)
    X = separable_lift(prob)
    if not lift_residual(prob, X).is_zero():
        raise InvariantError("separable lift does not satisfy its equation")
    payload = {"r": cfg.r, "t": a.t, "lift": X.to_json(), "eps_terms": [repr(x) for x in X.c]}
    rows = [[k, repr(x)] for k, x in enumerate(X.c)]
    return Output(payload, ["eps_power", "coefficient"], rows)


def cmd_mvop(a, cfg):
    op = _poly(a.M, cfg.r)
    N = a.prec if a.prec is not None else 4
    exp, log = tensor_exp_log(cfg.r, a.n, N)
    psi = multivalued_operator(tangent_matrix(op, a.n), exp, log, N)
    direct = _ratfn_action(a.n, op).truncate(N)
    payload = {"r": cfg.r, "n": a.n, "truncation": N, "matches_direct": psi == direct, "operator": psi.to_json()}
    return Output(payload, *_series_table(psi))


# ---------------------------------------------------------------------------
# sweep


def _parse_range(v) -> list[int]:
    if isinstance(v, list):
        return [int(x) for x in v]
    if isinstance(v, int):
        return [v]
    if isinstance(v, str) and ".." in v:
        lo, hi = v.split("..")
        return list(range(int(lo), int(hi) + 1))
    raise ValueError(f"bad range {v!r}")


SWEEP_HEADERS = {
    "zeta": ["r", "j", "degree", "trivial_zero", "all_simple", "all_in_K", "min_residual"],
    "row": ["r", "y", "prec", "d_max", "certified_vertices", "all_simple", "all_in_K"],
}


def sweep_points(spec: dict) -> list[dict]:
    kind = spec.get("kind", "zeta")
    if kind not in SWEEP_HEADERS:
        raise ValueError(f"unknown sweep kind {kind!r}")
    rs = _parse_range(spec.get("r", []))
    pts = []
    if kind == "zeta":
        for r in rs:
            for j in _parse_range(spec.get("j", [])):
                pts.append({"kind": kind, "r": r, "j": j, "lift_prec": int(spec.get("lift_prec", 20))})
    else:
        for r in rs:
            for y in _parse_range(spec.get("y", [])):
                pts.append({"kind": kind, "r": r, "y": y, "prec": int(spec.get("prec", 40)), "d_max": int(spec.get("d_max", 8))})
    return pts


def sweep_point(pt: dict) -> list:
    if pt["kind"] == "zeta":
        z = zeta_tilde(pt["r"], pt["j"])
        rep = zero_field_analysis(z, pt["lift_prec"])
        res = [x.residual for x in rep.zeros if x.residual is not None]
        return [pt["r"], pt["j"], z.degree, has_trivial_zero(pt["r"], pt["j"]), rep.all_simple, rep.all_in_K, min(res) if res else None]
    row = zeta_series_row(pt["r"], pt["y"], pt["d_max"], pt["prec"])
    rep = zero_field_analysis(row)
    return [pt["r"], pt["y"], pt["prec"], pt["d_max"], rep.certified_vertices, rep.all_simple, rep.all_in_K]


def run_sweep(spec: dict, out_dir: Path, workers: int = 1) -> tuple[list[str], list, dict]:
    """Compute every point not already recorded in ``out_dir/sweep_state.json``."""
    pts = sweep_points(spec)
    header = SWEEP_HEADERS[spec.get("kind", "zeta")]
    out_dir.mkdir(parents=True, exist_ok=True)
    state_path = out_dir / "sweep_state.json"
    spec_hash = content_hash(spec)
    state = {"spec_hash": spec_hash, "done": {}}
    if state_path.exists():
        old = json.loads(state_path.read_text())
        if old.get("spec_hash") == spec_hash:
            state = old
    keys = [content_hash(p) for p in pts]
    todo = [(k, p) for k, p in zip(keys, pts) if k not in state["done"]]
    if todo:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(sweep_point, [p for _, p in todo]))
        else:
            results = [sweep_point(p) for _, p in todo]
        # single writer: results are merged and persisted here only
        for (k, _), row in zip(todo, results):
            state["done"][k] = row
        state_path.write_text(json.dumps(state, sort_keys=True))
    rows = [state["done"][k] for k in keys]
    return header, rows, {"points": len(pts), "computed": len(todo), "skipped": len(pts) - len(todo)}


def cmd_sweep(a, cfg):
    try:
        spec = json.loads(Path(a.spec).read_text())
        if not isinstance(spec, dict):
            raise ValueError("sweep spec must be a JSON object")
        sweep_points(spec)
    except (OSError, ValueError) as exc:
        raise UsageError(f"sweep spec: {exc}") from exc
    out = Path(cfg.out_dir) if cfg.out_dir else Path("sweep_out")
    header, rows, stats = run_sweep(spec, out, cfg.workers)
    with open(out / "table.csv", "w", newline="") as fh:
        _write_csv(fh, header, rows)
    payload = {"spec": spec, "header": header, "rows": rows, **stats}
    return Output(payload, header, rows)


# ---------------------------------------------------------------------------
# parser and driver


def _write_csv(fh, header, rows):
    w = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if x is None else x for x in row])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat JSON file of defaults")
    common.add_argument("--r", type=int, help="size of the constant field")
    common.add_argument("--prec", type=int, help="series precision or truncation")
    common.add_argument("--dmax", dest="d_max", type=int, help="degree cutoff")
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--out", dest="out_dir", help="directory for artifacts and the manifest")
    common.add_argument("--csv", action="store_true", help="emit a CSV table instead of JSON")

    ap = argparse.ArgumentParser(prog="ffzeta", description="Zeta values, Galois groups and Carlitz modules over F_r[T].")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("zeta-poly", cmd_zeta_poly, "special polynomial z(x,-j)")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--tilde", action="store_true", help="remove the trivial zero")

    p = add("zeta-row", cmd_zeta_row, "series row S_d(y) at infinity")
    p.add_argument("--y", required=True, help="integer or fraction a/b")
    p.add_argument("--digits", type=int, help="p-adic digits of y (required for fractions)")

    p = add("vadic-zeta", cmd_vadic_zeta, "special polynomial with the v-Euler factor removed")
    p.add_argument("--v", required=True)
    p.add_argument("--j", type=int, required=True)

    p = add("wan-check", cmd_wan_check, "degree-one identity at v = T")
    p.add_argument("--j", type=int, required=True)

    p = add("cm", cmd_cm, "coefficients of the CM Hecke examples")
    p.add_argument("--example", choices=["constfield", "geometric"], required=True)
    p.add_argument("--y", type=int, required=True)

    p = add("zero-report", cmd_zero_report, "Newton polygon and zero field")
    p.add_argument("--j", type=int)
    p.add_argument("--y")
    p.add_argument("--digits", type=int)
    p.add_argument("--lift-prec", type=int, default=20)

    p = add("galois", cmd_galois, "Galois group of the reciprocal quartic")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--modprime", action="append", default=[], help="prime to test reductions at (repeatable)")
    p.add_argument("--scan-bound", type=int, default=4, help="degree bound for Eisenstein candidates")
    p.add_argument("--modprime-bound", type=int, default=6, help="degree bound for primes tried as reductions")

    p = add("carlitz", cmd_carlitz, "tensor power actions, exp and log")
    p.add_argument("--action")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--exp", action="store_true")

    p = add("bc", cmd_bc, "Bernoulli-Carlitz number")
    p.add_argument("--i", type=int, required=True)

    p = add("vreduce", cmd_vreduce, "tensor power action mod v^M")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--a", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--input-prec", type=int, help="precision of the approximant (exact if omitted)")

    p = add("hyper", cmd_hyper, "hyperderivatives")
    p.add_argument("--f", required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--power-check", action="store_true")
    p.add_argument("--vbound", action="store_true")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--c")

    p = add("lift", cmd_lift, "separable lifts and liftability")
    p.add_argument("--f", help="minimal polynomial in u with coefficients in T")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--check-obstruction", action="store_true")
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--target", help="element of F_p(theta)[eps], e.g. 'theta + eps'")

    p = add("mvop", cmd_mvop, "multi-valued operator e(a log tau)")
    p.add_argument("--M", required=True, help="operator a in A")
    p.add_argument("--n", type=int, default=1)

    p = add("sweep", cmd_sweep, "resumable parameter sweep")
    p.add_argument("--spec", required=True)
    return ap


def _config(a) -> RunConfig:
    keys = RunConfig.keys()
    overrides = {k: getattr(a, k) for k in keys if getattr(a, k, None) is not None}
    return RunConfig.load(a.config, overrides)


def _versions() -> dict:
    return {"ffzeta": __version__, "python": platform.python_version(), "numpy": np.__version__}


def run_subcommand(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(a)
    except (ValueError, TypeError, OSError) as exc:
        print(f"ffzeta: config: {exc}", file=stderr)
        return EXIT_USAGE
    set_karatsuba_threshold(cfg.karatsuba_threshold)
    params = {k: v for k, v in sorted(vars(a).items()) if k not in ("fn", "csv", "out_dir", "workers", "config")}
    params["config"] = {k: v for k, v in cfg.to_json().items() if k not in ("out_dir", "workers")}
    chash = content_hash(params)
    t0 = time.perf_counter()
    try:
        out = a.fn(a, cfg)
    except UsageError as exc:
        print(f"ffzeta {a.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"ffzeta {a.command}: precision shortfall: {exc}", file=stderr)
        return EXIT_PRECISION
    except InvariantError as exc:
        print(f"ffzeta {a.command}: invariant violation: {exc}", file=stderr)
        return EXIT_INVARIANT
    except (ValueError, NotImplementedError) as exc:
        print(f"ffzeta {a.command}: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - t0

    if a.csv and out.header is not None:
        buf = io.StringIO()
        _write_csv(buf, out.header, out.rows)
        text = buf.getvalue()
    else:
        doc = {"schema": SCHEMA, "command": a.command, "config_hash": chash, "result": out.payload}
        text = json.dumps(doc, sort_keys=True, default=str) + "\n"
    stdout.write(text)

    manifest = {
        "schema": SCHEMA,
        "command": a.command,
        "config_hash": chash,
        "params": params,
        "versions": _versions(),
        "timings": {"seconds": round(elapsed, 6)},
    }
    if cfg.out_dir:
        d = Path(cfg.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / ("result.csv" if a.csv else "result.json")).write_text(text)
        (d / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1, default=str) + "\n")
    else:
        print(json.dumps({"manifest": manifest}, sort_keys=True, default=str), file=stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run_subcommand())


if __name__ == "__main__":
    main()
