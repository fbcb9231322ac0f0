"""Command-line front end.

    lagsurf catalog [--json]
    lagsurf verify --config F [--json]
    lagsurf profile (--C x | --pq p q) --out F
    lagsurf mesh --config F --out F
    lagsurf certify [--json]

Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import catalog, export
from .certify import nonexistence_certificate
from .core import Grid, LagsurfError, curve_constraint_residual
from .cyclic import r2K_invariant
from .diffgeo import lagrangian_residual
from .hamstat import (Regime, build_closed_hs_curve, classify_regime,
                      hs_period, hs_residual_suite, integrate_hs_profile)
from .solitons import SolitonParams, self_similar_residual

THRESHOLDS = {
    "lagrangian": 1e-9,
    "self_similar": 1e-6,
    "hamiltonian_stationary": 1e-4,
    "r2K": 1e-8,
    "constraints": 1e-8,
}
MIN_GRID = 8


class UsageError(Exception):
    pass


@dataclass
class SceneConfig:
    spec: object
    grid: Grid
    checks: list
    formats: tuple = ()
    path: str | None = None
    projection: str = "re1_im1_re2"
    source: dict = field(default_factory=dict)


def _need(cond, msg):
    if not cond:
        raise UsageError(msg)


def _parse_surface(desc):
    _need(isinstance(desc, dict), "'surface' must be an object")
    _need(("catalog" in desc) != ("family" in desc),
          "'surface' needs exactly one of 'catalog' or 'family'")
    if "catalog" in desc:
        args = desc.get("args", {})
        _need(isinstance(args, dict), "'surface.args' must be an object")
        return catalog.build(desc["catalog"], **args)
    return catalog.spec_from_family(desc)


def _parse_grid(desc, spec):
    desc = desc or {}
    _need(isinstance(desc, dict), "'grid' must be an object")
    n_s, n_t = desc.get("n_s", 64), desc.get("n_t", 64)
    _need(isinstance(n_s, int) and isinstance(n_t, int), "grid sizes must be integers")
    _need(n_s >= MIN_GRID and n_t >= MIN_GRID, f"grid sizes must be >= {MIN_GRID}")
    s_range = tuple(desc.get("s_range", spec.s_domain))
    t_range = tuple(desc.get("t_range", spec.t_domain))
    for r in (s_range, t_range):
        _need(len(r) == 2 and all(isinstance(v, (int, float)) and math.isfinite(v) for v in r)
              and r[1] > r[0], f"bad range {list(r)}")
    return Grid(n_s, n_t, tuple(map(float, s_range)), tuple(map(float, t_range)),
                spec.t_periodic)


def _parse_checks(items):
    _need(isinstance(items, list) and items, "'checks' must be a non-empty list")
    out = []
    for item in items:
        if isinstance(item, str):
            name, opts = item, {}
        elif isinstance(item, dict) and len(item) == 1:
            (name, opts), = item.items()
            if not isinstance(opts, dict):
                opts = {"lambda": opts}
        else:
            raise UsageError(f"bad check entry {item!r}")
        _need(name in THRESHOLDS, f"unknown check {name!r}; known: {', '.join(THRESHOLDS)}")
        if name == "self_similar":
            _need("lambda" in opts, "self_similar needs a 'lambda'")
            try:
                SolitonParams(float(opts["lambda"]), opts.get("convention", "half"))
            except (TypeError, ValueError) as exc:
                raise UsageError(f"self_similar: {exc}") from None
        out.append((name, opts))
    return out


def parse_config(obj) -> SceneConfig:
    _need(isinstance(obj, dict), "config must be a JSON object")
    unknown = set(obj) - {"surface", "grid", "checks", "output"}
    _need(not unknown, f"unknown config keys {sorted(unknown)}")
    _need("surface" in obj, "config needs a 'surface'")
    try:
        spec = _parse_surface(obj["surface"])
    except (LagsurfError, KeyError, TypeError) as exc:
        raise UsageError(f"surface: {exc}") from None
    grid = _parse_grid(obj.get("grid"), spec)
    checks = _parse_checks(obj.get("checks", ["lagrangian"]))
    output = obj.get("output", {}) or {}
    formats = tuple(output.get("formats", ()))
    _need(set(formats) <= {"csv", "obj", "json"}, f"bad output formats {list(formats)}")
    projection = output.get("projection", "re1_im1_re2")
    _need(projection in export.PROJECTIONS, f"bad projection {projection!r}")
    return SceneConfig(spec, grid, checks, formats, output.get("path"), projection, obj)


def load_config(path) -> SceneConfig:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from None
    return parse_config(obj)


# checks -----------------------------------------------------------------------

def _constraints_report(spec):
    reports = [curve_constraint_residual(c, 256)
               for c in (spec.curve, spec.curve2) if c is not None]
    _need(reports, "constraints check needs a generating curve")
    return max(reports, key=lambda r: r.max_abs)


def run_check(name, opts, cfg):
    spec, grid = cfg.spec, cfg.grid
    if name == "lagrangian":
        return lagrangian_residual(spec, grid)
    if name == "self_similar":
        return self_similar_residual(
            spec, SolitonParams(float(opts["lambda"]), opts.get("convention", "half")), grid)
    if name == "hamiltonian_stationary":
        _need(grid.n_s >= 16 and grid.n_t >= 16,
              "hamiltonian_stationary needs a grid of at least 16 x 16")
        return hs_residual_suite(spec, grid)
    if name == "r2K":
        _need(spec.cyclic, f"r2K needs a cyclic surface, got {spec.family.value}")
        return r2K_invariant(spec, opts.get("n_samples", 64))
    if name == "constraints":
        return _constraints_report(spec)
    raise UsageError(f"unknown check {name!r}")


def verify(cfg: SceneConfig):
    results, ok = [], True
    for name, opts in cfg.checks:
        tol = float(opts.get("threshold", THRESHOLDS[name]))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                rep = run_check(name, opts, cfg)
                entry = {"check": name, "options": opts, "threshold": tol,
                         "passed": rep.passed(tol), "report": rep.to_dict()}
            except UsageError:
                raise
            except LagsurfError as exc:
                entry = {"check": name, "options": opts, "threshold": tol,
                         "passed": False, "error": str(exc)}
        entry["warnings"] = [str(w.message) for w in caught]
        ok = ok and entry["passed"]
        results.append(entry)
    g = cfg.grid
    return {"surface": cfg.spec.name, "family": cfg.spec.family.value,
            "grid": {"n_s": g.n_s, "n_t": g.n_t, "s_range": list(g.s_range),
                     "t_range": list(g.t_range), "periodic_t": g.periodic_t},
            "checks": results, "passed": ok}


# commands -----------------------------------------------------------------------

def cmd_catalog(args):
    index = [e.index() for e in catalog.ENTRIES]
    if args.json:
        print(json.dumps(index, indent=2))
        return 0
    for e in index:
        defaults = ", ".join(f"{k}={v}" for k, v in e["defaults"].items())
        print(f"{e['name']}({defaults})")
        print(f"    {e['anchor']}: {e['description']}")
    return 0


def _print_report(report):
    print(f"surface {report['surface']} [{report['family']}] grid "
          f"{report['grid']['n_s']}x{report['grid']['n_t']}")
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        if "error" in c:
            print(f"  {mark} {c['check']}: {c['error']}")
        else:
            r = c["report"]
            print(f"  {mark} {c['check']}: max {r['max_abs']:.3e} (threshold "
                  f"{c['threshold']:.0e}) at s={r['argmax'][0]:.6g} t={r['argmax'][1]:.6g}")
    print("PASSED" if report["passed"] else "FAILED")


def cmd_verify(args):
    cfg = load_config(args.config)
    report = verify(cfg)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_report(report)
    if cfg.path and "json" in cfg.formats:
        export.write_json(cfg.path + ".json", report)
    return 0 if report["passed"] else 1


PROFILE_COLUMNS = ["s", "r", "alpha", "phi", "gamma_re", "gamma_im", "first_integral"]


def _profile_rows(prof, C, n):
    s = np.linspace(0.0, prof.length, n)
    r, a, phi = prof.state(s)
    g = r * np.exp(1j * phi)
    return zip(s, r, a, phi, g.real, g.imag, r * r * (C - 2 * np.sin(a)))


def cmd_profile(args):
    _need(args.samples >= 2, "--samples must be >= 2")
    if args.pq is not None:
        p, q = args.pq
        _need(p > 0 and q > 0 and math.gcd(p, q) == 1, "p, q must be coprime positive integers")
        closed = build_closed_hs_curve(p, q)
        prof, C = closed.profile, closed.c_flux
        print(f"C = {C:.15g}, closure {closed.closure:.3e}, "
              f"self-intersections {closed.self_intersections}", file=sys.stderr)
    else:
        C = args.C
        _need(math.isfinite(C), "C must be finite")
        regime = classify_regime(C)
        if regime is Regime.BoundedClosedFamily:
            prof = integrate_hs_profile(C, args.periods * hs_period(C))
        else:
            _need(args.length > 0, "--length must be positive")
            prof = integrate_hs_profile(C, args.length)
            print(f"note: C = {C:g} lies in regime {regime.value}; the trajectory "
                  f"is not periodic and is integrated over s in [0, {args.length:g}]",
                  file=sys.stderr)
    export.atomic_write(args.out, export.csv_text(PROFILE_COLUMNS,
                                                  _profile_rows(prof, C, args.samples)))
    return 0


def cmd_mesh(args):
    cfg = load_config(args.config)
    export.write_obj(args.out, cfg.spec, cfg.grid, cfg.projection)
    if "csv" in cfg.formats:
        base = args.out[:-4] if args.out.endswith(".obj") else args.out
        export.atomic_write(base + ".csv", export.surface_csv_text(cfg.spec, cfg.grid))
    return 0


def cmd_certify(args):
    rep = nonexistence_certificate()
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        for y, e, ey, f, m in zip(rep.roots, rep.E_at_roots, rep.E_Y_at_roots,
                                  rep.F_at_roots, rep.F_expected_magnitude):
            print(f"Y = {y:.15g}: E = {e:.2e}, E_Y = {ey:.6g}, F = {f:.12g} "
                  f"(|F| expected {m:.12g})")
        print(f"endgame constants >= {rep.endgame_min[0]:g}, {rep.endgame_min[1]:g}")
        print("quaternion max errors: " + ", ".join(
            f"{k} {v:.2e}" for k, v in rep.quaternion.items()))
        for msg in rep.failures:
            print(f"FAIL {msg}")
        print("PASSED" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="lagsurf", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("catalog", help="list the named example surfaces")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)
    p = sub.add_parser("verify", help="run residual checks from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)
    p = sub.add_parser("profile", help="integrate a Hamiltonian-stationary profile")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--C", type=float)
    g.add_argument("--pq", type=int, nargs=2, metavar=("P", "Q"))
    p.add_argument("--out", required=True)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--length", type=float, default=20.0)
    p.set_defaults(fn=cmd_profile)
    p = sub.add_parser("mesh", help="export a surface as Wavefront OBJ")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_mesh)
    p = sub.add_parser("certify", help="run the algebraic certificates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_certify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, LagsurfError, OSError) as exc:
        print(f"lagsurf: error: {exc}", file=sys.stderr)
        return 2
