"""Command-line scenario runner.

Usage: ``tdbie <subcommand> [--config FILE] [--out DIR] [--seed N] [--threads N] [--tolerance X]``.

Every subcommand writes CSV files and ``summary.json`` into ``--out``; each
file carries the scenario hash (a digest of the completed configuration,
seed, tolerance and package version). Exit status: 0 when all checks pass,
1 on a numerical failure, 2 on a configuration error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bounds_harness as bh
from . import config as cfgmod
from . import retarded_direct, spectral_wave
from .cq import Observation, evaluate_potential
from .errors import ConfigError, TDBIEError
from .laplace_ops import FIELD_KINDS, symbol

SUBCOMMANDS = ("symbols", "cq-run", "direct-run", "wave-run", "verify-bounds", "transfer", "table1",
               "propagation")


def _num(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


class Outputs:
    """Writes hash-stamped artefacts into one directory."""

    def __init__(self, out, scenario_hash):
        self.out = out
        self.hash = scenario_hash
        os.makedirs(out, exist_ok=True)

    def csv(self, name, header, rows):
        buf = io.StringIO()
        buf.write(f"# scenario_hash: {self.hash}\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([_num(x) for x in row])
        with open(os.path.join(self.out, name), "w", newline="") as fh:
            fh.write(buf.getvalue())

    def report(self, name, report, stride=1):
        self.csv(name, ["t", "lhs", "rhs", "margin", "ratio"], report.rows(stride))

    def summary(self, payload):
        payload = {"scenario_hash": self.hash, **payload}
        with open(os.path.join(self.out, "summary.json"), "w") as fh:
            json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _resolution(cfg, tol):
    r = cfg["resolution"]
    return bh.Resolution(cfg["dt"], cfg["method"], r["panel"], r["order"], tol)


def _constants(cfg, geom):
    c = cfg["constants"]
    return bh.empirical_constants(geom, cfg["geometry"]["R"], c["n_max"], c["samples"], cfg["seed"],
                                  c["safety"])


def _pmap(fun, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [fun(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fun, items))


# --------------------------------------------------------------- subcommands

def cmd_symbols(cfg, out, args):
    geom = cfgmod.build_geometry(cfg)
    sc = cfg["symbols"]
    kinds = cfg["kinds"] or ["V", "K", "Kt", "W", "NtD", "DtN"]
    s_vals = [complex(re, im) for re, im in sc["s"]]
    if any(s.real <= 0 for s in s_vals):
        raise ConfigError("every s must have positive real part", "symbols.s")
    rows = []
    for kind in kinds:
        field = kind in FIELD_KINDS
        if field and "radius" not in sc:
            raise ConfigError(f"field kind {kind!r} needs symbols.radius", "symbols")
        for n in sc["modes"]:
            for s in s_vals:
                if field:
                    v = symbol(kind, n, s, geom, sc["radius"], sc.get("side"))
                else:
                    v = symbol(kind, n, s, geom)
                rows.append((kind, n, s.real, s.imag, complex(v).real, complex(v).imag))
    out.csv("symbols.csv", ["kind", "n", "s_re", "s_im", "re", "im"], rows)
    out.summary({"subcommand": "symbols", "rows": len(rows), "passed": True})
    return True


def cmd_cq_run(cfg, out, args):
    dens = cfgmod.build_density(cfg)
    kinds = cfg["kinds"] or ["V"]
    res = {}
    for kind in kinds:
        obs = Observation(radii=(cfg["propagation"]["radius"],)) if kind in FIELD_KINDS else None
        ps = evaluate_potential(kind, dens, obs, cfg["dt"], cfg["T_end"], cfg["method"])
        header = ["t"]
        for n in ps.modes:
            header += [f"re_{n}", f"im_{n}"]
        cols = [ps.times]
        for i in range(len(ps.modes)):
            cols += [ps.values[i, 0].real, ps.values[i, 0].imag]
        out.csv(f"cq_{kind}.csv", header, zip(*cols))
        res[kind] = {"max_abs": float(np.max(np.abs(ps.values))) if ps.values.size else 0.0}
    out.summary({"subcommand": "cq-run", "kinds": res, "passed": True})
    return True


def _polar_angle(x, dim):
    x = np.asarray(x, dtype=float)
    if dim == 2:
        return float(np.arctan2(x[1], x[0])), float(np.hypot(x[0], x[1]))
    r = float(np.linalg.norm(x))
    return float(np.arccos(np.clip(x[2] / r, -1, 1))) if r > 0 else 0.0, r


def cmd_direct_run(cfg, out, args):
    dens = cfgmod.build_density(cfg)
    geom = dens.geometry
    d = geom.dimension
    dc = cfg["direct"]
    kinds = cfg["kinds"] or ["S"]
    allowed = {2: ("S",), 3: ("S", "D")}[d]
    rows, summary = [], {}
    N = int(round(cfg["T_end"] / cfg["dt"]))
    times = cfg["dt"] * np.arange(N + 1)
    for kind in kinds:
        if kind not in allowed:
            raise ConfigError(f"direct quadrature supports {allowed} in {d}D", "kinds")
        worst, scale = 0.0, 0.0
        for j, x in enumerate(dc["points"]):
            if len(x) != d:
                raise ConfigError(f"expected {d} coordinates", f"direct.points[{j}]")
            ang, r = _polar_angle(x, d)
            ps = evaluate_potential(kind, dens, Observation(radii=(r,)), cfg["dt"], cfg["T_end"], cfg["method"])
            cqv = ps.pointwise([ang])[0].real
            for i, t in enumerate(times):
                if d == 2:
                    v = retarded_direct.single_layer_2d(x, t, dens, dc["quad_order"], dc["time_order"])
                elif kind == "S":
                    v = retarded_direct.single_layer_3d(x, t, dens, dc["quad_order"])
                else:
                    v = retarded_direct.double_layer_3d(x, t, dens, dc["quad_order"])
                rows.append((kind, j, t, v, cqv[i], abs(v - cqv[i])))
                worst = max(worst, abs(v - cqv[i]))
                scale = max(scale, abs(v))
        summary[kind] = {"max_abs_diff": worst, "max_abs": scale,
                         "relative_linf": worst / scale if scale > 0 else 0.0}
    out.csv("direct.csv", ["kind", "point", "t", "direct", "cq", "abs_diff"], rows)
    out.summary({"subcommand": "direct-run", "kinds": summary, "passed": True})
    return True


def _build_basis(wc):
    b = wc["basis"]
    if b["type"] == "disk":
        return spectral_wave.disk_eigenbasis(b["rho"], b["max_angular"], b["max_radial"])
    if not b["rho"] > b["a"]:
        raise ConfigError("must exceed wave.basis.a", "wave.basis.rho")
    return spectral_wave.annulus_mixed_eigenbasis(b["a"], b["rho"], b["max_angular"], b["max_radial"])


def cmd_wave_run(cfg, out, args):
    wc = cfg["wave"]
    basis = _build_basis(wc)
    terms = [(tuple(f["label"]), cfgmod.build_profile(f["profile"], f"wave.forcing[{i}].profile"),
              f.get("amplitude", 1.0)) for i, f in enumerate(wc["forcing"])]
    f = spectral_wave.ModalFunction(basis, terms)
    times = np.linspace(0.0, cfg["T_end"], wc["samples"])
    tol = args.tolerance
    if wc["solution"] == "strong":
        sol = spectral_wave.strong_solution(basis, f, times)
        reports = bh.check_evolution_bounds(basis, f, times, sol, tolerance=tol)
        extra = {}
    else:
        rep, resid, sol = bh.check_weak_bounds(basis, f, times, tolerance=tol)
        reports = {"gradient": rep}
        extra = {"delta_domain_residual": resid}
    out.csv("wave.csv", ["t", "norm", "grad_norm", "lap_norm", "energy"],
            zip(times, sol.norm(), sol.grad_norm(), sol.lap_norm(), sol.energy()))
    for name, rep in reports.items():
        out.report(f"wave_bound_{name}.csv", rep)
    passed = all(r.passed() for r in reports.values())
    out.summary({"subcommand": "wave-run", "basis_size": len(basis), "poincare_constant": basis.poincare_constant,
                 "reports": {k: r.summary() for k, r in reports.items()}, **extra, "passed": passed})
    return passed


def cmd_verify_bounds(cfg, out, args):
    lam = cfgmod.build_density(cfg)
    phi = cfgmod.build_density(cfg, "phi") if "phi" in cfg else lam
    res = _resolution(cfg, args.tolerance)
    cst = _constants(cfg, lam.geometry)
    T = cfg["T_end"]
    jobs = {"single_layer": lambda: bh.check_single_layer_bounds(lam, T, res, cst),
            "double_layer": lambda: bh.check_double_layer_bounds(phi, T, res, cst),
            "ntd": lambda: {"NtD": bh.check_steklov("NtD", lam, T, res, cst)},
            "dtn": lambda: {"DtN": bh.check_steklov("DtN", phi, T, res, cst)}}
    chosen = cfg["bounds"]["families"]
    results = _pmap(lambda k: jobs[k](), chosen, args.threads)
    reports = {}
    for r in results:
        reports.update({rep.inequality: rep for rep in r.values()})
    stride = cfg["bounds"]["stride"]
    summ = {}
    for name in sorted(reports):
        rep = reports[name]
        out.report(f"bound_{name}.csv", rep, stride)
        s = rep.summary()
        s["lhs_slope"] = bh.growth_slope(rep.times, rep.lhs, _slope_window(lam))
        summ[name] = s
    passed = all(r.passed() for r in reports.values())
    out.summary({"subcommand": "verify-bounds", "constants": cst.as_dict(), "reports": summ, "passed": passed})
    return passed


def _slope_window(density):
    ends = [p.end for p in density.profiles if math.isfinite(p.end)]
    return 2 * max(ends) if ends else 1.0


def cmd_transfer(cfg, out, args):
    g = cfgmod.build_density(cfg)
    res = _resolution(cfg, args.tolerance)
    kinds = cfg["kinds"] or ["S", "V", "Kt", "D", "K", "W", "NtD", "DtN"]
    for k in kinds:
        if k in FIELD_KINDS and k not in ("S", "D"):
            raise ConfigError(f"no transfer bound for {k!r}", "kinds")
    safety = cfg["constants"]["safety"]
    reps = _pmap(lambda k: bh.check_transfer(k, g, cfg["T_end"], res, safety=safety), kinds, args.threads)
    summ = {}
    for k, rep in zip(kinds, reps):
        out.report(f"transfer_{k}.csv", rep)
        summ[k] = rep.summary()
    params = {str(mu): bh.transfer_parameters(mu) for mu in (1.0, 1.5, 2.0)}
    passed = all(r.passed() for r in reps)
    out.summary({"subcommand": "transfer", "parameters": params, "reports": summ, "passed": passed})
    return passed


TABLE1_COLUMNS = ("F", "X", "Y", "mu", "C_F", "k", "E", "n", "growth")


def cmd_table1(cfg, out, args):
    rows = bh.regenerate_table1()
    out.csv("table1.csv", TABLE1_COLUMNS, [[r[c] for c in TABLE1_COLUMNS] for r in rows])
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in TABLE1_COLUMNS]
    line = lambda vals: "  ".join(str(v).ljust(w) for v, w in zip(vals, widths))
    print(line(TABLE1_COLUMNS))
    for r in rows:
        print(line([r[c] for c in TABLE1_COLUMNS]))
    out.summary({"subcommand": "table1", "rows": rows, "passed": True})
    return True


def cmd_propagation(cfg, out, args):
    dens = cfgmod.build_density(cfg)
    kinds = cfg["kinds"] or ["S", "D"]
    r = cfg["propagation"]["radius"]
    rows, summ = [], {}
    for k in kinds:
        if k not in ("S", "D"):
            raise ConfigError("propagation supports 'S' and 'D'", "kinds")
        rep = bh.propagation_check(k, dens, r, cfg["dt_ladder"], cfg["T_end"], cfg["method"])
        for dt, pre, post in zip(rep.dts, rep.pre_arrival, rep.post_arrival):
            rows.append((k, dt, pre, post))
        summ[k] = rep.summary()
    out.csv("propagation.csv", ["kind", "dt", "pre_arrival", "post_arrival"], rows)
    passed = all(s["monotone"] or max(s["pre_arrival"]) == 0.0 for s in summ.values())
    out.summary({"subcommand": "propagation", "reports": summ, "passed": passed})
    return passed


COMMANDS = {
    "symbols": cmd_symbols, "cq-run": cmd_cq_run, "direct-run": cmd_direct_run, "wave-run": cmd_wave_run,
    "verify-bounds": cmd_verify_bounds, "transfer": cmd_transfer, "table1": cmd_table1,
    "propagation": cmd_propagation,
}


def build_parser():
    p = argparse.ArgumentParser(prog="tdbie", description="Time-domain layer potential scenarios.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", help="JSON scenario file (defaults apply when omitted)")
    p.add_argument("--out", default="tdbie_out", help="output directory (default: tdbie_out)")
    p.add_argument("--seed", type=int, help="overrides the scenario seed")
    p.add_argument("--threads", type=int, default=1, help="independent reports run concurrently")
    p.add_argument("--tolerance", type=float, default=1e-6,
                   help="allowed negative margin, relative to the largest right-hand side")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise ConfigError("must be >= 1", "--threads")
        if not args.tolerance >= 0:
            raise ConfigError("must be >= 0", "--tolerance")
        cfg = cfgmod.load_config(args.config, args.seed)
        out = Outputs(args.out, cfgmod.scenario_hash(args.subcommand, cfg, args.tolerance))
        ok = COMMANDS[args.subcommand](cfg, out, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (TDBIEError, ArithmeticError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if not ok:
        print("numerical failure: at least one check did not pass", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
