"""Command-line interface: verification, curves, estimates, simulation, plots.

Exit codes: 0 success, 1 a verification failed (a certified value left its
tolerance), 2 usage or configuration error.  All numeric output carries 17
significant digits.  ACCELFLOW_THREADS caps sweep parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace

import numpy as np

from . import bounds
from .estimators import flow_estimate, ridge_estimate
from .experiments import ConfigError, ExperimentConfig, figure_sweep
from .linalg import (Spectrum, attach_response, design_decompose,
                     read_matrix_csv, read_vector_csv)
from .oracle import compare_closed_form
from .plotting import PlotSchemaError, load_plot_series, render_line_plot
from .risk import SignalModel, risk_curve, write_risk_csv, RISK_CSV_HEADER
from .rng import SeededStream
from .shrinkage import FlowKind, gf_shrink, hb_shrink, nest_shrink, ridge_shrink
from .special import bessel_j1, j1_ratio

__all__ = ["main", "run"]


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _max_workers() -> int:
    raw = os.environ.get("ACCELFLOW_THREADS", "").strip()
    if not raw:
        return 1
    try:
        v = int(raw)
    except ValueError:
        return 1
    if v == 0:
        return os.cpu_count() or 1
    return max(1, v)


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) not in (3, 4):
        raise ConfigError("grid must be lo,hi,count[,log|linear]")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    scale = parts[3] if len(parts) == 4 else "log"
    spec = bounds.GridSpec(lo=lo, hi=hi, count=count, scale=scale)
    return spec.points()


# ---------------------------------------------------------------------------
# verify-constants

def _check(name, value, reference, tolerance, mode, runtime_ms):
    passed = (abs(value - reference) <= tolerance if mode == "eq"
              else value <= reference + tolerance)
    return {
        "name": name,
        "value": value,
        "paper_value": reference,
        "tolerance": tolerance,
        "pass": bool(passed),
        "runtime_ms": round(runtime_ms, 3),
    }


def _run_constant_checks(tol_override=None):
    checks = []

    def timed(fn):
        t0 = time.perf_counter()
        out = fn()
        return out, (time.perf_counter() - t0) * 1e3

    def tol(default):
        return tol_override if tol_override is not None else default

    r, ms = timed(bounds.gf_inflation_constant)
    checks.append(_check("gradient_flow_inflation", r.value,
                         bounds.GF_INFLATION, tol(1e-3), "eq", ms))
    r, ms = timed(bounds.nest_inflation_constant)
    checks.append(_check("accelerated_inflation", r.value,
                         bounds.NEST_INFLATION, tol(1e-3), "eq", ms))
    (sup, _x), ms = timed(bounds.nest_param_error_constant)
    checks.append(_check("accelerated_param_error", sup,
                         bounds.NEST_PARAM_ERROR, tol(1e-4), "eq", ms))
    grids = (np.logspace(-3, 1, 50), np.logspace(-3, 1, 50), np.logspace(-3, 2, 50))
    rep, ms = timed(lambda: bounds.hb_param_error_check(*grids))
    checks.append(_check("heavy_ball_f_sq", rep.max_f_sq,
                         bounds.HB_F_SQ_BOUND, 1e-6, "le", ms))
    checks.append(_check("heavy_ball_param_error", rep.max_fm1_sq,
                         bounds.HB_PARAM_ERROR, 1e-6, "le", 0.0))
    cross, ms = timed(bounds.tilde_h_crossover)
    structure_ok = all(c.structure_ok for c in cross.cases)
    checks.append(_check("crossover_z", cross.z_star,
                         bounds.CROSSOVER_Z, tol(1e-3), "eq", ms))
    checks.append(_check("crossover_case_structure",
                         1.0 if structure_ok else 0.0, 1.0, 0.0, "eq", 0.0))
    var_rep, ms = timed(bounds.hb_variance_bound_check)
    checks.append(_check("h_recomposition", var_rep.max_recomposition_error,
                         0.0, 1e-10, "le", ms))
    t0 = time.perf_counter()
    h1 = bounds.h_kappa(1.0)
    ms = (time.perf_counter() - t0) * 1e3
    checks.append(_check("h_at_kappa_1", h1, 8.0 + 8.0 * np.exp(-2.0),
                         1e-12, "eq", ms))
    lemma_grids = (np.logspace(-3, 1, 40), np.logspace(-3, 1, 40),
                   np.logspace(-3, 2, 40))
    lemma, ms = timed(lambda: bounds.hb_kernel_bound_checks(*lemma_grids))
    worst = max(lemma.max_violation_bias, lemma.max_violation_var_small_x,
                lemma.max_violation_var_large_x)
    checks.append(_check("kernel_inequalities", worst, 0.0, 1e-10, "le", ms))
    return checks


def _cmd_verify_constants(args) -> int:
    checks = _run_constant_checks(args.tol)
    report = {"checks": checks}
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "constants.json"), "w") as fh:
            fh.write(text + "\n")
    return 0 if all(c["pass"] for c in checks) else 1


# ---------------------------------------------------------------------------
# risk-curve / estimate / oracle-check / simulate / shrink / special-eval / plot

def _cmd_risk_curve(args) -> int:
    x = read_matrix_csv(args.design)
    design = design_decompose(x)
    grid = _parse_grid(args.grid)
    kind = FlowKind.parse(args.kind)
    if args.bayes:
        if args.r2 is None:
            raise ConfigError("config key 'r2' is missing (required with --bayes)")
        signal = SignalModel.prior(r_sq=args.r2, sigma_sq=args.sigma2, n=design.n)
    else:
        if args.beta0 is None:
            raise ConfigError("config key 'beta0' is missing (fixed-signal curves)")
        beta0 = read_vector_csv(args.beta0)
        if beta0.size != design.p:
            raise ConfigError("beta0 length does not match the design")
        signal = SignalModel.fixed(design.v_basis.T @ beta0, args.sigma2, design.n)
    curve = risk_curve(design.spectrum, signal, kind, grid)
    if args.out:
        write_risk_csv(args.out, kind, curve)
    else:
        sys.stdout.write(RISK_CSV_HEADER + "\n")
        for param, dec in curve:
            sys.stdout.write(",".join([kind.value, _fmt(param), _fmt(dec.bias_sq),
                                       _fmt(dec.variance), _fmt(dec.risk)]) + "\n")
    return 0


def _cmd_estimate(args) -> int:
    x = read_matrix_csv(args.design)
    y = read_vector_csv(args.response)
    design = attach_response(design_decompose(x), x, y)
    kind = FlowKind.parse(args.kind)
    if kind is FlowKind.RIDGE:
        beta = ridge_estimate(design, args.t)
    else:
        beta = flow_estimate(design, kind, args.t)
    for v in beta:
        print(_fmt(v))
    return 0


def _cmd_oracle_check(args) -> int:
    kind = FlowKind.parse(args.kind)
    if kind is FlowKind.RIDGE:
        raise ConfigError("oracle-check covers the three flows")
    stream = SeededStream(args.seed)
    eigs = np.sort(0.05 + 2.95 * stream.uniforms(args.p))
    spectrum = Spectrum(eigs)
    forcing = stream.normals(args.p)
    t_grid = np.linspace(0.0, args.t_end, args.grid_count)
    sup_error = compare_closed_form(kind, spectrum, forcing, t_grid, step=args.step)
    report = {
        "kind": kind.value,
        "p": args.p,
        "seed": args.seed,
        "step": args.step,
        "t_end": args.t_end,
        "sup_error": sup_error,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    if args.tol is not None and sup_error > args.tol:
        return 1
    return 0


def _cmd_simulate(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    if args.seed is not None:
        designs = tuple(replace(d, seed=args.seed) for d in config.design)
        config = replace(config, design=designs)
    if args.out:
        config = replace(config, output_dir=args.out)
    if config.output_dir is None:
        raise ConfigError("config key 'output_dir' is missing (or pass --out)")
    dataset = figure_sweep(config, bayes=args.bayes, workers=_max_workers())
    n_files = sum(len(v) for v in dataset.values())
    print(f"wrote {n_files} curve files and manifest.json to {config.output_dir}")
    return 0


def _cmd_shrink(args) -> int:
    kind = FlowKind.parse(args.kind)
    if kind is FlowKind.GRADIENT_FLOW:
        value = gf_shrink(args.s, args.t)
    elif kind is FlowKind.ACCELERATED_FLOW:
        value = nest_shrink(args.s, args.t)
    elif kind is FlowKind.HEAVY_BALL_FLOW:
        if args.mu is None:
            raise ConfigError("config key 'mu' is missing (heavy ball needs --mu)")
        value = hb_shrink(args.s, args.mu, args.t)
    else:
        value = ridge_shrink(args.s, args.t)
    print(_fmt(value))
    return 0


def _cmd_special_eval(args) -> int:
    if args.fn == "j1":
        print(_fmt(bessel_j1(args.x)))
    elif args.fn == "j1-ratio":
        print(_fmt(j1_ratio(args.x)))
    else:
        raise ConfigError(f"unknown function {args.fn!r}")
    return 0


def _cmd_plot(args) -> int:
    series = []
    x_label = y_label = None
    for path in args.inputs:
        s, xl, yl = load_plot_series(path, column=args.column)
        series.append(s)
        x_label = x_label or xl
        y_label = y_label or yl
    svg = render_line_plot(series, logx=args.logx, logy=args.logy,
                           x_label=x_label or "x", y_label=y_label or "y",
                           title=args.title)
    with open(args.out, "w") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowrisk",
        description="Risk curves, couplings, and certified constants for "
                    "continuous-time least-squares estimators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-constants", help="certify every constant and bound")
    p.add_argument("--out", help="directory for constants.json")
    p.add_argument("--tol", type=float, default=None,
                   help="override the equality tolerances")
    p.set_defaults(handler=_cmd_verify_constants)

    p = sub.add_parser("risk-curve", help="exact risk curve for one design")
    p.add_argument("--design", required=True, help="design matrix CSV")
    p.add_argument("--kind", required=True, help="gf | nest | hb | ridge")
    p.add_argument("--grid", required=True, help="lo,hi,count[,log|linear]")
    p.add_argument("--beta0", help="true coefficients CSV (fixed-signal mode)")
    p.add_argument("--bayes", action="store_true", help="prior-averaged curve")
    p.add_argument("--r2", type=float, help="prior signal energy r^2")
    p.add_argument("--sigma2", type=float, default=1.0, help="noise variance")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(handler=_cmd_risk_curve)

    p = sub.add_parser("estimate", help="coefficient path point on (X, y)")
    p.add_argument("--kind", required=True, help="gf | nest | hb | ridge")
    p.add_argument("--t", type=float, required=True,
                   help="time t for flows, penalty lambda for ridge")
    p.add_argument("--design", required=True, help="design matrix CSV")
    p.add_argument("--response", required=True, help="response vector CSV")
    p.set_defaults(handler=_cmd_estimate)

    p = sub.add_parser("oracle-check", help="RK4 vs closed form on a seeded instance")
    p.add_argument("--kind", required=True, help="gf | nest | hb")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--t-end", dest="t_end", type=float, default=20.0)
    p.add_argument("--grid-count", dest="grid_count", type=int, default=50)
    p.add_argument("--tol", type=float, default=None,
                   help="fail (exit 1) if sup error exceeds this")
    p.set_defaults(handler=_cmd_oracle_check)

    p = sub.add_parser("simulate", help="run a sweep config to CSV files")
    p.add_argument("--config", required=True, help="JSON config path")
    p.add_argument("--bayes", action="store_true", help="prior-averaged curves")
    p.add_argument("--seed", type=int, default=None, help="override design seeds")
    p.add_argument("--out", help="override output directory")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("shrink", help="one shrinkage factor")
    p.add_argument("--kind", required=True, help="gf | nest | hb | ridge")
    p.add_argument("--s", type=float, required=True, help="eigenvalue")
    p.add_argument("--t", type=float, required=True,
                   help="time t (flows) or lambda (ridge)")
    p.add_argument("--mu", type=float, default=None, help="heavy-ball damping level")
    p.set_defaults(handler=_cmd_shrink)

    p = sub.add_parser("special-eval", help="evaluate a special function")
    p.add_argument("--fn", required=True, help="j1 | j1-ratio")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(handler=_cmd_special_eval)

    p = sub.add_parser("plot", help="render CSV curves as SVG")
    p.add_argument("--in", dest="inputs", nargs="+", required=True,
                   help="input CSV files")
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--logx", action="store_true")
    p.add_argument("--logy", action="store_true")
    p.add_argument("--column", default="risk",
                   help="risk-schema column to plot (bias_sq | variance | risk)")
    p.add_argument("--title", default=None)
    p.set_defaults(handler=_cmd_plot)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (ConfigError, PlotSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
