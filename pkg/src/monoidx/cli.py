"""Command-line interface; every command prints one JSON envelope.

Exit status: 0 on success, 1 on a data or estimation error, 2 on a usage
error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import secrets
import sys

from . import __version__
from .bootstrap import bootstrap_ci, subsample_size
from .core import index_numeric
from .errors import MonoidxError
from .functions import BANK, get_function
from .grouping import grouped_index, plan_groups, rate_exponents
from .seriesio import read_series, write_series
from .smoothing import BandwidthGrid, SyntheticSource, select_bandwidth
from .studies import (
    SURFACE_COLUMNS,
    TABLE_COLUMNS,
    TRACE_COLUMNS,
    StudyConfig,
    convergence_trace,
    rate_estimate,
    surface_study,
    table_report,
    write_csv,
)
from .synth import NoiseSpec, generate_series

SEED_ENV = "MONOIDX_SEED"


def _seed_arg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _m_arg(text):
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}") from None


def _resolve_seed(parser, flag):
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return _seed_arg(env)
        except argparse.ArgumentTypeError as exc:
            parser.error(f"{SEED_ENV}: {exc}")
    return secrets.randbits(63)


def build_parser():
    p = argparse.ArgumentParser(
        prog="monoidx",
        description="Index of increase for noisy samples of a function on [0, 1].")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def threads(sp):
        sp.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads (results do not depend on this)")

    g = sub.add_parser("generate", help="write a noisy sample of a bank function")
    g.add_argument("--fn", required=True, choices=sorted(BANK))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--seed", type=_seed_arg)
    g.add_argument("--out", required=True, help="CSV path, or - for stdout")
    threads(g)

    i = sub.add_parser("index", help="ungrouped index of increase of a series")
    i.add_argument("--in", dest="infile", required=True)
    i.add_argument("--rescale", action="store_true", help="map t affinely onto [0, 1]")

    gi = sub.add_parser("gindex", help="grouped index of increase")
    gi.add_argument("--alpha", type=float, required=True)
    gi.add_argument("--in", dest="infile", required=True)
    gi.add_argument("--rescale", action="store_true")

    c = sub.add_parser("cv", help="choose alpha by repeated k-fold cross-validation")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="infile")
    src.add_argument("--fn", choices=sorted(BANK))
    c.add_argument("--n", type=int, default=10000)
    c.add_argument("--sigma", type=float, default=1.0)
    c.add_argument("--folds", type=int, default=5)
    c.add_argument("--repeats", type=_positive_int, default=50)
    c.add_argument("--grid-size", type=_positive_int, default=30)
    c.add_argument("--grid-min", type=float, default=0.01)
    c.add_argument("--grid-max", type=float, default=0.99)
    c.add_argument("--seed", type=_seed_arg)
    c.add_argument("--rescale", action="store_true")
    threads(c)

    b = sub.add_parser("boot", help="m-out-of-n bootstrap confidence interval")
    b.add_argument("--alpha", type=float, required=True)
    b.add_argument("--replicates", type=_positive_int, default=1000)
    b.add_argument("--m", type=_m_arg, default=None, metavar="auto|INT")
    b.add_argument("--in", dest="infile", required=True)
    b.add_argument("--seed", type=_seed_arg)
    b.add_argument("--distribution", action="store_true",
                   help="include every replicate value in the result")
    b.add_argument("--rescale", action="store_true")
    threads(b)

    s = sub.add_parser("study", help="batch Monte Carlo studies, written as CSV")
    s.add_argument("kind", choices=["surface", "trace", "table"])
    s.add_argument("--config", required=True, help="JSON study configuration")
    threads(s)
    return p


def _envelope(command, inputs, seed, result):
    return {"command": command, "inputs": inputs, "seed": seed, "version": __version__,
            "result": result}


def _index_result(iv):
    return {"value": iv.value, "numerator": iv.numerator, "denominator": iv.denominator}


def _run(args, parser):
    cmd = args.command
    if cmd == "generate":
        if args.n < 2:
            parser.error("argument --n: must be at least 2")
        seed = _resolve_seed(parser, args.seed)
        series = generate_series(get_function(args.fn), args.n, NoiseSpec(args.sigma, seed),
                                 workers=args.threads)
        write_series(series, args.out)
        inputs = {"fn": args.fn, "n": args.n, "sigma": args.sigma, "out": args.out}
        return _envelope(cmd, inputs, seed, {"path": args.out, "n": len(series)})

    if cmd == "index":
        series = read_series(args.infile, rescale=args.rescale)
        inputs = {"in": args.infile, "n": len(series)}
        return _envelope(cmd, inputs, None, _index_result(index_numeric(series)))

    if cmd == "gindex":
        series = read_series(args.infile, rescale=args.rescale)
        plan = plan_groups(len(series), args.alpha)
        res = _index_result(grouped_index(series, args.alpha))
        res.update({"groups": plan.M, "group_size": plan.N, "dropped": plan.dropped})
        return _envelope(cmd, {"in": args.infile, "alpha": args.alpha, "n": len(series)},
                         None, res)

    if cmd == "cv":
        seed = _resolve_seed(parser, args.seed)
        grid = BandwidthGrid.linspace(args.grid_size, args.grid_min, args.grid_max)
        if args.infile:
            source = read_series(args.infile, rescale=args.rescale)
            inputs = {"in": args.infile}
        else:
            source = SyntheticSource(get_function(args.fn), args.n, args.sigma)
            inputs = {"fn": args.fn, "n": args.n, "sigma": args.sigma}
        inputs.update(folds=args.folds, repeats=args.repeats, grid_size=args.grid_size,
                      grid_min=args.grid_min, grid_max=args.grid_max)
        rep = select_bandwidth(source, grid, folds=args.folds, repeats=args.repeats,
                               seed=seed, workers=args.threads)
        return _envelope(cmd, inputs, seed, rep.to_dict())

    if cmd == "boot":
        seed = _resolve_seed(parser, args.seed)
        series = read_series(args.infile, rescale=args.rescale)
        m = args.m
        rep = bootstrap_ci(series, args.alpha, B=args.replicates, seed=seed, m=m,
                           workers=args.threads)
        inputs = {"in": args.infile, "alpha": args.alpha, "replicates": args.replicates,
                  "m": "auto" if m is None else m, "n": len(series)}
        return _envelope(cmd, inputs, seed, rep.to_dict(with_distribution=args.distribution))

    if cmd == "study":
        cfg = StudyConfig.load(args.config)
        cfg.workers = max(cfg.workers, args.threads)
        inputs = {"kind": args.kind, "config": args.config}
        if args.kind == "surface":
            rows = surface_study(cfg)
            path = write_csv(rows, f"{cfg.outputs}_surface.csv", SURFACE_COLUMNS)
            result = {"path": str(path), "rows": len(rows)}
        elif args.kind == "trace":
            rows, fits = [], []
            for fn in cfg.functions:
                for a in cfg.alpha_grid:
                    trace = convergence_trace(fn, a, cfg.sigma, cfg.n_grid, cfg.seeds,
                                              workers=cfg.workers)
                    rows.extend(trace)
                    try:
                        slope = rate_estimate(trace)
                    except MonoidxError as exc:
                        slope, note = None, f"{type(exc).__name__}: {exc}"
                    else:
                        note = None
                    beta = rate_exponents(a, get_function(fn).holder_gamma).beta
                    fits.append({"fn": fn, "alpha": a, "slope": slope,
                                 "predicted_slope": -beta, "note": note})
            path = write_csv(rows, f"{cfg.outputs}_trace.csv", TRACE_COLUMNS)
            result = {"path": str(path), "rows": len(rows), "fits": fits}
        else:
            rows = table_report(cfg.functions, cfg.alpha_grid, cfg.sigma, cfg.n_grid[0],
                                B=cfg.replicates, seed=cfg.seeds[0], m=cfg.subsample,
                                workers=cfg.workers)
            path = write_csv(rows, f"{cfg.outputs}_table.csv", TABLE_COLUMNS)
            result = {"path": str(path), "rows": rows}
        return _envelope(cmd, inputs, cfg.seeds, result)

    raise AssertionError(cmd)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        env = _run(args, parser)
    except (MonoidxError, OSError) as exc:
        name = type(exc).__name__
        json.dump({"command": args.command, "error": name, "message": str(exc),
                   "version": __version__}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    json.dump(_json_safe(env), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
