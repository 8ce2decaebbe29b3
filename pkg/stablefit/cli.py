"""
Stablefit Command Line
simulate, fit, fit-mv, bench and gof subcommands
"""

import argparse
import json
import logging
import math
import os
import sys

import numpy as np
import pandas as pd

from . import bench
from .config import DEFAULTS, get_default_seed, get_default_threads
from .errors import ConfigError, InvalidParameterError, MissingFileError, StableFitError
from .estimate_multi import fit_spectral, spectral_model_on_grid
from .estimate_uni import UniEstimator, fit_uni, hybrid_fit
from .gof import cdf_plot_data, compare_estimators, goodness_of_fit, reports_frame
from .returns_data import RETURN_KINDS, load_csv, load_matrix, load_returns_series, to_returns
from .simulate import sample_mv, sample_uni
from .stable_core import Param, StableParams

logger = logging.getLogger(__name__)

PARAM_CHOICES = [p.value for p in Param]
FORMAT_CHOICES = list(DEFAULTS["formats"])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        items = obj.items()
    elif isinstance(obj, list):
        items = ((str(i + 1), v) for i, v in enumerate(obj))
    else:
        return {prefix: obj}
    flat = {}
    for key, value in items:
        flat.update(_flatten(value, f"{prefix}_{key}" if prefix else str(key)))
    return flat


def render_record(record, fmt):
    """One result object as json, a one-row csv, or aligned `key: value` text."""
    record = _jsonable(record)
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    flat = _flatten(record)
    if fmt == "csv":
        return pd.DataFrame([flat]).to_csv(index=False, lineterminator="\n")
    width = max(len(k) for k in flat)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in flat.items())


def render_frame(frame, fmt, meta=None):
    if fmt == "json":
        payload = dict(meta or {})
        payload["columns"] = list(frame.columns)
        payload["rows"] = frame.to_numpy().tolist()
        return json.dumps(_jsonable(payload), indent=2) + "\n"
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    return frame.to_string(index=False) + "\n"


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _seed(args):
    return get_default_seed() if args.seed is None else args.seed


def _read_json(path):
    if not os.path.isfile(path):
        raise MissingFileError(f"file not found: {path}")
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None


def spectral_model_from_dict(block):
    """SpectralModel from {alpha, d, L, weights, shift}; points come from the (d, L) grid."""
    try:
        d, L = int(block["d"]), int(block["L"])
        alpha = float(block["alpha"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"spectral model needs alpha, d and L: {exc}") from None
    weights = block.get("weights") or [1.0 / L] * L
    return spectral_model_on_grid(alpha, d, L, weights, block.get("shift"))


def load_spectral_model(path):
    return spectral_model_from_dict(_read_json(path))


def _params_from_args(args, overrides=None):
    values = {"alpha": None, "beta": 0.0, "sigma": 1.0, "delta": 0.0, "param": DEFAULTS["param"]}
    values.update({k: v for k, v in (overrides or {}).items() if k in values})
    for name in values:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if values["alpha"] is None:
        raise InvalidParameterError("--alpha is required")
    return StableParams(
        values["alpha"], values["beta"], values["sigma"], values["delta"], Param(values["param"])
    )


def cmd_simulate(args):
    seed = _seed(args)
    n = args.n or DEFAULTS["n"]
    if args.spectral:
        model = load_spectral_model(args.spectral)
        data = sample_mv(model, n, seed).data
        frame = pd.DataFrame(data, columns=[f"x{j + 1}" for j in range(model.d)])
        meta = {"model": {"alpha": model.alpha, "d": model.d, "L": model.L,
                          "weights": model.weights, "shift": model.shift}, "seed": seed}
    else:
        params = _params_from_args(args)
        frame = pd.DataFrame({"x": sample_uni(params, n, seed)})
        meta = {"params": params.as_dict(), "seed": seed}
    _write(render_frame(frame, args.format, meta), args.out)


def _load_series(args, default_kind):
    prices = load_csv(args.input, args.column, not args.no_header)
    return to_returns(prices, args.returns or default_kind)


def cmd_fit(args):
    values = _load_series(args, "none")
    param = Param(args.param)
    which = UniEstimator(args.estimator)
    record = {"estimator": which.value, "n": int(values.size)}
    if which == UniEstimator.HYBRID:
        report = hybrid_fit(values)
        record["params"] = report.params(param).as_dict()
        record["initial"] = report.initial.to_param(param).as_dict()
        record["stage"] = {
            "alpha1": report.stage.alpha1,
            "sigma1": report.stage.sigma1,
            "delta1": report.stage.delta1,
        }
        record["k_used"] = report.k_used
    else:
        record["params"] = fit_uni(values, which).to_param(param).as_dict()
    _write(render_record(record, args.format), args.out)


def cmd_fit_mv(args):
    columns = args.columns.split(",") if args.columns else None
    data = load_matrix(args.input, columns, not args.no_header)
    data = to_returns(data, args.returns or "none")
    fit = fit_spectral(data, args.L)
    record = fit.as_dict()
    record["n"] = int(data.shape[0])
    record["marginals"] = [m.params(Param(args.param)).as_dict() for m in fit.marginals]
    _write(render_record(record, args.format), args.out)


def parse_sweep(text):
    """'alpha=0.8,1.2,1.6' -> ('alpha', [0.8, 1.2, 1.6])."""
    name, sep, raw = text.partition("=")
    if not sep or not raw:
        raise InvalidParameterError(f"--sweep expects NAME=v1,v2,..., got {text!r}")
    try:
        values = [float(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise InvalidParameterError(f"--sweep values must be numbers, got {raw!r}") from None
    return name.strip(), values


def _bench_seed(value):
    return get_default_seed() if value is None else int(value)


def build_bench(args):
    """(McConfig, sweep or None) from the flags, falling back to --config then DEFAULTS."""
    file_cfg = _read_json(args.config) if args.config else {}

    def pick(flag, key, default=None):
        value = getattr(args, flag, None)
        return file_cfg.get(key, default) if value is None else value

    raw_estimator = pick("estimator", "estimator", bench.Estimator.HYBRID.value)
    try:
        estimator = bench.Estimator(raw_estimator)
    except ValueError:
        choices = ", ".join(e.value for e in bench.Estimator)
        raise ConfigError(f"unknown estimator {raw_estimator!r}; choose from {choices}") from None
    if estimator == bench.Estimator.SPECTRAL_ECF:
        if args.spectral:
            model = load_spectral_model(args.spectral)
        elif "spectral" in file_cfg:
            model = spectral_model_from_dict(file_cfg["spectral"])
        else:
            d = pick("d", "d", 2)
            L = pick("L", "L", DEFAULTS["grid_size"].get(int(d), 4))
            weights = [float(w) for w in args.weights.split(",")] if args.weights else None
            block = {"alpha": pick("alpha", "alpha"), "d": d, "L": L, "weights": weights}
            model = spectral_model_from_dict(block)
    else:
        model = _params_from_args(args, file_cfg)

    config = bench.McConfig(
        true_model=model,
        n=int(pick("n", "n", DEFAULTS["n"])),
        replicates=int(pick("reps", "replicates", DEFAULTS["replicates"])),
        seed=_bench_seed(pick("seed", "seed")),
        estimator=estimator,
    )
    sweep = None
    if args.sweep:
        sweep = parse_sweep(args.sweep)
    elif "sweep" in file_cfg:
        sweep = (file_cfg["sweep"]["parameter"], [float(v) for v in file_cfg["sweep"]["values"]])
    return config, sweep


def cmd_bench(args):
    try:
        config, sweep = build_bench(args)
    except StableFitError:
        raise
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad bench configuration: {exc!r}") from None
    threads = args.threads or get_default_threads()
    if sweep:
        results = bench.run_sweep(config, sweep[0], sweep[1], threads)
    else:
        results = [bench.run_mc(config, threads)]
    _write(bench.emit_table(results, args.format).decode("utf-8"), args.out)


def cmd_gof(args):
    series = load_returns_series(args.input, args.column, not args.no_header, args.returns or "log")
    values = series.values
    param = Param(args.param)
    if args.estimator == "all":
        reports = compare_estimators(values, param)
        text = render_frame(reports_frame(reports), args.format) if args.format != "json" else (
            json.dumps(_jsonable([r.as_dict() for r in reports]), indent=2) + "\n"
        )
    else:
        reports = [goodness_of_fit(values, args.estimator, param)]
        text = render_record(reports[0].as_dict(), args.format)
    if args.plot_data:
        cdf_plot_data(values, reports[0].params).to_csv(args.plot_data, index=False, lineterminator="\n")
        logger.info("wrote plot data to %s", args.plot_data)
    _write(text, args.out)


def _add_output(parser):
    parser.add_argument("--format", choices=FORMAT_CHOICES, default="text")
    parser.add_argument("--out", help="write to this file instead of stdout")
    parser.add_argument("--param", choices=PARAM_CHOICES, default=DEFAULTS["param"],
                        help="parametrization of reported (or given) parameters")


def _add_law(parser):
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--delta", type=float)


def _add_input(parser, default_returns):
    parser.add_argument("input", help="CSV or Excel file")
    parser.add_argument("--no-header", action="store_true")
    parser.add_argument("--returns", choices=RETURN_KINDS, default=None,
                        help=f"transform prices to returns first (default {default_returns})")


def build_parser():
    parser = argparse.ArgumentParser(prog="stablefit", description="Stable-law simulation and estimation")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw a univariate or spectral sample")
    _add_law(p)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--spectral", help="JSON model file {alpha, d, L, weights, shift}")
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="fit a univariate stable law")
    _add_input(p, "none")
    p.add_argument("--column")
    p.add_argument("--estimator", choices=[e.value for e in UniEstimator], default="hybrid")
    _add_output(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fit-mv", help="fit alpha, shift and spectral weights (d = 1, 2, 3)")
    _add_input(p, "none")
    p.add_argument("--columns", help="comma-separated column names or indices")
    p.add_argument("--L", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_fit_mv)

    p = sub.add_parser("bench", help="Monte-Carlo table of estimator metrics")
    _add_law(p)
    p.add_argument("--estimator", choices=[e.value for e in bench.Estimator])
    p.add_argument("--n", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--weights", help="comma-separated spectral weights")
    p.add_argument("--spectral", help="JSON model file {alpha, d, L, weights, shift}")
    p.add_argument("--sweep", help="NAME=v1,v2,... e.g. alpha=0.8,1.2,1.6")
    p.add_argument("--config", help="JSON file with the same fields as the flags")
    p.add_argument("--threads", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_bench, param=None)

    p = sub.add_parser("gof", help="Kolmogorov-Smirnov goodness of fit of a return series")
    _add_input(p, "log")
    p.add_argument("--column")
    p.add_argument("--estimator", choices=[e.value for e in UniEstimator] + ["all"], default="hybrid")
    p.add_argument("--plot-data", help="write x, ecdf, model_cdf CSV here")
    _add_output(p)
    p.set_defaults(func=cmd_gof)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except StableFitError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return 1
    return 0
