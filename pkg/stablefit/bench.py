"""
Monte-Carlo Bench
Replicate, fit and aggregate estimator metrics; emit tables as text, CSV, JSON or Excel
"""

import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
import pandas as pd

from .config import DEFAULTS
from .errors import InvalidParameterError, StableFitError
from .estimate_multi import fit_spectral
from .estimate_uni import hybrid_fit, kw_initial
from .simulate import sample_mv, sample_uni
from .stable_core import Param, SpectralModel, StableParams

logger = logging.getLogger(__name__)

COLUMNS = [
    "parameter",
    "true",
    "mean",
    "sd",
    "mse",
    "rmse",
    "estimator",
    "model",
    "n",
    "replicates",
    "seed",
    "successes",
    "failures",
    "valid",
]
FORMATS = ("text", "csv", "json")


class Estimator(str, Enum):
    HYBRID = "hybrid"
    KW = "kw"
    SPECTRAL_ECF = "spectral-ecf"


@dataclass(frozen=True)
class McConfig:
    true_model: object
    n: int
    replicates: int
    seed: int
    estimator: Estimator = Estimator.HYBRID

    def __post_init__(self):
        object.__setattr__(self, "estimator", Estimator(self.estimator))
        if int(self.replicates) < 1:
            raise InvalidParameterError(f"replicates must be >= 1, got {self.replicates}")
        if int(self.n) < DEFAULTS["min_sample_size"]:
            raise InvalidParameterError(
                f"n must be >= {DEFAULTS['min_sample_size']}, got {self.n}"
            )
        spectral = self.estimator == Estimator.SPECTRAL_ECF
        if spectral and not isinstance(self.true_model, SpectralModel):
            raise InvalidParameterError("the spectral-ecf estimator needs a spectral model")
        if not spectral and not isinstance(self.true_model, StableParams):
            raise InvalidParameterError(f"the {self.estimator.value} estimator needs a univariate model")

    def model_label(self):
        model = self.true_model
        if isinstance(model, SpectralModel):
            return f"alpha={model.alpha:g} d={model.d} L={model.L}"
        return (
            f"alpha={model.alpha:g} beta={model.beta:g} sigma={model.sigma:g} "
            f"delta={model.delta:g} param={model.param.value}"
        )


@dataclass(frozen=True)
class ParamMetrics:
    parameter: str
    true: float
    mean: float
    sd: float
    mse: float
    rmse: float


@dataclass(frozen=True)
class McMetrics:
    config: McConfig
    params: list
    successes: int
    failures: int
    valid: bool
    wall_time: float = field(default=0.0, compare=False)


def replicate_seed(seed, index):
    """Child seed of replicate `index`: SeedSequence(seed, spawn_key=(index,))."""
    return np.random.SeedSequence(int(seed), spawn_key=(int(index),))


def true_values(config):
    """Ordered (name, value) pairs the estimator is scored against."""
    model = config.true_model
    if config.estimator == Estimator.SPECTRAL_ECF:
        pairs = [("alpha", model.alpha)]
        pairs += [(f"gamma_{l + 1}", float(w)) for l, w in enumerate(model.weights)]
        pairs += [(f"delta_{j + 1}", float(s)) for j, s in enumerate(model.shift)]
        return pairs
    truth = model.to_param(Param.ZERO)
    return [(name, getattr(truth, name)) for name in ("alpha", "beta", "sigma", "delta")]


def _estimates(config, index):
    seed = replicate_seed(config.seed, index)
    if config.estimator == Estimator.SPECTRAL_ECF:
        fit = fit_spectral(sample_mv(config.true_model, config.n, seed), config.true_model.L)
        return [fit.alpha_hat, *fit.gamma_hat.tolist(), *fit.delta_hat.tolist()]
    sample = sample_uni(config.true_model, config.n, seed)
    est = hybrid_fit(sample).final if config.estimator == Estimator.HYBRID else kw_initial(sample)
    return [est.alpha, est.beta, est.sigma, est.delta]


def _run_replicate(config, index):
    try:
        return _estimates(config, index)
    except (StableFitError, np.linalg.LinAlgError, FloatingPointError) as exc:
        logger.debug("replicate %d failed: %s", index, exc)
        return None


def _aggregate(name, true, values):
    k = len(values)
    mean = math.fsum(values) / k
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (k - 1)) if k > 1 else 0.0
    mse = math.fsum((v - true) ** 2 for v in values) / k
    return ParamMetrics(name, float(true), mean, sd, mse, math.sqrt(mse))


def run_mc(config, threads=None):
    """
    Simulate, fit and score `config.replicates` independent samples.
    Replicate k always draws from replicate_seed(seed, k), so the result does not
    depend on `threads`. Failed fits are excluded and counted.
    """
    threads = threads or 1
    started = time.perf_counter()
    indices = range(config.replicates)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: _run_replicate(config, i), indices))
    else:
        results = [_run_replicate(config, i) for i in indices]

    ok = [r for r in results if r is not None]
    failures = len(results) - len(ok)
    truth = true_values(config)
    params = []
    if ok:
        columns = list(zip(*ok))
        params = [_aggregate(name, true, list(col)) for (name, true), col in zip(truth, columns)]
    else:
        params = [ParamMetrics(name, float(true), *([math.nan] * 4)) for name, true in truth]

    valid = bool(ok) and failures <= DEFAULTS["max_failure_fraction"] * config.replicates
    wall_time = time.perf_counter() - started
    logger.info(
        "run_mc: %s %s n=%d reps=%d failures=%d wall=%.2fs",
        config.estimator.value,
        config.model_label(),
        config.n,
        config.replicates,
        failures,
        wall_time,
    )
    if not valid:
        logger.warning("run_mc: %d of %d replicates failed, run marked invalid", failures, config.replicates)
    return McMetrics(config, params, len(ok), failures, valid, wall_time)


SWEEPABLE = ("alpha", "beta", "sigma", "delta", "n")


def run_sweep(base_config, parameter, values, threads=None):
    """One McMetrics per swept value of `parameter` (alpha, beta, sigma, delta or n)."""
    if parameter not in SWEEPABLE:
        raise InvalidParameterError(f"cannot sweep {parameter!r}; choose from {', '.join(SWEEPABLE)}")
    model = base_config.true_model
    results = []
    for value in values:
        if parameter == "n":
            config = replace(base_config, n=int(value))
        elif isinstance(model, SpectralModel):
            if parameter != "alpha":
                raise InvalidParameterError("spectral models can only sweep alpha or n")
            swept = SpectralModel(float(value), model.points, model.weights, model.shift)
            config = replace(base_config, true_model=swept)
        else:
            config = replace(base_config, true_model=replace(model, **{parameter: float(value)}))
        results.append(run_mc(config, threads))
    return results


def _clean(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    return None if not math.isfinite(value) else value


def metrics_rows(metrics):
    rows = []
    for m in metrics:
        cfg = m.config
        for p in m.params:
            rows.append(
                {
                    "parameter": p.parameter,
                    "true": _clean(p.true),
                    "mean": _clean(p.mean),
                    "sd": _clean(p.sd),
                    "mse": _clean(p.mse),
                    "rmse": _clean(p.rmse),
                    "estimator": cfg.estimator.value,
                    "model": cfg.model_label(),
                    "n": int(cfg.n),
                    "replicates": int(cfg.replicates),
                    "seed": int(cfg.seed),
                    "successes": int(m.successes),
                    "failures": int(m.failures),
                    "valid": bool(m.valid),
                }
            )
    return rows


def rows_frame(rows):
    return pd.DataFrame(rows, columns=COLUMNS)


def emit_rows(rows, fmt="text"):
    if fmt == "json":
        return (json.dumps({"columns": COLUMNS, "rows": rows}, indent=2) + "\n").encode("utf-8")
    frame = rows_frame(rows)
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")
    if fmt == "text":
        return (frame.to_string(index=False) + "\n").encode("utf-8")
    raise InvalidParameterError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit_table(metrics, fmt="text"):
    """Table bytes with columns parameter, true, mean, sd, mse, rmse then the config echo."""
    if not metrics:
        raise InvalidParameterError("emit_table needs at least one result")
    return emit_rows(metrics_rows(metrics), fmt)


def parse_table_json(data):
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    payload = json.loads(data)
    return [{column: row.get(column) for column in payload["columns"]} for row in payload["rows"]]


def emit_excel(rows, sheet_name="Monte Carlo"):
    return frame_to_excel(rows_frame(rows), sheet_name)


def frame_to_excel(frame, sheet_name):
    """Excel workbook bytes of a table with a formatted header row and fitted column widths."""
    buffer = io.BytesIO()
    with pd.ExcelWriter(buffer, engine="xlsxwriter") as writer:
        frame.to_excel(writer, sheet_name=sheet_name, index=False)
        workbook = writer.book
        worksheet = writer.sheets[sheet_name]
        header_format = workbook.add_format(
            {"bold": True, "text_wrap": True, "valign": "top", "fg_color": "#D7E4BD", "border": 1}
        )
        for col_num, value in enumerate(frame.columns.values):
            worksheet.write(0, col_num, value, header_format)
        for col_idx, column in enumerate(frame.columns):
            width = max(frame[column].astype(str).map(len).max() if len(frame) else 0, len(column))
            worksheet.set_column(col_idx, col_idx, min(width + 2, 50))
    buffer.seek(0)
    return buffer.getvalue()
