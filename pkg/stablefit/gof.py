"""
Goodness of Fit
Kolmogorov-Smirnov comparison of fitted stable laws against a return series
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import stats

from .estimate_uni import UniEstimator, as_sample, fit_uni
from .numerics import ks_pvalue, ks_statistic, stable_cdf
from .stable_core import Param

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GofReport:
    estimator: str
    params: object
    n: int
    ks_d: float
    p_value: float
    mean: float
    sd: float
    median: float
    skew: float
    kurtosis: float

    def as_dict(self):
        return {
            "estimator": self.estimator,
            "params": self.params.as_dict(),
            "n": self.n,
            "ks_d": self.ks_d,
            "p_value": self.p_value,
            "mean": self.mean,
            "sd": self.sd,
            "median": self.median,
            "skew": self.skew,
            "kurtosis": self.kurtosis,
        }


def model_cdf(params):
    """CDF callable of a fitted law; the alpha = 2 law is Normal(delta, 2 sigma^2)."""
    if params.alpha == 2.0:
        return lambda x: stats.norm.cdf(x, loc=params.delta, scale=math.sqrt(2.0) * params.sigma)
    return lambda x: stable_cdf(params, x)


def describe(values):
    """Mean, sd, median, skewness and excess kurtosis of a series (pandas conventions)."""
    series = pd.Series(values, dtype=float)
    return {
        "mean": float(series.mean()),
        "sd": float(series.std()),
        "median": float(series.median()),
        "skew": float(series.skew()),
        "kurtosis": float(series.kurt()),
    }


def goodness_of_fit(values, estimator=UniEstimator.HYBRID, param=Param.ZERO):
    values = as_sample(values)
    estimator = UniEstimator(estimator)
    fitted = fit_uni(values, estimator)
    d = ks_statistic(values, model_cdf(fitted))
    p = ks_pvalue(d, values.size)
    logger.info("goodness_of_fit: %s D=%.6f p=%.4f", estimator.value, d, p)
    return GofReport(
        estimator=estimator.value,
        params=fitted.to_param(param),
        n=int(values.size),
        ks_d=d,
        p_value=p,
        **describe(values),
    )


def compare_estimators(values, param=Param.ZERO):
    """One GofReport per univariate estimator, in UniEstimator order."""
    return [goodness_of_fit(values, which, param) for which in UniEstimator]


def reports_frame(reports):
    """Flat table of reports: estimator, alpha, beta, sigma, delta, param, D, p."""
    rows = []
    for report in reports:
        row = {"estimator": report.estimator}
        row.update(report.params.as_dict())
        row.update({"n": report.n, "ks_d": report.ks_d, "p_value": report.p_value})
        rows.append(row)
    return pd.DataFrame(rows)


def cdf_plot_data(values, params):
    """Plot-ready table x, ecdf, model_cdf on the sorted sample."""
    x = np.sort(as_sample(values))
    n = x.size
    return pd.DataFrame(
        {
            "x": x,
            "ecdf": np.arange(1, n + 1) / n,
            "model_cdf": np.asarray(model_cdf(params)(x), dtype=float),
        }
    )
