"""
Univariate Estimation
Empirical characteristic function, Kogon-Williams regressions and the hybrid estimator
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .config import DEFAULTS
from .errors import (
    DegenerateSampleError,
    DegenerateWeightsError,
    InsufficientDataError,
    InsufficientPointsError,
    InvalidParameterError,
)
from .numerics import ols
from .stable_core import Param, StableParams, is_alpha_one, tan_half_pi_alpha

logger = logging.getLogger(__name__)

KW_T_GRID = np.arange(1, 11) / 10.0
MIN_ALPHA = 0.1
# regression slopes are clamped to [MIN_SLOPE, 2]; Kogon-Williams alphas to [MIN_ALPHA, 2]
MIN_SLOPE = 1e-6
MAX_ALPHA = 2.0
K_MIN = 9
K_MAX = 134
# |phi|^2 at or below this carries no usable information for ln(-ln|phi|^2)
ABS_SQ_FLOOR = 1e-300
PRESS_T1 = (3.0**2.3) ** 3.7
PRESS_T2 = (3.0**2.1) ** 3.7
WEIGHT_GAP_TOL = 1e-14


def as_sample(sample, min_n=1):
    """1-D float array of finite values with at least `min_n` entries."""
    values = np.asarray(sample, dtype=float).reshape(-1)
    if not np.all(np.isfinite(values)):
        raise InvalidParameterError("sample contains non-finite values")
    if values.size < min_n:
        raise InsufficientDataError(f"need at least {min_n} observations, got {values.size}")
    return values


def _check_not_degenerate(values):
    if values.size and np.all(values == values[0]):
        raise DegenerateSampleError("all observations are equal")


def ecf(sample, t):
    """(1/n) sum_j exp(i t x_j) at t (scalar or array)."""
    values = as_sample(sample)
    t_arr = np.asarray(t, dtype=float)
    phi = np.exp(1j * np.multiply.outer(t_arr.reshape(-1), values)).mean(axis=1)
    if t_arr.ndim == 0:
        return complex(phi[0])
    return phi.reshape(t_arr.shape)


def _clamp_alpha(slope, floor=MIN_SLOPE):
    return min(MAX_ALPHA, max(floor, float(slope)))


def _usable_points(abs_sq, t_grid):
    abs_sq = np.asarray(abs_sq, dtype=float).reshape(-1)
    t_grid = np.asarray(t_grid, dtype=float).reshape(-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = np.log(-np.log(abs_sq))
    keep = np.isfinite(y) & (abs_sq > ABS_SQ_FLOOR) & (t_grid > 0.0)
    return y[keep], np.log(t_grid[keep]), keep


@dataclass(frozen=True, eq=False)
class RegressionPoints:
    """Data and fit of the ln(-ln|phi|^2) = mu + alpha ln t regression."""

    y: np.ndarray
    a: np.ndarray
    mu_hat: float
    slope_hat: float

    @property
    def k(self):
        return self.y.size


def fit_regression(abs_sq, t_grid, alpha_floor=MIN_SLOPE):
    """
    Regress ln(-ln|phi(t_k)|^2) on ln t_k.
    Returns (alpha1, sigma1, RegressionPoints); alpha1 is the slope clamped to [alpha_floor, 2].
    """
    y, a, _ = _usable_points(abs_sq, t_grid)
    if y.size < 2:
        raise InsufficientPointsError(f"only {y.size} usable regression points")
    slope, mu = ols(a, y)
    alpha1 = _clamp_alpha(slope, alpha_floor)
    sigma1 = (math.exp(mu) / 2.0) ** (1.0 / alpha1)
    return alpha1, sigma1, RegressionPoints(y=y, a=a, mu_hat=mu, slope_hat=slope)


def _phase_weight(alpha, sigma, t):
    scaled = sigma * t
    if is_alpha_one(alpha):
        return -(2.0 / math.pi) * scaled * np.log(scaled)
    return tan_half_pi_alpha(alpha) * (scaled**alpha - scaled)


def kw_from_cf(phi, t_grid=KW_T_GRID):
    """
    Kogon-Williams estimates from CF values phi(t) on a positive grid (Zero form).

    alpha and sigma come from ln(-ln|phi|^2) = ln 2 + alpha ln sigma + alpha ln t;
    beta and delta from the phase model arg phi(t) = delta t + beta w(t).
    """
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    t_grid = np.asarray(t_grid, dtype=float).reshape(-1)
    alpha, sigma, _ = fit_regression(np.abs(phi) ** 2, t_grid, alpha_floor=MIN_ALPHA)

    w = _phase_weight(alpha, sigma, t_grid)
    design = np.column_stack([t_grid, w])
    (delta, beta), *_ = np.linalg.lstsq(design, np.angle(phi), rcond=None)
    beta = min(1.0, max(-1.0, float(beta)))
    return StableParams(alpha, beta, sigma, float(delta), Param.ZERO)


def kw_initial(sample):
    """
    Kogon-Williams initial estimates (alpha0, beta0, sigma0, delta0) in the Zero form.
    The sample is standardized by its median and half inter-quartile range first;
    the Zero form is location-scale equivariant so the map back is exact.
    """
    values = as_sample(sample, DEFAULTS["min_sample_size"])
    _check_not_degenerate(values)

    center = float(np.median(values))
    q25, q75 = np.percentile(values, [25.0, 75.0])
    scale = (q75 - q25) / 2.0
    if scale <= 0.0:
        scale = float(np.mean(np.abs(values - center)))
    standardized = (values - center) / scale

    est = kw_from_cf(ecf(standardized, KW_T_GRID), KW_T_GRID)
    initial = StableParams(
        est.alpha, est.beta, scale * est.sigma, scale * est.delta + center, Param.ZERO
    )
    logger.debug("kw_initial: %s", initial.as_dict())
    return initial


def _k_curves(alpha):
    f1 = 24.36 * alpha**-1.47
    f2 = 20.58 * alpha**-1.43
    f3 = 122.9 * alpha**4 - 648.2 * alpha**3 + 1245.0 * alpha**2 - 1040.0 * alpha + 335.2
    return f1, f2, f3


def select_k(alpha0, n):
    """Number K of regression points from the fitted optimum-K curves (n = 200, 800, 1600)."""
    f1, f2, f3 = _k_curves(float(alpha0))
    if n <= 200:
        k = f1
    elif n <= 800:
        k = f1 + (f2 - f1) * (n - 200) / 600.0
    else:
        # n > 1600 extrapolates along the same line
        k = f2 + (f3 - f2) * (n - 800) / 800.0
    if not math.isfinite(k):
        return K_MAX
    return int(min(K_MAX, max(K_MIN, math.floor(k + 0.5))))


def regression_grid(k):
    return math.pi * np.arange(1, int(k) + 1) / 25.0


def regress_alpha_sigma(normalized, k):
    """(alpha1, sigma1) from K points t_k = pi k / 25 of the normalized sample's ECF."""
    if k < 2:
        raise InsufficientPointsError(f"k must be >= 2, got {k}")
    t_grid = regression_grid(k)
    alpha1, sigma1, _ = fit_regression(np.abs(ecf(normalized, t_grid)) ** 2, t_grid)
    return alpha1, sigma1


def press_delta_from_phase(u1, u2, alpha1, t1=PRESS_T1, t2=PRESS_T2):
    """
    Location from the phase at two points, using u(t)/t = delta + c g(t) with
    g(t) = |t|^(alpha - 1), or ln|t| at alpha = 1.
    """
    if is_alpha_one(alpha1):
        g1, g2 = math.log(abs(t1)), math.log(abs(t2))
    else:
        g1, g2 = abs(t1) ** (alpha1 - 1.0), abs(t2) ** (alpha1 - 1.0)
    gap = g2 - g1
    if abs(gap) < WEIGHT_GAP_TOL:
        raise DegenerateWeightsError(f"phase weights coincide (gap {gap:.3g})")
    return (u1 / t1 * g2 - u2 / t2 * g1) / gap


def _phase(values, t):
    return math.atan2(float(np.sin(t * values).sum()), float(np.cos(t * values).sum()))


def press_delta(normalized, alpha1):
    values = as_sample(normalized)
    return press_delta_from_phase(
        _phase(values, PRESS_T1), _phase(values, PRESS_T2), alpha1, PRESS_T1, PRESS_T2
    )


@dataclass(frozen=True)
class StageEstimates:
    alpha1: float
    sigma1: float
    delta1: float


@dataclass(frozen=True, eq=False)
class UniFitReport:
    """Everything the hybrid pipeline computed. `final` is a Zero-form law, like `initial`."""

    initial: StableParams
    stage: StageEstimates
    final: StableParams
    k_used: int
    t_grid: np.ndarray
    n: int = 0
    regression: RegressionPoints = field(default=None, repr=False)

    def params(self, param=Param.ZERO):
        return self.final.to_param(param)


def combine_stages(initial, stage):
    """alpha = alpha1, sigma = sigma0 sigma1, delta = sigma0 delta1 + delta0, beta = beta0."""
    return StableParams(
        alpha=stage.alpha1,
        beta=initial.beta,
        sigma=initial.sigma * stage.sigma1,
        delta=initial.sigma * stage.delta1 + initial.delta,
        param=Param.ZERO,
    )


def hybrid_fit(sample):
    values = as_sample(sample, DEFAULTS["min_sample_size"])
    _check_not_degenerate(values)

    initial = kw_initial(values)
    normalized = (values - initial.delta) / initial.sigma

    k = select_k(initial.alpha, values.size)
    t_grid = regression_grid(k)
    alpha1, sigma1, points = fit_regression(np.abs(ecf(normalized, t_grid)) ** 2, t_grid)
    delta1 = press_delta(normalized, alpha1)

    stage = StageEstimates(alpha1, sigma1, delta1)
    final = combine_stages(initial, stage)
    logger.debug(
        "hybrid_fit: n=%d K=%d stage=(%.6f, %.6f, %.6f)", values.size, k, alpha1, sigma1, delta1
    )
    return UniFitReport(
        initial=initial,
        stage=stage,
        final=final,
        k_used=k,
        t_grid=t_grid,
        n=values.size,
        regression=points,
    )


def gaussian_fit(sample):
    """Normal baseline as the alpha = 2 stable law: sigma = sd / sqrt(2), delta = mean."""
    values = as_sample(sample, 2)
    _check_not_degenerate(values)
    sd = float(np.std(values, ddof=1))
    return StableParams(2.0, 0.0, sd / math.sqrt(2.0), float(np.mean(values)), Param.ZERO)


class UniEstimator(str, Enum):
    HYBRID = "hybrid"
    KW = "kw"
    GAUSSIAN = "gaussian"


def fit_uni(sample, which=UniEstimator.HYBRID):
    """Fitted StableParams for the chosen estimator (the tag says which form)."""
    which = UniEstimator(which)
    if which == UniEstimator.HYBRID:
        return hybrid_fit(sample).final
    if which == UniEstimator.KW:
        return kw_initial(sample)
    return gaussian_fit(sample)
