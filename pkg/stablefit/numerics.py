"""
Numerical Kernels
OLS, non-negative least squares, stable CDF by CF inversion and the K-S statistic
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special, stats

from .errors import (
    AccuracyNotMetError,
    CollinearInputError,
    DimensionMismatchError,
    InvalidParameterError,
    NonConvergenceError,
)
from .stable_core import Param, StableParams, charfn_uni

logger = logging.getLogger(__name__)

CDF_TOLERANCE = 1e-6
# bound on the dropped Gil-Pelaez tail, (1/pi) int_T^inf e^{-t^alpha} / t dt
CDF_TRUNCATION_TOLERANCE = 1e-8
CDF_QUAD_TOLERANCE = 1e-9


def ols(x, y):
    """Least-squares line through (x, y). Returns (slope, intercept)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"x has {x.size} points, y has {y.size}")
    if x.size < 2:
        raise CollinearInputError("ols needs at least 2 points")
    if np.ptp(x) == 0.0:
        raise CollinearInputError("ols needs at least two distinct x values")
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(slope), float(intercept)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Overdetermined or square real system a @ x ~ b."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float).reshape(-1)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise InvalidParameterError("a must be a non-empty r x c matrix")
        if b.shape[0] != a.shape[0]:
            raise DimensionMismatchError(f"a has {a.shape[0]} rows, b has {b.shape[0]} entries")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InvalidParameterError("linear system entries must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def shape(self):
        return self.a.shape

    def residual_norm(self, x):
        return float(np.linalg.norm(self.a @ x - self.b))


def nnls(system):
    """
    argmin ||a x - b||_2 subject to x >= 0.

    Lawson-Hanson active set (scipy.optimize.nnls) capped at 3*c iterations;
    hitting the cap raises NonConvergenceError.
    """
    c = system.a.shape[1]
    try:
        x, _ = optimize.nnls(system.a, system.b, maxiter=3 * c)
    except RuntimeError as exc:
        raise NonConvergenceError(f"nnls did not converge in {3 * c} iterations: {exc}") from exc
    return np.maximum(x, 0.0)


def _standard_zero_form(params):
    zero = params.to_param(Param.ZERO)
    return zero, StableParams(zero.alpha, zero.beta, 1.0, 0.0, Param.ZERO)


def cdf_truncation(alpha):
    """
    Upper limit T of the standardized inversion integral: the smallest T whose tail
    bound e^{-s} / (pi alpha s), s = T^alpha, is below CDF_TRUNCATION_TOLERANCE.
    """
    log_tol = math.log(CDF_TRUNCATION_TOLERANCE)
    s = optimize.brentq(lambda s: -s - math.log(math.pi * alpha * s) - log_tol, 1.0, 200.0)
    return s ** (1.0 / alpha)


def _breakpoints(upper):
    """t = 1, 2, 4, ... below `upper`, so slow small-alpha tails start out subdivided."""
    count = max(1, int(math.floor(math.log2(upper))) + 1)
    return tuple(t for t in 2.0 ** np.arange(count) if t < upper)


def stable_cdf(params, x):
    """
    Distribution function of a stable law at x (scalar or array).

    Gil-Pelaez inversion F(z) = 1/2 - (1/pi) int_0^inf Im[e^{-itz} phi(t)] / t dt on the
    standardized Zero-form law, integrated with scipy's adaptive Gauss-Kronrod
    (quad_vec, vectorized over x). The interval is split at t = 1, 2, 4, ... and truncated
    at cdf_truncation(alpha). Results are clipped to [0, 1] and made non-decreasing in x.
    """
    zero, standard = _standard_zero_form(params)
    x_arr = np.asarray(x, dtype=float)
    flat = x_arr.reshape(-1)
    if flat.size == 0:
        return x_arr.copy()

    z = (flat - zero.delta) / zero.sigma
    upper = cdf_truncation(zero.alpha)

    def integrand(t):
        phi = charfn_uni(standard, t)
        return np.imag(np.exp(-1j * t * z) * phi) / t

    value, error = integrate.quad_vec(
        integrand,
        0.0,
        upper,
        epsabs=CDF_QUAD_TOLERANCE,
        epsrel=CDF_QUAD_TOLERANCE,
        norm="max",
        limit=20000,
        points=_breakpoints(upper),
    )
    if not math.isfinite(error) or error > CDF_TOLERANCE:
        raise AccuracyNotMetError(
            f"stable_cdf quadrature error {error:.3g} exceeds {CDF_TOLERANCE:g}", achieved=error
        )

    cdf = np.clip(0.5 - value / math.pi, 0.0, 1.0)
    order = np.argsort(z, kind="stable")
    cdf[order] = np.maximum.accumulate(cdf[order])

    if x_arr.ndim == 0:
        return float(cdf[0])
    return cdf.reshape(x_arr.shape)


def ks_statistic(sample, cdf):
    """
    D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the sorted sample.
    `cdf` must accept an array.
    """
    values = np.asarray(sample, dtype=float).reshape(-1)
    if values.size < 1:
        raise InvalidParameterError("ks_statistic needs at least one observation")
    return float(stats.kstest(values, cdf, method="asymp").statistic)


def ks_pvalue(d, n):
    """
    Asymptotic Kolmogorov p-value 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 n d^2).
    scipy.special.kolmogorov evaluates the same series.
    """
    if not 0.0 <= d <= 1.0:
        raise InvalidParameterError(f"d must be in [0, 1], got {d}")
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    return float(min(1.0, max(0.0, special.kolmogorov(math.sqrt(n) * d))))
