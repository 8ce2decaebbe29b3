"""
Stable Laws - Core
Parametrizations, characteristic functions and psi-function variants
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.special import xlogy

from .errors import DimensionMismatchError, InvalidParameterError

# |alpha - 1| below this selects the alpha = 1 formulas everywhere
ALPHA_ONE_TOL = 1e-9
UNIT_NORM_TOL = 1e-12


class Param(str, Enum):
    """Characteristic-function form: ZERO is the continuous one, ONE the classical one."""

    ZERO = "zero"
    ONE = "one"


class PsiVariant(str, Enum):
    STANDARD = "standard"
    CONTINUOUS = "continuous"
    REAL_D1 = "real-d1"
    REAL_D3 = "real-d3"


def is_alpha_one(alpha):
    return abs(alpha - 1.0) < ALPHA_ONE_TOL


def tan_half_pi_alpha(alpha):
    """tan(pi*alpha/2), returned as exactly 0 for the Gaussian case."""
    if alpha == 2.0:
        return 0.0
    return math.tan(math.pi * alpha / 2.0)


def _scalar_or_array(original, result):
    return result.item() if np.ndim(original) == 0 else result


def _check_alpha(alpha):
    if not math.isfinite(alpha) or not 0.0 < alpha <= 2.0:
        raise InvalidParameterError(f"alpha must be in (0, 2], got {alpha}")


@dataclass(frozen=True)
class StableParams:
    """Univariate stable law (alpha, beta, sigma, delta) tagged with its parametrization."""

    alpha: float
    beta: float
    sigma: float
    delta: float
    param: Param = Param.ONE

    def __post_init__(self):
        for name in ("alpha", "beta", "sigma", "delta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        _check_alpha(self.alpha)
        if not -1.0 <= self.beta <= 1.0:
            raise InvalidParameterError(f"beta must be in [-1, 1], got {self.beta}")
        if self.sigma <= 0.0:
            raise InvalidParameterError(f"sigma must be > 0, got {self.sigma}")
        try:
            object.__setattr__(self, "param", Param(self.param))
        except ValueError:
            raise InvalidParameterError(f"unknown parametrization {self.param!r}") from None

    def to_param(self, target):
        """Same law expressed in the `target` parametrization (only delta moves)."""
        target = Param(target)
        if target == self.param:
            return self
        if self.param == Param.ONE:
            return replace(self, delta=delta1_of(self), param=Param.ZERO)
        return replace(self, delta=self.delta - _shift_term(self), param=Param.ONE)

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "sigma": self.sigma,
            "delta": self.delta,
            "param": self.param.value,
        }


def _shift_term(params):
    if is_alpha_one(params.alpha):
        return params.beta * (2.0 / math.pi) * params.sigma * math.log(params.sigma)
    return params.beta * params.sigma * tan_half_pi_alpha(params.alpha)


def delta1_of(params):
    """
    delta + beta*sigma*tan(pi*alpha/2), or delta + beta*(2/pi)*sigma*ln(sigma) at alpha = 1.

    Applied to a One-form law this is the location of the same law in the Zero form,
    which is how StableParams.to_param uses it.
    """
    return params.delta + _shift_term(params)


def charfn_uni(params, t):
    """Characteristic function of a univariate stable law at t (scalar or array)."""
    t_arr = np.asarray(t, dtype=float)
    alpha, beta, sigma, delta = params.alpha, params.beta, params.sigma, params.delta
    abs_t = np.abs(t_arr)
    sign = np.sign(t_arr)
    scaled = sigma * abs_t

    if is_alpha_one(alpha):
        if params.param == Param.ZERO:
            skew = (2.0 / math.pi) * xlogy(scaled, scaled)
        else:
            skew = (2.0 / math.pi) * sigma * xlogy(abs_t, abs_t)
        exponent = -scaled - 1j * beta * sign * skew
    else:
        tan_ = tan_half_pi_alpha(alpha)
        powered = scaled**alpha
        if params.param == Param.ZERO:
            exponent = -powered - 1j * beta * tan_ * sign * (scaled - powered)
        else:
            exponent = -powered + 1j * beta * tan_ * sign * powered

    return _scalar_or_array(t, np.exp(exponent + 1j * delta * t_arr))


def psi(u, alpha, variant=PsiVariant.STANDARD):
    """
    psi_alpha(u) in one of four forms.
    STANDARD and CONTINUOUS are complex; REAL_D1 (two-point d = 1 form) and
    REAL_D3 (|u|^alpha) are real.
    """
    variant = PsiVariant(variant)
    u_arr = np.asarray(u, dtype=float)
    abs_u = np.abs(u_arr)
    sign = np.sign(u_arr)

    if variant == PsiVariant.REAL_D3:
        out = abs_u**alpha
    elif is_alpha_one(alpha):
        log_term = (2.0 / math.pi) * sign * xlogy(abs_u, abs_u)
        if variant == PsiVariant.REAL_D1:
            out = abs_u + log_term
        else:
            out = abs_u + 1j * log_term
    else:
        tan_ = tan_half_pi_alpha(alpha)
        powered = abs_u**alpha
        if variant == PsiVariant.STANDARD:
            out = powered - 1j * sign * tan_ * powered
        elif variant == PsiVariant.CONTINUOUS:
            out = powered + 1j * sign * tan_ * (abs_u - powered)
        else:
            out = powered - sign * tan_ * powered

    return _scalar_or_array(u, out)


@dataclass(frozen=True, eq=False)
class SpectralModel:
    """d-dimensional stable law with a discrete spectral measure sum_l gamma_l * delta_{s_l}."""

    alpha: float
    points: np.ndarray
    weights: np.ndarray
    shift: np.ndarray = None

    def __post_init__(self):
        alpha = float(self.alpha)
        _check_alpha(alpha)
        object.__setattr__(self, "alpha", alpha)

        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[0] < 1:
            raise InvalidParameterError("points must be a non-empty L x d array")
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.shape[0] != points.shape[0]:
            raise DimensionMismatchError(
                f"{points.shape[0]} points but {weights.shape[0]} weights"
            )
        if not np.all(np.isfinite(points)) or not np.all(np.isfinite(weights)):
            raise InvalidParameterError("points and weights must be finite")
        norms = np.linalg.norm(points, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOL):
            raise InvalidParameterError("every spectral point must lie on the unit sphere")
        if np.any(weights < 0.0):
            raise InvalidParameterError("spectral weights must be >= 0")
        gaps = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)
        np.fill_diagonal(gaps, np.inf)
        if np.any(gaps <= UNIT_NORM_TOL):
            raise InvalidParameterError("spectral points must be distinct")

        d = points.shape[1]
        shift = np.zeros(d) if self.shift is None else np.array(self.shift, dtype=float).reshape(-1)
        if shift.shape[0] != d:
            raise DimensionMismatchError(f"shift has length {shift.shape[0]}, expected {d}")
        if not np.all(np.isfinite(shift)):
            raise InvalidParameterError("shift must be finite")

        for name, arr in (("points", points), ("weights", weights), ("shift", shift)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def d(self):
        return self.points.shape[1]

    @property
    def L(self):
        return self.points.shape[0]

    @property
    def total_mass(self):
        return float(self.weights.sum())


def charfn_mv(model, t):
    """
    exp(-sum_l psi(<t, s_l>) gamma_l + i<delta, t>) with the standard psi.
    `t` is one vector of length d or a k x d array of them.
    """
    t_arr = np.asarray(t, dtype=float)
    if t_arr.ndim == 0:
        t_arr = t_arr.reshape(1)
    single = t_arr.ndim == 1
    rows = t_arr.reshape(1, -1) if single else t_arr
    if rows.ndim != 2 or rows.shape[1] != model.d:
        raise DimensionMismatchError(
            f"frequency has dimension {rows.shape[-1]}, model has d = {model.d}"
        )
    projections = rows @ model.points.T
    exponent = -(psi(projections, model.alpha, PsiVariant.STANDARD) @ model.weights)
    values = np.exp(exponent + 1j * (rows @ model.shift))
    return complex(values[0]) if single else values
