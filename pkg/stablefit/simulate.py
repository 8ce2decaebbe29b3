"""
Stable Samplers
Seeded Chambers-Mallows-Stuck variates and Modarres-Nolan random vectors
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, UnsupportedAlphaError
from .stable_core import Param, is_alpha_one, tan_half_pi_alpha

logger = logging.getLogger(__name__)


def make_rng(seed, *stream):
    """
    Generator for `seed`, optionally on a sub-stream.

    Splitting rule: stream (i, j, ...) uses SeedSequence(seed, spawn_key=(i, j, ...)),
    the same child numpy's SeedSequence.spawn would hand out. Replicate k of a
    Monte-Carlo run therefore draws from SeedSequence(seed, spawn_key=(k,)) no
    matter which worker runs it.
    """
    if isinstance(seed, np.random.SeedSequence):
        sequence = seed
        if stream:
            sequence = np.random.SeedSequence(
                seed.entropy, spawn_key=tuple(seed.spawn_key) + tuple(stream)
            )
    else:
        seed = int(seed)
        if seed < 0 or seed >= 2**64:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        sequence = np.random.SeedSequence(seed, spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(sequence))


@dataclass(frozen=True, eq=False)
class MultiSample:
    """n x d matrix of observations, one row per draw."""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=float)
        if data.ndim == 1:
            data = data.reshape(-1, 1)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise InvalidParameterError("a MultiSample needs n >= 1 rows and d >= 1 columns")
        if not np.all(np.isfinite(data)):
            raise InvalidParameterError("a MultiSample must contain finite values only")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def n(self):
        return self.data.shape[0]

    @property
    def d(self):
        return self.data.shape[1]

    def column(self, j):
        return self.data[:, j]


def _standard_cms(alpha, beta, n, rng):
    """S(alpha, beta, 1, 0) variates in the One form (Weron's version of CMS)."""
    v = rng.uniform(-math.pi / 2.0, math.pi / 2.0, size=n)
    w = rng.standard_exponential(size=n)

    if is_alpha_one(alpha):
        half_pi_bv = math.pi / 2.0 + beta * v
        return (2.0 / math.pi) * (
            half_pi_bv * np.tan(v)
            - beta * np.log((math.pi / 2.0) * w * np.cos(v) / half_pi_bv)
        )

    zeta = beta * tan_half_pi_alpha(alpha)
    b = math.atan(zeta) / alpha
    s = (1.0 + zeta**2) ** (1.0 / (2.0 * alpha))
    shifted = alpha * (v + b)
    return (
        s
        * np.sin(shifted)
        / np.cos(v) ** (1.0 / alpha)
        * (np.cos(v - shifted) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_uni(params, n, seed):
    """n iid draws from `params` (either parametrization), reproducible under `seed`."""
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    rng = make_rng(seed)
    one = params.to_param(Param.ONE)
    x = _standard_cms(one.alpha, one.beta, n, rng)
    if is_alpha_one(one.alpha):
        location = one.delta + (2.0 / math.pi) * one.beta * one.sigma * math.log(one.sigma)
    else:
        location = one.delta
    return one.sigma * x + location


def sample_mv(model, n, seed):
    """
    n draws of delta + sum_l gamma_l^(1/alpha) Z_l s_l, Z_l iid S(alpha, 1, 1, 0) in the One form.
    Only strictly stable laws (alpha != 1) are supported.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if is_alpha_one(model.alpha):
        raise UnsupportedAlphaError("multivariate sampling needs alpha != 1")
    rng = make_rng(seed)
    z = _standard_cms(model.alpha, 1.0, n * model.L, rng).reshape(n, model.L)
    scales = model.weights ** (1.0 / model.alpha)
    data = (z * scales) @ model.points + model.shift
    logger.debug("sample_mv: n=%d d=%d L=%d alpha=%.4f", n, model.d, model.L, model.alpha)
    return MultiSample(data)
