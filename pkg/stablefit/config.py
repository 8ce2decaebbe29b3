"""
Stablefit Configuration
Defaults shared by the CLI and the dashboard, plus environment lookups
"""

import os

from .errors import ConfigError

SEED_ENV_VAR = "STABLEFIT_SEED"

DEFAULTS = {
    "seed": 20240101,
    "n": 1500,
    "replicates": 200,
    "formats": ["text", "csv", "json"],
    "param": "zero",
    "min_sample_size": 20,
    "min_returns": 21,
    "max_failure_fraction": 0.10,
    # L used by fit-mv when --L is not given
    "grid_size": {1: 2, 2: 4, 3: 4},
}


def get_default_seed():
    """
    Seed used when --seed is not given.
    Reads STABLEFIT_SEED, falling back to DEFAULTS["seed"].
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULTS["seed"]
    try:
        seed = int(raw.strip())
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None
    if seed < 0 or seed >= 2**64:
        raise ConfigError(f"{SEED_ENV_VAR} must be a 64-bit unsigned integer, got {seed}")
    return seed


def get_default_threads():
    """Worker count for bench when --threads is not given."""
    return os.cpu_count() or 1
