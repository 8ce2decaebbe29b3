"""
Stablefit
Stable-law simulation and estimation: the hybrid univariate estimator, ECF spectral
measures for d = 1, 2, 3, goodness of fit and a Monte-Carlo bench
"""

# Core laws
from .stable_core import (
    Param,
    PsiVariant,
    SpectralModel,
    StableParams,
    charfn_mv,
    charfn_uni,
    delta1_of,
    psi,
)

# Sampling
from .simulate import MultiSample, make_rng, sample_mv, sample_uni

# Univariate estimation
from .estimate_uni import (
    UniEstimator,
    UniFitReport,
    ecf,
    fit_uni,
    gaussian_fit,
    hybrid_fit,
    kw_initial,
    press_delta,
    regress_alpha_sigma,
    select_k,
)

# Spectral estimation
from .estimate_multi import (
    GridSpec,
    SpectralFit,
    SpectralMethod,
    empirical_I,
    estimate_gamma,
    fit_spectral,
    make_grid,
    marginal_joint_fit,
    psi_matrix,
    spectral_model_on_grid,
)

# Numerics
from .numerics import LinearSystem, ks_pvalue, ks_statistic, nnls, ols, stable_cdf

# Bench, goodness of fit and data
from .bench import Estimator, McConfig, McMetrics, emit_table, run_mc, run_sweep
from .gof import GofReport, compare_estimators, goodness_of_fit
from .returns_data import ReturnsSeries, load_csv, load_returns_series, returns_series, to_log_returns

from .errors import StableFitError

__all__ = [
    # Core laws
    "Param",
    "PsiVariant",
    "SpectralModel",
    "StableParams",
    "charfn_mv",
    "charfn_uni",
    "delta1_of",
    "psi",
    # Sampling
    "MultiSample",
    "make_rng",
    "sample_mv",
    "sample_uni",
    # Univariate estimation
    "UniEstimator",
    "UniFitReport",
    "ecf",
    "fit_uni",
    "gaussian_fit",
    "hybrid_fit",
    "kw_initial",
    "press_delta",
    "regress_alpha_sigma",
    "select_k",
    # Spectral estimation
    "GridSpec",
    "SpectralFit",
    "SpectralMethod",
    "empirical_I",
    "estimate_gamma",
    "fit_spectral",
    "make_grid",
    "marginal_joint_fit",
    "psi_matrix",
    "spectral_model_on_grid",
    # Numerics
    "LinearSystem",
    "ks_pvalue",
    "ks_statistic",
    "nnls",
    "ols",
    "stable_cdf",
    # Bench, goodness of fit and data
    "Estimator",
    "McConfig",
    "McMetrics",
    "emit_table",
    "run_mc",
    "run_sweep",
    "GofReport",
    "compare_estimators",
    "goodness_of_fit",
    "ReturnsSeries",
    "load_csv",
    "load_returns_series",
    "returns_series",
    "to_log_returns",
    "StableFitError",
]
