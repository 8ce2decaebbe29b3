import numpy as np
import pytest
from scipy import stats

from stablefit.errors import DegenerateSampleError
from stablefit.gof import (
    cdf_plot_data,
    compare_estimators,
    describe,
    goodness_of_fit,
    model_cdf,
    reports_frame,
)
from stablefit.simulate import sample_uni
from stablefit.stable_core import Param, StableParams


class TestModelCdf:
    def test_gaussian_shortcut(self):
        cdf = model_cdf(StableParams(2.0, 0.0, 1.0, 0.5, Param.ZERO))
        assert cdf(0.5) == pytest.approx(0.5)
        assert cdf(0.5 + np.sqrt(2.0)) == pytest.approx(stats.norm.cdf(1.0))


class TestGoodnessOfFit:
    def test_gaussian_calibration(self):
        rng = np.random.default_rng(77)
        passed = sum(
            goodness_of_fit(rng.normal(0.0, 1.0, 500), "gaussian").p_value > 0.05 for _ in range(20)
        )
        assert passed >= 17

    def test_stable_sample_fits(self):
        x = sample_uni(StableParams(1.6, 0.0, 0.01, 0.0), 800, 13)
        report = goodness_of_fit(x, "hybrid")
        assert report.n == 800
        assert report.params.param is Param.ZERO
        assert 0.0 <= report.ks_d <= 1.0
        assert report.p_value > 0.01

    def test_constant_series(self):
        with pytest.raises(DegenerateSampleError):
            goodness_of_fit(np.ones(50))

    def test_compare_order_and_frame(self):
        x = sample_uni(StableParams(1.7, 0.0, 1.0, 0.0), 300, 4)
        reports = compare_estimators(x)
        assert [r.estimator for r in reports] == ["hybrid", "kw", "gaussian"]
        frame = reports_frame(reports)
        assert list(frame["estimator"]) == ["hybrid", "kw", "gaussian"]
        assert {"alpha", "beta", "sigma", "delta", "ks_d", "p_value"} <= set(frame.columns)

    def test_as_dict(self):
        report = goodness_of_fit(np.random.default_rng(1).normal(size=100), "gaussian")
        record = report.as_dict()
        assert record["params"]["alpha"] == 2.0
        assert record["n"] == 100


class TestDescriptives:
    def test_describe(self):
        summary = describe([1.0, 2.0, 3.0, 4.0, 10.0])
        assert summary["mean"] == pytest.approx(4.0)
        assert summary["median"] == pytest.approx(3.0)
        assert summary["sd"] == pytest.approx(np.std([1.0, 2.0, 3.0, 4.0, 10.0], ddof=1))
        assert summary["skew"] > 0.0

    def test_cdf_plot_data(self):
        x = np.array([0.3, -1.0, 2.0, 0.0])
        frame = cdf_plot_data(x, StableParams(2.0, 0.0, 1.0, 0.0, Param.ZERO))
        assert list(frame["x"]) == [-1.0, 0.0, 0.3, 2.0]
        assert list(frame["ecdf"]) == [0.25, 0.5, 0.75, 1.0]
        assert frame["model_cdf"].is_monotonic_increasing
