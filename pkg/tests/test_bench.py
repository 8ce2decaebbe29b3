import io
import math
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

from stablefit import bench
from stablefit.bench import Estimator, McConfig
from stablefit.errors import InvalidParameterError, SingularSystemError
from stablefit.estimate_multi import spectral_model_on_grid
from stablefit.stable_core import Param, StableParams, delta1_of

LAW = StableParams(1.5, 0.0, 1.0, 0.0, Param.ZERO)


@pytest.fixture
def small_config():
    return McConfig(LAW, n=200, replicates=8, seed=123, estimator=Estimator.HYBRID)


class TestMcConfig:
    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            McConfig(LAW, n=200, replicates=0, seed=1)
        with pytest.raises(InvalidParameterError):
            McConfig(LAW, n=10, replicates=5, seed=1)
        with pytest.raises(InvalidParameterError):
            McConfig(LAW, n=200, replicates=5, seed=1, estimator="spectral-ecf")
        with pytest.raises(InvalidParameterError):
            McConfig(spectral_model_on_grid(1.5, 2, 4, [0.25] * 4), n=200, replicates=5, seed=1)

    def test_estimator_from_string(self):
        assert McConfig(LAW, 200, 1, 1, "kw").estimator is Estimator.KW

    def test_model_label(self):
        assert McConfig(LAW, 200, 1, 1).model_label() == "alpha=1.5 beta=0 sigma=1 delta=0 param=zero"


class TestTrueValues:
    def test_kw_scored_in_zero_form(self):
        law = StableParams(1.5, 0.5, 1.0, 0.0, Param.ONE)
        truth = dict(bench.true_values(McConfig(law, 200, 1, 1, Estimator.KW)))
        assert truth["delta"] == pytest.approx(delta1_of(law))

    def test_hybrid_scored_in_zero_form(self):
        law = StableParams(1.5, 0.5, 1.0, 0.0, Param.ONE)
        truth = dict(bench.true_values(McConfig(law, 200, 1, 1, Estimator.HYBRID)))
        assert truth["delta"] == pytest.approx(-0.5)

    def test_spectral_names(self):
        model = spectral_model_on_grid(1.5, 2, 4, [0.1, 0.2, 0.3, 0.4], shift=[1.0, 2.0])
        names = [name for name, _ in bench.true_values(McConfig(model, 200, 1, 1, "spectral-ecf"))]
        assert names == ["alpha", "gamma_1", "gamma_2", "gamma_3", "gamma_4", "delta_1", "delta_2"]


class TestRunMc:
    def test_mse_decomposition(self, small_config):
        result = bench.run_mc(small_config)
        k = result.successes
        for p in result.params:
            assert p.mse == pytest.approx(p.sd**2 * (k - 1) / k + (p.mean - p.true) ** 2, abs=1e-12)
            assert p.rmse == pytest.approx(math.sqrt(p.mse))

    def test_independent_of_threads(self, small_config):
        single = bench.run_mc(small_config, threads=1)
        pooled = bench.run_mc(small_config, threads=4)
        assert single.params == pooled.params
        assert single.successes == pooled.successes == 8

    def test_single_replicate(self):
        result = bench.run_mc(McConfig(LAW, 200, 1, 9))
        assert all(p.sd == 0.0 for p in result.params)
        assert result.valid

    def test_reproducible_under_seed(self, small_config):
        assert bench.run_mc(small_config).params == bench.run_mc(small_config).params

    def test_failures_counted(self, small_config, monkeypatch):
        real = bench._estimates

        def flaky(config, index):
            if index % 2 == 0:
                raise SingularSystemError("forced", condition=math.inf)
            return real(config, index)

        monkeypatch.setattr(bench, "_estimates", flaky)
        result = bench.run_mc(small_config)
        assert (result.successes, result.failures) == (4, 4)
        assert not result.valid

    def test_all_failed_emits_null(self, small_config, monkeypatch):
        def broken(config, index):
            raise np.linalg.LinAlgError("forced")

        monkeypatch.setattr(bench, "_estimates", broken)
        result = bench.run_mc(small_config)
        assert result.successes == 0 and not result.valid
        rows = bench.metrics_rows([result])
        assert all(row["mean"] is None and row["mse"] is None for row in rows)
        assert b"NaN" not in bench.emit_table([result], "json")

    def test_spectral_run(self):
        model = spectral_model_on_grid(1.5, 1, 2, [0.5, 0.5])
        result = bench.run_mc(McConfig(model, 500, 3, 7, "spectral-ecf"))
        assert [p.parameter for p in result.params] == ["alpha", "gamma_1", "gamma_2", "delta_1"]
        assert result.successes + result.failures == 3


class TestSweep:
    def test_alpha_sweep(self, small_config):
        results = bench.run_sweep(small_config, "alpha", [1.2, 1.8])
        assert [r.config.true_model.alpha for r in results] == [1.2, 1.8]
        assert [r.params[0].true for r in results] == [1.2, 1.8]

    def test_n_sweep(self, small_config):
        results = bench.run_sweep(replace(small_config, replicates=2), "n", [100, 300])
        assert [r.config.n for r in results] == [100, 300]

    def test_rejects_unknown_parameter(self, small_config):
        with pytest.raises(InvalidParameterError):
            bench.run_sweep(small_config, "gamma", [1.0])

    def test_spectral_only_alpha_or_n(self):
        model = spectral_model_on_grid(1.5, 1, 2, [0.5, 0.5])
        with pytest.raises(InvalidParameterError):
            bench.run_sweep(McConfig(model, 200, 1, 1, "spectral-ecf"), "beta", [0.5])


class TestEmit:
    @pytest.fixture
    def result(self, small_config):
        return bench.run_mc(small_config)

    def test_json_round_trip_is_byte_identical(self, result):
        first = bench.emit_table([result], "json")
        assert bench.emit_rows(bench.parse_table_json(first), "json") == first

    def test_json_layout(self, result):
        rows = bench.parse_table_json(bench.emit_table([result], "json"))
        assert [row["parameter"] for row in rows] == ["alpha", "beta", "sigma", "delta"]
        assert rows[0]["replicates"] == 8 and rows[0]["seed"] == 123

    def test_csv_matches_rows(self, result):
        frame = pd.read_csv(io.BytesIO(bench.emit_table([result], "csv")))
        assert list(frame.columns) == bench.COLUMNS
        expected = [p.mse for p in result.params]
        np.testing.assert_allclose(frame["mse"].to_numpy(), expected, rtol=1e-12)

    def test_text_has_header(self, result):
        text = bench.emit_table([result], "text").decode("utf-8")
        assert text.splitlines()[0].split()[:3] == ["parameter", "true", "mean"]

    def test_unknown_format(self, result):
        with pytest.raises(InvalidParameterError):
            bench.emit_table([result], "yaml")
        with pytest.raises(InvalidParameterError):
            bench.emit_table([], "json")

    def test_excel_workbook(self, result):
        pytest.importorskip("xlsxwriter")
        data = bench.emit_excel(bench.metrics_rows([result]))
        assert data[:2] == b"PK"
        sheet = pd.read_excel(io.BytesIO(data), sheet_name="Monte Carlo")
        assert list(sheet.columns) == bench.COLUMNS
        assert len(sheet) == 4
