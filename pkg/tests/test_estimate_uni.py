import math

import numpy as np
import pytest

from stablefit.errors import (
    DegenerateSampleError,
    DegenerateWeightsError,
    InsufficientDataError,
    InsufficientPointsError,
)
from stablefit.estimate_uni import (
    KW_T_GRID,
    StageEstimates,
    UniEstimator,
    combine_stages,
    ecf,
    fit_regression,
    fit_uni,
    gaussian_fit,
    hybrid_fit,
    kw_from_cf,
    kw_initial,
    press_delta,
    press_delta_from_phase,
    regress_alpha_sigma,
    regression_grid,
    select_k,
)
from stablefit.simulate import sample_uni
from stablefit.stable_core import Param, StableParams, charfn_uni


class TestEcf:
    def test_two_point_sample(self):
        assert ecf([1.0, -1.0], math.pi) == pytest.approx(-1.0 + 0.0j)

    def test_origin(self):
        assert ecf([0.3, 2.0, -5.0], 0.0) == pytest.approx(1.0 + 0.0j)

    def test_zeros_sample(self):
        np.testing.assert_allclose(ecf(np.zeros(10), [0.5, 3.0, 100.0]), 1.0)

    def test_hermitian_and_bounded(self):
        x = np.random.default_rng(0).standard_cauchy(500)
        t = np.linspace(0.1, 5.0, 20)
        np.testing.assert_allclose(ecf(x, -t), np.conj(ecf(x, t)), atol=1e-14)
        assert np.all(np.abs(ecf(x, t)) <= 1.0 + 1e-15)


class TestKogonWilliams:
    def test_exact_cf_recovers_alpha_sigma(self):
        law = StableParams(1.3, 0.0, 1.0, 0.0, Param.ZERO)
        est = kw_from_cf(charfn_uni(law, KW_T_GRID), KW_T_GRID)
        assert est.alpha == pytest.approx(1.3, abs=1e-8)
        assert est.sigma == pytest.approx(1.0, abs=1e-8)

    def test_exact_cf_recovers_all_four(self):
        law = StableParams(1.3, 0.3, 1.5, 0.5, Param.ZERO)
        est = kw_from_cf(charfn_uni(law, KW_T_GRID), KW_T_GRID)
        assert est.param is Param.ZERO
        np.testing.assert_allclose(
            [est.alpha, est.beta, est.sigma, est.delta], [1.3, 0.3, 1.5, 0.5], atol=1e-8
        )

    def test_sample_alpha_band(self):
        x = sample_uni(StableParams(1.5, 0.0, 1.0, 0.0), 10_000, 8)
        assert 1.4 < kw_initial(x).alpha < 1.6
        assert 1.4 < kw_initial(2.0 * x + 1.0).alpha < 1.6

    def test_affine_equivariance(self):
        x = sample_uni(StableParams(1.5, 0.2, 1.0, 0.0), 2000, 4)
        base = kw_initial(x)
        moved = kw_initial(2.0 * x + 1.0)
        assert moved.alpha == pytest.approx(base.alpha, rel=1e-8)
        assert moved.sigma == pytest.approx(2.0 * base.sigma, rel=1e-8)
        assert moved.delta == pytest.approx(2.0 * base.delta + 1.0, rel=1e-8, abs=1e-8)

    def test_degenerate_and_short(self):
        with pytest.raises(DegenerateSampleError):
            kw_initial(np.full(50, 3.0))
        with pytest.raises(InsufficientDataError):
            kw_initial(np.arange(10.0))


class TestSelectK:
    def test_n_1600_curve(self):
        # 122.9*1.9^4 - 648.2*1.9^3 + 1245*1.9^2 - 1040*1.9 + 335.2 = 9.32
        assert select_k(1.9, 1600) == 9

    def test_n_200_curve(self):
        assert select_k(1.2, 200) == round(24.36 * 1.2**-1.47)
        assert select_k(1.2, 200) == 19

    def test_interpolation_nodes(self):
        assert select_k(1.0, 800) == 21
        assert select_k(1.0, 1600) == 15
        assert select_k(1.0, 500) == 22

    def test_clamped(self):
        assert select_k(0.3, 200) == 134
        assert select_k(0.1, 50) == 134

    def test_always_in_range(self):
        for alpha in np.linspace(0.1, 2.0, 39):
            for n in (1, 100, 500, 1000, 1600, 5000, 1_000_000):
                assert 9 <= select_k(alpha, n) <= 134


class TestRegression:
    @pytest.mark.parametrize("alpha,sigma", [(1.5, 1.0), (0.8, 2.0)])
    def test_exact_cf_oracle(self, alpha, sigma):
        t = regression_grid(20)
        abs_sq = np.abs(charfn_uni(StableParams(alpha, 0.0, sigma, 0.0), t)) ** 2
        alpha1, sigma1, points = fit_regression(abs_sq, t)
        assert alpha1 == pytest.approx(alpha, abs=1e-10)
        assert sigma1 == pytest.approx(sigma, abs=1e-10)
        assert points.k == 20

    def test_drops_unusable_points(self):
        t = regression_grid(12)
        abs_sq = np.exp(-2.0 * (1.3 * t) ** 1.4)
        reference = fit_regression(abs_sq, t)[:2]
        padded_sq = np.concatenate([abs_sq, [0.0, 1.0, np.nan]])
        padded_t = np.concatenate([t, [5.0, 6.0, 7.0]])
        alpha1, sigma1, points = fit_regression(padded_sq, padded_t)
        assert (alpha1, sigma1) == pytest.approx(reference, abs=1e-14)
        assert points.k == 12

    def test_too_few_points(self):
        with pytest.raises(InsufficientPointsError):
            fit_regression([0.5, 0.0], [1.0, 2.0])
        with pytest.raises(InsufficientPointsError):
            regress_alpha_sigma(np.zeros(30), 1)

    def test_slope_clamped(self):
        t = np.array([0.1, 0.2, 0.4])
        abs_sq = np.exp(-2.0 * t**3)
        assert fit_regression(abs_sq, t)[0] == 2.0

    def test_small_slope_kept_below_kw_floor(self):
        t = regression_grid(10)
        abs_sq = np.exp(-2.0 * t**0.05)
        alpha1, sigma1, _ = fit_regression(abs_sq, t)
        assert alpha1 == pytest.approx(0.05, abs=1e-10)
        assert sigma1 == pytest.approx(1.0, abs=1e-8)
        assert fit_regression(abs_sq, t, alpha_floor=0.1)[0] == 0.1


class TestPressDelta:
    def test_cauchy_oracle(self):
        assert press_delta_from_phase(0.7 * 2.0, 0.7 * 5.0, 1.0, 2.0, 5.0) == pytest.approx(0.7)

    @pytest.mark.parametrize("alpha", [0.5, 0.8, 1.3, 1.7])
    def test_one_form_phase_oracle(self, alpha):
        law = StableParams(alpha, 0.5, 1.0, 0.4)
        t1, t2 = 0.3, 0.8
        u1 = np.angle(charfn_uni(law, t1))
        u2 = np.angle(charfn_uni(law, t2))
        assert press_delta_from_phase(u1, u2, alpha, t1, t2) == pytest.approx(0.4, abs=1e-10)

    def test_zeros_sample(self):
        assert press_delta(np.zeros(40), 1.5) == 0.0

    def test_equal_weights(self):
        with pytest.raises(DegenerateWeightsError):
            press_delta_from_phase(0.1, 0.1, 1.5, 2.0, 2.0)


class TestStepsOracle:
    @pytest.mark.parametrize("alpha", [0.5, 0.8, 1.3, 1.7])
    def test_steps_two_and_three(self, alpha):
        law = StableParams(alpha, 0.0, 1.0, 0.25)
        t = regression_grid(select_k(alpha, 1500))
        alpha1, sigma1, _ = fit_regression(np.abs(charfn_uni(law, t)) ** 2, t)
        t1, t2 = 0.4, 1.1
        delta1 = press_delta_from_phase(
            np.angle(charfn_uni(law, t1)), np.angle(charfn_uni(law, t2)), alpha1, t1, t2
        )
        np.testing.assert_allclose([alpha1, sigma1, delta1], [alpha, 1.0, 0.25], atol=1e-8)


class TestCombine:
    def test_step_four_algebra(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            initial = StableParams(1.5, rng.uniform(-1, 1), rng.uniform(0.1, 3), rng.normal(), Param.ZERO)
            stage = StageEstimates(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.normal())
            final = combine_stages(initial, stage)
            assert final.alpha == stage.alpha1
            assert final.beta == initial.beta
            assert final.sigma == pytest.approx(initial.sigma * stage.sigma1, abs=1e-12)
            assert final.delta == pytest.approx(initial.sigma * stage.delta1 + initial.delta, abs=1e-12)
            assert final.param is Param.ZERO


class TestHybrid:
    def test_report_consistency(self):
        x = sample_uni(StableParams(1.6, 0.0, 1.0, 0.0), 1500, 12)
        report = hybrid_fit(x)
        assert 1.45 < report.final.alpha < 1.75
        assert 0.85 < report.final.sigma < 1.15
        assert abs(report.final.delta) < 0.2
        assert report.k_used == select_k(report.initial.alpha, 1500)
        assert report.t_grid.size == report.k_used
        assert report.final.sigma == pytest.approx(report.initial.sigma * report.stage.sigma1, abs=1e-12)
        assert report.n == 1500

    def test_final_is_zero_form_and_converts(self):
        x = sample_uni(StableParams(1.6, 0.0, 1.0, 0.0), 500, 1)
        report = hybrid_fit(x)
        assert report.params(Param.ZERO).param is Param.ZERO
        assert report.params(Param.ZERO) is report.final
        assert report.params(Param.ONE).param is Param.ONE

    def test_skewed_location_forms(self):
        # One-form location 0 sits at -beta*sigma*tan(pi*alpha/2) = -0.5 in the Zero form
        x = sample_uni(StableParams(1.5, 0.5, 1.0, 0.0, Param.ONE), 20000, 1)
        report = hybrid_fit(x)
        assert report.final.delta == pytest.approx(-0.5, abs=0.08)
        assert report.params(Param.ONE).delta == pytest.approx(0.0, abs=0.12)

    def test_constant_sample(self):
        with pytest.raises(DegenerateSampleError):
            hybrid_fit(np.ones(100))

    def test_deterministic(self):
        x = sample_uni(StableParams(1.2, 0.0, 1.0, 0.0), 800, 3)
        assert hybrid_fit(x).final == hybrid_fit(x).final


class TestOtherEstimators:
    def test_gaussian_fit(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        est = gaussian_fit(x)
        assert est.alpha == 2.0
        assert est.delta == pytest.approx(2.5)
        assert est.sigma == pytest.approx(np.std(x, ddof=1) / math.sqrt(2.0))

    def test_fit_uni_dispatch(self):
        x = sample_uni(StableParams(1.7, 0.0, 1.0, 0.0), 400, 2)
        assert fit_uni(x, "kw").param is Param.ZERO
        assert fit_uni(x, UniEstimator.HYBRID).param is Param.ZERO
        assert fit_uni(x, "gaussian").alpha == 2.0


@pytest.mark.slow
class TestReplicateStudies:
    """200 replicates of n = 1500 against reference replicate MSEs."""

    @staticmethod
    def _fits(law, reps=200, n=1500, seed=20240101):
        rows = []
        for k in range(reps):
            x = sample_uni(law, n, np.random.SeedSequence(seed, spawn_key=(k,)))
            final = hybrid_fit(x).final
            rows.append([final.alpha, final.sigma, final.delta])
        return np.array(rows)

    @pytest.mark.parametrize("alpha,mse", [(0.8, 0.000957), (1.2, 0.001455), (1.6, 0.001848)])
    def test_alpha_study(self, alpha, mse):
        fits = self._fits(StableParams(alpha, 0.0, 1.0, 0.0))
        assert fits[:, 0].mean() == pytest.approx(alpha, abs=0.02)
        assert np.mean((fits[:, 0] - alpha) ** 2) < 2.0 * mse

    @pytest.mark.parametrize("sigma,mse", [(0.5, 0.000264), (1.0, 0.000977), (2.0, 0.003976)])
    def test_sigma_study(self, sigma, mse):
        fits = self._fits(StableParams(1.3, 0.0, sigma, 0.0))
        assert fits[:, 1].mean() == pytest.approx(sigma, abs=0.02 * sigma)
        assert np.mean((fits[:, 1] - sigma) ** 2) < 2.0 * mse

    @pytest.mark.parametrize("delta", [-1.0, 0.0, 1.0, 2.0])
    def test_delta_study(self, delta):
        fits = self._fits(StableParams(1.4, 0.0, 1.0, delta))
        assert fits[:, 2].mean() == pytest.approx(delta, abs=0.02)
        assert np.mean((fits[:, 2] - delta) ** 2) < 2.0 * 0.0028
