"""
Unit tests for the rate distribution and its sampling experiment.
"""

import math

import numpy as np
import pytest
import scipy.special
from src.concentration import (
    RateDistributionModel,
    cdf,
    cumulants,
    cumulants_from_moments,
    hyp2f1_special,
    ks_against_model,
    moment,
    moment_by_quadrature,
    over_bound_fraction,
    pdf,
    quantile,
    rate_histogram,
    sample_rate_distribution,
    summary_statistics,
)
from src.decoherence import calibrated_a
from src.ensembles import EnsembleSpec, Family
from src.exceptions import DomainError, ParameterError
from src.randomness import SeedSpec
from tests.fixtures.reference_values import CDF_N30_D40, GXE_A_N30, KAPPA2_N30, MEAN_N2_PER_A


class TestRateDistributionModel:
    """Tests for model construction"""

    def test_for_family(self):
        """Test Ã from the printed Hermitian A"""
        model = RateDistributionModel.for_family(Family.GXE, 30)
        assert model.a_tilde == pytest.approx(GXE_A_N30)
        assert model.upper == pytest.approx(29 * GXE_A_N30)

    def test_for_spec_uses_exact_a(self):
        """Test Ã from the calibrated sampler"""
        spec = EnsembleSpec("gse", 6, sigma=2.0)
        model = RateDistributionModel.for_spec(spec, gamma_total=0.5)
        assert model.a_tilde == pytest.approx(0.5 * 4.0 * calibrated_a(spec))
        assert model.family is Family.GXE

    def test_rejects_single_level(self):
        """Test N = 1 is rejected"""
        with pytest.raises(DomainError):
            RateDistributionModel(1, 1.0)

    def test_rejects_non_positive_scale(self):
        """Test Ã ≤ 0 is rejected"""
        with pytest.raises(ParameterError):
            RateDistributionModel(5, 0.0)


class TestCdfPdf:
    """Tests for the closed-form CDF and density"""

    def test_reference_cdf(self):
        """Test F(40) at N = 30, Ã = 1.98817"""
        model = RateDistributionModel(30, 1.98817)
        assert cdf(model, 40.0) == pytest.approx(CDF_N30_D40, rel=1e-12)
        assert cdf(model, 40.0) == pytest.approx(0.070216, abs=1e-6)

    def test_endpoints(self):
        """Test F(0) = 0 and F(Ã(N − 1)) = 1 exactly"""
        model = RateDistributionModel(10, 2.0)
        assert cdf(model, 0.0) == 0.0
        assert cdf(model, model.upper) == 1.0

    def test_pdf_is_derivative(self):
        """Test f = F′ by central differences"""
        model = RateDistributionModel(12, 1.5)
        d, h = 7.0, 1e-5
        slope = (cdf(model, d + h) - cdf(model, d - h)) / (2 * h)
        assert pdf(model, d) == pytest.approx(slope, rel=1e-7)

    def test_pdf_increasing(self):
        """Test the density grows towards the upper endpoint"""
        model = RateDistributionModel(8, 1.0)
        values = model.pdf_values(np.linspace(0.0, model.upper, 20))
        assert np.all(np.diff(values) > 0)

    def test_outside_support(self):
        """Test rates beyond the support raise DomainError"""
        model = RateDistributionModel(8, 1.0)
        with pytest.raises(DomainError) as exc_info:
            cdf(model, 7.5)

        assert exc_info.value.field == "d"
        with pytest.raises(DomainError):
            pdf(model, -0.1)

    def test_vectorized_clipping(self):
        """Test vectorized forms are 0 below and 1 (or 0 density) above"""
        model = RateDistributionModel(8, 1.0)
        assert np.allclose(model.cdf_values([-1.0, 100.0]), [0.0, 1.0])
        assert np.allclose(model.pdf_values([-1.0, 100.0]), [0.0, 0.0])

    def test_quantile_inverts_cdf(self):
        """Test F(F⁻¹(q)) = q"""
        model = RateDistributionModel(20, 1.7)
        for q in (0.0, 0.1, 0.5, 0.9, 1.0):
            assert cdf(model, quantile(model, q)) == pytest.approx(q, abs=1e-14)

    def test_quantile_rejects_outside(self):
        """Test q outside [0, 1] is rejected"""
        with pytest.raises(ParameterError):
            quantile(RateDistributionModel(5, 1.0), 1.5)


class TestHypergeometric:
    """Tests for the ₂F₁(1, k+1; k+2; z) slice"""

    def test_k_zero(self):
        """Test ₂F₁(1, 1; 2; z) = −ln(1 − z)/z"""
        z = 0.9
        assert hyp2f1_special(0, z) == pytest.approx(-math.log(1 - z) / z, rel=1e-14)

    @pytest.mark.parametrize("k", [1, 3, 8])
    def test_branches_agree(self, k):
        """Test the series and closed form agree at the cutoff"""
        below = hyp2f1_special(k, 0.5 - 1e-12)
        above = hyp2f1_special(k, 0.5)
        assert below == pytest.approx(above, rel=1e-10)

    def test_small_z(self):
        """Test the series tends to 1 as z → 0"""
        assert hyp2f1_special(4, 1e-8) == pytest.approx(1.0, rel=1e-7)

    @pytest.mark.parametrize("k", range(9))
    @pytest.mark.parametrize("z", [0.05, 0.3, 0.5, 0.75, 0.9, 0.99])
    def test_matches_scipy(self, k, z):
        """Test agreement with scipy's general ₂F₁ on both branches"""
        expected = scipy.special.hyp2f1(1.0, k + 1.0, k + 2.0, z)
        assert hyp2f1_special(k, z) == pytest.approx(expected, rel=1e-10)

    def test_matches_truncated_series(self):
        """Test the closed form against the defining series summed directly"""
        k, z = 3, 0.9
        # 200 terms leave a tail of order z**200
        expected = sum((k + 1) / (k + 1 + n) * z**n for n in range(200))
        assert hyp2f1_special(k, z) == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("z", [0.0, 1.0])
    def test_rejects_boundary(self, z):
        """Test z must lie in (0, 1)"""
        with pytest.raises(DomainError):
            hyp2f1_special(2, z)

    def test_rejects_negative_order(self):
        """Test k < 0 is rejected"""
        with pytest.raises(ParameterError):
            hyp2f1_special(-1, 0.5)


class TestMoments:
    """Tests for moments and cumulants"""

    @pytest.mark.parametrize("n", [2, 3, 10, 30, 100])
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 8])
    def test_closed_form_matches_quadrature(self, n, k):
        """Test E[dᵏ] against adaptive quadrature"""
        model = RateDistributionModel(n, 1.3)
        assert moment(model, k) == pytest.approx(moment_by_quadrature(model, k), rel=1e-9)

    def test_total_mass(self):
        """Test the density integrates to 1"""
        assert moment_by_quadrature(RateDistributionModel(17, 0.8), 0) == pytest.approx(1.0, rel=1e-12)

    def test_two_level_mean(self):
        """Test N = 2 has mean 2Ã(1 − ln 2)"""
        model = RateDistributionModel(2, 1.0)
        assert moment(model, 1) == pytest.approx(MEAN_N2_PER_A, rel=1e-12)
        assert cumulants(model)[0] == pytest.approx(MEAN_N2_PER_A, rel=1e-12)

    def test_rejects_order(self):
        """Test orders outside 1..8 are rejected"""
        with pytest.raises(ParameterError):
            moment(RateDistributionModel(5, 1.0), 9)

    def test_reference_variance(self):
        """Test κ₂ at N = 30, Ã = 1"""
        assert cumulants(RateDistributionModel(30, 1.0))[1] == pytest.approx(KAPPA2_N30, rel=1e-12)
        assert KAPPA2_N30 == pytest.approx(17.62, abs=0.01)

    @pytest.mark.parametrize("n", [3, 4, 10, 30, 300])
    def test_cumulants_match_moments(self, n):
        """Test closed-form cumulants against the moment recursion"""
        model = RateDistributionModel(n, 2.0)
        closed = cumulants(model)
        recursed = cumulants_from_moments(*(moment(model, k) for k in range(1, 5)))
        for a, b in zip(closed, recursed):
            assert a == pytest.approx(b, rel=1e-6)

    def test_scaling_in_a(self):
        """Test κⱼ scales as Ãʲ"""
        one = cumulants(RateDistributionModel(20, 1.0))
        three = cumulants(RateDistributionModel(20, 3.0))
        for j, (a, b) in enumerate(zip(one, three), start=1):
            assert b == pytest.approx(3.0 ** j * a, rel=1e-12)

    def test_skewness_negative(self):
        """Test the distribution leans towards the upper bound"""
        for n in (3, 10, 100):
            assert summary_statistics(RateDistributionModel(n, 1.0)).skewness < 0

    def test_relative_width_shrinks(self):
        """Test √κ₂/κ₁ decreases with N"""
        widths = []
        for n in (10, 100, 500):
            k1, k2, _, _ = cumulants(RateDistributionModel(n, 1.0))
            widths.append(math.sqrt(k2) / k1)
        assert widths[0] > widths[1] > widths[2]

    def test_summary_dict(self):
        """Test summary statistics serialize"""
        stats = summary_statistics(RateDistributionModel(10, 1.0))
        assert set(stats.to_dict()) == {"mean", "variance", "skewness", "excess_kurtosis"}
        assert stats.variance > 0


class TestSampling:
    """Tests for the per-state sampling experiment"""

    def test_analytic_shortcut_follows_cdf(self):
        """Test the shortcut sample passes a KS test against the exact model"""
        spec = EnsembleSpec("gue", 10)
        model = RateDistributionModel.for_spec(spec)
        sample = sample_rate_distribution(spec, 20000, 1, SeedSpec(12), analytic_shortcut=True, model=model)
        distance, pvalue = ks_against_model(sample, model)
        assert distance < 0.015
        assert pvalue > 1e-3
        assert over_bound_fraction(sample, model) == 0.0

    @pytest.mark.slow
    def test_analytic_shortcut_large_sample(self):
        """Test the shortcut over 10⁵ states stays within KS distance 0.01"""
        spec = EnsembleSpec("goe", 16)
        model = RateDistributionModel.for_spec(spec)
        sample = sample_rate_distribution(spec, 100000, 1, SeedSpec(13), analytic_shortcut=True, model=model)
        distance, _ = ks_against_model(sample, model)
        assert sample.shape == (100000,)
        assert distance < 0.01

    def test_sorted_and_reproducible(self):
        """Test samples are sorted and repeatable"""
        spec = EnsembleSpec("ginoe", 4)
        a = sample_rate_distribution(spec, 100, 4, SeedSpec(2))
        b = sample_rate_distribution(spec, 100, 4, SeedSpec(2))
        assert np.array_equal(a, b)
        assert np.all(np.diff(a) >= 0)

    def test_rejects_too_few_states(self):
        """Test fewer than 100 states are rejected"""
        with pytest.raises(ParameterError) as exc_info:
            sample_rate_distribution(EnsembleSpec("gue", 4), 50, 10, SeedSpec(1))

        assert exc_info.value.field == "n_states"

    def test_histogram(self):
        """Test histogram density integrates to 1 and carries the analytic curve"""
        model = RateDistributionModel(6, 1.0)
        sample = np.sort(np.array([quantile(model, q) for q in np.linspace(0.001, 0.999, 500)]))
        hist = rate_histogram(sample, model, bins=20)
        widths = np.diff(hist.edges)
        assert np.sum(hist.density * widths) == pytest.approx(1.0)
        assert hist.analytic_pdf.shape == (20,)
        assert hist.centers.shape == (20,)
        assert hist.over_bound_fraction == 0.0

    def test_over_bound_fraction(self):
        """Test rates above Ã(N − 1) are counted"""
        model = RateDistributionModel(3, 1.0)
        assert over_bound_fraction(np.array([0.5, 1.0, 2.5, 3.0]), model) == 0.5

    @pytest.mark.slow
    def test_monte_carlo_states_follow_exact_model(self):
        """Test Monte Carlo per-state means against the exact-A distribution"""
        spec = EnsembleSpec("gue", 6)
        model = RateDistributionModel.for_spec(spec)
        sample = sample_rate_distribution(spec, 4000, 10000, SeedSpec(30), n_workers=2)
        distance, _ = ks_against_model(sample, model)
        assert distance < 0.03
        assert over_bound_fraction(sample, model) < 0.05
