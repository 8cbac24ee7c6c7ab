"""
Unit tests for ensemble samplers, Haar measures, moments and diagnostics.
"""

import math

import numpy as np
import pytest
from src.ensembles import (
    EnsembleKind,
    EnsembleSpec,
    Family,
    MixedEnsembleSpec,
    ginibre_trace_moments,
    haar_fourth_moment,
    haar_second_moment,
    radial_cdf,
    sample,
    sample_batch,
    sample_haar_pure_state,
    sample_haar_unitary,
    sample_mixed,
    schur_trace_split,
    second_moments,
    semicircle_cdf,
    spectral_density_check,
)
from src.exceptions import DimensionError, ParameterError

ALL_KINDS = [k.value for k in EnsembleKind]


def _mixed(n=4, a1=math.sqrt(0.5), a2=math.sqrt(0.5)):
    return MixedEnsembleSpec(EnsembleSpec("goe", n), EnsembleSpec("ginue", n), a1, a2)


class TestEnsembleKinds:
    """Tests for ensemble descriptors"""

    def test_parse_case_insensitive(self):
        """Test kind names parse case-insensitively"""
        assert EnsembleKind.parse(" GinUE ") is EnsembleKind.GINUE

    def test_parse_unknown(self):
        """Test unknown kind names are rejected with the field name"""
        with pytest.raises(ParameterError) as exc_info:
            EnsembleKind.parse("gxe")

        assert exc_info.value.field == "kind"

    def test_families(self):
        """Test Hermitian and Ginibre kinds map to their families"""
        assert EnsembleKind.GSE.family is Family.GXE
        assert EnsembleKind.GINOE.family is Family.GINXE

    def test_family_aliases(self):
        """Test ginue is accepted as the Ginibre family name"""
        assert Family.parse("ginue") is Family.GINXE
        assert Family.parse("GXE") is Family.GXE

    def test_spec_rejects_odd_symplectic(self):
        """Test GSE with odd N is rejected"""
        with pytest.raises(ParameterError):
            EnsembleSpec("gse", 5)

    def test_spec_rejects_non_positive_sigma(self):
        """Test σ ≤ 0 is rejected"""
        with pytest.raises(ParameterError):
            EnsembleSpec("gue", 4, 0.0)

    def test_mixed_weights(self):
        """Test mixing weights must lie on the unit circle"""
        with pytest.raises(ParameterError):
            _mixed(a1=0.9, a2=0.9)

    def test_mixed_dimension_mismatch(self):
        """Test mixed components must share N"""
        with pytest.raises(ParameterError):
            MixedEnsembleSpec(EnsembleSpec("goe", 4), EnsembleSpec("gue", 6), 1.0, 0.0)

    def test_mixed_label_and_dim(self):
        """Test mixed spec exposes its components' shape"""
        spec = _mixed(6)
        assert spec.dim == 6 and spec.label == "GOE+GinUE"
        assert spec.with_dim(8).dim == 8


class TestSamplers:
    """Tests for structural properties of the samplers"""

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_shape(self, kind, rng):
        """Test batches have shape (count, N, N)"""
        batch = sample_batch(EnsembleSpec(kind, 6), rng, 3)
        assert batch.shape == (3, 6, 6)
        assert batch.dtype == np.complex128

    def test_goe_real_symmetric(self, rng):
        """Test GOE draws are real symmetric"""
        m = sample(EnsembleSpec("goe", 5), rng)
        assert np.allclose(m.imag, 0.0) and np.allclose(m, m.T)

    def test_gue_hermitian(self, rng):
        """Test GUE draws are Hermitian with complex off-diagonal entries"""
        m = sample(EnsembleSpec("gue", 5), rng)
        assert np.allclose(m, m.conj().T)
        assert np.abs(m[np.triu_indices(5, 1)].imag).max() > 0

    def test_gse_kramers_degenerate(self, rng):
        """Test GSE eigenvalues come in degenerate pairs"""
        m = sample(EnsembleSpec("gse", 6), rng)
        assert np.allclose(m, m.conj().T)
        values = np.linalg.eigvalsh(m)
        assert np.allclose(values[0::2], values[1::2], atol=1e-10)

    def test_ginoe_real(self, rng):
        """Test GinOE draws are real and not symmetric"""
        m = sample(EnsembleSpec("ginoe", 5), rng)
        assert np.allclose(m.imag, 0.0) and not np.allclose(m, m.T)

    def test_ginse_conjugate_pairs(self, rng):
        """Test GinSE eigenvalues are closed under complex conjugation"""
        m = sample(EnsembleSpec("ginse", 6), rng)
        values = np.linalg.eigvals(m)
        for v in values:
            assert np.min(np.abs(values - np.conj(v))) < 1e-8

    def test_reproducible(self):
        """Test identical generators give identical draws"""
        spec = EnsembleSpec("ginue", 4)
        a = sample(spec, np.random.default_rng(5))
        b = sample(spec, np.random.default_rng(5))
        assert np.array_equal(a, b)

    def test_mixed_combination(self, rng):
        """Test a1 = 1, a2 = 0 reduces to the first component"""
        spec = MixedEnsembleSpec(EnsembleSpec("goe", 4), EnsembleSpec("ginue", 4), 1.0, 0.0)
        m = sample_mixed(spec, rng)
        assert np.allclose(m, m.T) and np.allclose(m.imag, 0.0)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_second_moment_calibration(self, kind, rng):
        """Test E tr(L†L) = σ²N² and E|tr L|² matches the exact value"""
        spec = EnsembleSpec(kind, 6, sigma=1.5)
        batch = sample_batch(spec, rng, 4000)
        tr_ldl = np.real(np.einsum("bij,bij->b", batch.conj(), batch)).mean()
        abs_tr_sq = (np.abs(np.trace(batch, axis1=1, axis2=2)) ** 2).mean()
        expected = second_moments(spec)
        assert tr_ldl == pytest.approx(expected.tr_ldl, rel=0.03)
        assert abs_tr_sq == pytest.approx(expected.abs_trace_sq, rel=0.08)


class TestSecondMoments:
    """Tests for the closed-form second moments"""

    def test_uniform_norm(self):
        """Test E tr(L†L) = σ²N² for every kind"""
        for kind in ALL_KINDS:
            assert second_moments(EnsembleSpec(kind, 8, 2.0)).tr_ldl == 4.0 * 64

    def test_gse_trace(self):
        """Test GSE has E|tr L|² = 4σ²N"""
        assert second_moments(EnsembleSpec("gse", 8)).abs_trace_sq == 32.0

    def test_traceless_part(self):
        """Test traceless part is σ²(N² − 1) for GUE"""
        assert second_moments(EnsembleSpec("gue", 5)).traceless_part == pytest.approx(24.0)

    def test_mixture_weights(self):
        """Test mixtures combine with weights a²"""
        m = second_moments(_mixed(4, math.sqrt(0.25), math.sqrt(0.75)))
        assert m.tr_ldl == pytest.approx(16.0)
        assert m.abs_trace_sq == pytest.approx(4.0)

    def test_ginibre_trace_split(self):
        """Test the GinUE split sums to σ²N²"""
        m = ginibre_trace_moments(10, 2.0)
        assert m.lambda_sq == 4.0 * 55.0
        assert m.lambda_sq + m.t_sq == 4.0 * 100.0
        assert m.lambda_sq_large_n == m.t_sq_large_n == 200.0


class TestHaar:
    """Tests for Haar unitaries and states"""

    def test_unitary(self, rng):
        """Test Haar unitaries satisfy U U† = I"""
        u = sample_haar_unitary(6, rng)
        assert np.allclose(u @ u.conj().T, np.eye(6))

    def test_pure_state_normalized(self, rng):
        """Test Haar states are unit vectors"""
        assert np.linalg.norm(sample_haar_pure_state(7, rng)) == pytest.approx(1.0)

    def test_overlap_distribution(self, rng):
        """Test E|⟨0|ψ⟩|² = 1/N and E|⟨0|ψ⟩|⁴ = 2/(N(N+1))"""
        n = 4
        overlaps = np.array([abs(sample_haar_pure_state(n, rng)[0]) ** 2 for _ in range(20000)])
        assert overlaps.mean() == pytest.approx(1.0 / n, rel=0.02)
        assert (overlaps ** 2).mean() == pytest.approx(2.0 / (n * (n + 1)), rel=0.05)

    def test_second_moment_matches_sampling(self, rng):
        """Test ∫ U A U† dU = tr(A)/N·I against a Monte Carlo average"""
        a = np.diag([1.0, 2.0, 3.0]).astype(complex)
        acc = np.zeros((3, 3), dtype=complex)
        for _ in range(4000):
            u = sample_haar_unitary(3, rng)
            acc += u @ a @ u.conj().T
        assert np.allclose(acc / 4000, haar_second_moment(a), atol=0.08)

    def test_fourth_moment_matches_sampling(self, rng):
        """Test the Weingarten formula against a Monte Carlo average"""
        n = 3
        a = np.diag([1.0, 0.0, 0.0]).astype(complex)
        x = np.diag([0.5, 0.5, 0.0]).astype(complex)
        acc = np.zeros((n, n), dtype=complex)
        for _ in range(8000):
            u = sample_haar_unitary(n, rng)
            p = u @ a @ u.conj().T
            acc += p @ x @ p
        assert np.allclose(acc / 8000, haar_fourth_moment(a, x, a), atol=0.02)

    def test_fourth_moment_identity(self):
        """Test A = B = I returns X"""
        n = 4
        eye = np.eye(n)
        assert np.allclose(haar_fourth_moment(eye, np.diag([1, 0, 0, 0]), eye), np.diag([1, 0, 0, 0]))

    def test_fourth_moment_rejects_scalar(self):
        """Test N = 1 is rejected"""
        with pytest.raises(DimensionError):
            haar_fourth_moment(np.eye(1), np.eye(1), np.eye(1))


class TestSpectralDiagnostics:
    """Tests for spectral laws and the Schur split"""

    def test_semicircle_cdf_endpoints(self):
        """Test the semicircle CDF runs from 0 to 1 and is ½ at the centre"""
        assert np.allclose(semicircle_cdf([-1.0, 0.0, 1.0, 2.0]), [0.0, 0.5, 1.0, 1.0])

    def test_radial_cdf(self):
        """Test the radial CDF is r² on the unit disk"""
        assert np.allclose(radial_cdf([0.0, 0.5, 1.0, 3.0]), [0.0, 0.25, 1.0, 1.0])

    def test_rejects_too_few_eigenvalues(self, rng):
        """Test fewer than 100 pooled eigenvalues are rejected"""
        with pytest.raises(ParameterError) as exc_info:
            spectral_density_check(EnsembleSpec("gue", 8), 10, rng)

        assert exc_info.value.field == "n_samples"

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_limiting_law(self, kind, rng):
        """Test pooled eigenvalues follow the semicircle or circular law"""
        report = spectral_density_check(EnsembleSpec(kind, 400), 5, rng)
        assert report.n_eigenvalues == 2000
        assert report.ks_distance < 0.05
        assert report.outlier_fraction < 0.01

    def test_schur_split_sum_rule(self, rng):
        """Test Σ|λ|² + tr(T†T) = tr(G†G)"""
        g = sample(EnsembleSpec("ginue", 8), rng)
        split = schur_trace_split(g)
        assert split.total == pytest.approx(float(np.real(np.vdot(g, g))), rel=1e-12)

    def test_schur_split_normal_matrix(self, pauli):
        """Test a normal matrix has no non-normal part"""
        split = schur_trace_split(pauli["x"] + 1j * np.eye(2))
        assert split.t_sq < 1e-12
        assert split.lambda_sq == pytest.approx(4.0)

    def test_schur_split_ginue_average(self, rng):
        """Test the GinUE eigenvalue part against σ²N(N+1)/2"""
        n = 6
        batch = sample_batch(EnsembleSpec("ginue", n), rng, 2000)
        mean = np.mean([schur_trace_split(g).lambda_sq for g in batch])
        assert mean == pytest.approx(ginibre_trace_moments(n).lambda_sq, rel=0.05)
