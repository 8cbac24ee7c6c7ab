"""
Unit tests for density matrices.
"""

import numpy as np
import pytest
from src.states import (
    DensityMatrix,
    maximally_mixed,
    mixing_parameter,
    pure_state,
    purity,
    purity_family,
    random_purity_family_state,
)
from src.exceptions import NormalizationError, ParameterError, PositivityError, ValidationError


class TestDensityMatrix:
    """Tests for validated construction"""

    def test_pure_state_purity(self, qubit_plus):
        """Test a pure state has purity 1"""
        assert purity(qubit_plus) == pytest.approx(1.0)
        assert qubit_plus.dim == 2

    def test_matrix_is_read_only(self, qubit_zero):
        """Test the stored matrix cannot be mutated"""
        with pytest.raises(ValueError):
            qubit_zero.matrix[0, 0] = 0.5

    def test_rejects_non_hermitian(self):
        """Test a non-Hermitian matrix is rejected"""
        with pytest.raises(ValidationError) as exc_info:
            DensityMatrix.from_matrix([[0.5, 0.5], [0.0, 0.5]])

        assert "Hermitian" in exc_info.value.message

    def test_rejects_wrong_trace(self):
        """Test trace ≠ 1 is rejected"""
        with pytest.raises(ValidationError) as exc_info:
            DensityMatrix.from_matrix(np.eye(2))

        assert "trace" in exc_info.value.message

    def test_rejects_negative_eigenvalue(self):
        """Test a unit-trace Hermitian matrix with a negative eigenvalue is rejected"""
        with pytest.raises(PositivityError) as exc_info:
            DensityMatrix.from_matrix(np.diag([1.2, -0.2]))

        assert exc_info.value.min_eigenvalue == pytest.approx(-0.2)

    def test_hermitizes_small_defect(self):
        """Test tiny anti-Hermitian parts are removed"""
        m = np.array([[0.5, 0.1 + 1e-14j], [0.1, 0.5]])
        rho = DensityMatrix.from_matrix(m)
        assert np.array_equal(rho.matrix, rho.matrix.conj().T)


class TestPurityFamily:
    """Tests for the one-parameter family between pure and maximally mixed"""

    def test_maximally_mixed(self):
        """Test I/N has purity 1/N"""
        assert maximally_mixed(5).purity == pytest.approx(0.2)

    @pytest.mark.parametrize("p0", [0.25, 0.4, 0.7, 1.0])
    def test_hits_target_purity(self, p0, rng):
        """Test the family state has exactly the requested purity"""
        psi = np.array([1.0, 1.0, 1.0, 1.0]) / 2.0
        assert purity_family(psi, p0).purity == pytest.approx(p0, abs=1e-14)

    def test_endpoints(self):
        """Test P₀ = 1 gives |ψ⟩⟨ψ| and P₀ = 1/N gives I/N"""
        psi = np.array([0.0, 1.0, 0.0])
        assert np.allclose(purity_family(psi, 1.0).matrix, np.outer(psi, psi))
        assert np.allclose(purity_family(psi, 1.0 / 3.0).matrix, np.eye(3) / 3.0)

    def test_mixing_parameter(self):
        """Test p = √((N P₀ − 1)/(N − 1))"""
        assert mixing_parameter(0.5, 4) == pytest.approx(np.sqrt(1.0 / 3.0))
        assert mixing_parameter(0.25, 4) == 0.0
        assert mixing_parameter(1.0, 1) == 0.0

    def test_single_level(self):
        """Test N = 1 has the single state with purity 1"""
        assert purity_family(np.array([1.0]), 1.0).purity == pytest.approx(1.0)

    def test_rejects_unnormalized(self):
        """Test a non-unit vector is rejected"""
        with pytest.raises(NormalizationError) as exc_info:
            purity_family(np.array([1.0, 1.0]), 1.0)

        assert exc_info.value.norm == pytest.approx(np.sqrt(2.0))

    def test_rejects_purity_below_floor(self):
        """Test P₀ < 1/N is rejected"""
        with pytest.raises(ParameterError):
            purity_family(np.array([1.0, 0.0]), 0.4)

    def test_random_state_purity_range(self, rng):
        """Test random family states have purity in [1/N, 1]"""
        for _ in range(20):
            rho = random_purity_family_state(6, rng)
            assert 1.0 / 6.0 - 1e-12 <= rho.purity <= 1.0 + 1e-12

    def test_random_state_fixed_purity(self, rng):
        """Test a given P₀ is honoured"""
        assert random_purity_family_state(6, rng, p0=0.5).purity == pytest.approx(0.5)
