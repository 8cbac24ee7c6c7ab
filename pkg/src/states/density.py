"""
Density matrices.

A DensityMatrix is only built through validating constructors, so holding
one guarantees Hermiticity, unit trace and positive semidefiniteness within
the stated tolerances. Purity tr(ρ²) is computed once at construction.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import numpy.typing as npt

from ..ensembles import sample_haar_pure_state
from ..exceptions import NormalizationError, PositivityError, ValidationError
from ..numerics import ComplexMatrix, as_matrix, eig_hermitian, hermitian_defect
from ..validation import PURITY_SLACK, validate_dimension, validate_purity

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10
PURITY_CEILING_SLACK = 1e-10
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated N×N density matrix with cached purity."""
    matrix: ComplexMatrix = field(repr=False)
    purity: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(
        cls,
        m: npt.ArrayLike,
        herm_tol: float = HERMITIAN_TOL,
        trace_tol: float = TRACE_TOL,
        psd_floor: float = PSD_FLOOR,
        t: Optional[float] = None,
    ) -> "DensityMatrix":
        """
        Validate and wrap a matrix.

        The stored matrix is the exact Hermitian part of the input.

        Raises:
            ValidationError: If m is not Hermitian or not unit trace
            PositivityError: If an eigenvalue is below psd_floor
        """
        rho = as_matrix(m, "rho")
        defect = hermitian_defect(rho)
        if defect > herm_tol:
            raise ValidationError("rho", f"density matrix is not Hermitian (defect {defect:.3e})", defect)
        rho = 0.5 * (rho + rho.conj().T)
        tr = float(np.real(np.trace(rho)))
        if abs(tr - 1.0) > trace_tol:
            raise ValidationError("rho", f"density matrix trace must be 1, got {tr:.15g}", tr)
        lowest = float(eig_hermitian(rho, with_vectors=False).values[0])
        if lowest < psd_floor:
            raise PositivityError(lowest, psd_floor, t)
        n = rho.shape[0]
        p = float(np.real(np.vdot(rho, rho)))
        if p > 1.0 + PURITY_CEILING_SLACK or p < 1.0 / n - PURITY_CEILING_SLACK:
            raise ValidationError("rho", f"purity {p:.15g} outside [1/{n}, 1]", p)
        rho.setflags(write=False)
        return cls(matrix=rho, purity=p)


def _unit_vector(psi: npt.ArrayLike) -> np.ndarray:
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(norm, NORM_TOL)
    return v


def pure_state(psi: npt.ArrayLike) -> DensityMatrix:
    """|ψ⟩⟨ψ| for a unit vector ψ."""
    v = _unit_vector(psi)
    return DensityMatrix.from_matrix(np.outer(v, v.conj()))


def maximally_mixed(n: int) -> DensityMatrix:
    """I/n, purity 1/n."""
    n = validate_dimension(n)
    return DensityMatrix.from_matrix(np.eye(n, dtype=np.complex128) / n)


def mixing_parameter(p0: float, n: int) -> float:
    """
    Weight p of the pure component giving purity p0 in dimension n.

    p = √((N·P₀ − 1)/(N − 1)); exactly 0 at P₀ = 1/N and for n = 1.
    """
    if n == 1 or abs(n * p0 - 1.0) <= PURITY_SLACK:
        return 0.0
    return float(np.sqrt(max(0.0, (n * p0 - 1.0) / (n - 1.0))))


def purity_family(psi: npt.ArrayLike, p0: float) -> DensityMatrix:
    """
    ρ₀ = (1 − p)/N·I + p|ψ⟩⟨ψ| with purity p0.

    Raises:
        NormalizationError: If psi is not a unit vector
        ParameterError: If p0 is outside [1/N, 1]
    """
    v = _unit_vector(psi)
    n = v.size
    p0 = validate_purity(p0, n)
    p = 1.0 if n == 1 else mixing_parameter(p0, n)
    rho = ((1.0 - p) / n) * np.eye(n, dtype=np.complex128) + p * np.outer(v, v.conj())
    return DensityMatrix.from_matrix(rho)


def purity(rho: DensityMatrix) -> float:
    """tr(ρ²)."""
    return rho.purity


def random_purity_family_state(
    n: int,
    stream: np.random.Generator,
    p0: Optional[float] = None,
) -> DensityMatrix:
    """
    Haar-random ψ mixed to purity P₀.

    P₀ is drawn uniformly on [1/N, 1] unless given. ψ is drawn before P₀.
    """
    n = validate_dimension(n)
    psi = sample_haar_pure_state(n, stream)
    if p0 is None:
        p0 = float(stream.uniform(1.0 / n, 1.0))
    return purity_family(psi, p0)
