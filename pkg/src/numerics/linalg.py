"""
Dense complex linear algebra.

Thin, validated wrappers around numpy/scipy: every matrix entering or leaving
these functions is a finite complex128 array. Tolerances are relative to the
Frobenius norm of the input with an absolute floor for near-zero inputs.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..exceptions import (
    ConvergenceError,
    DimensionError,
    NonFiniteError,
    SymmetryError,
)

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
ABSOLUTE_FLOOR = 1e-14


def as_matrix(a: npt.ArrayLike, where: str = "matrix") -> ComplexMatrix:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError("shape", f"{where} must be 2-D, got shape {m.shape}", m.shape)
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(where)
    return m


def _require_square(m: ComplexMatrix) -> int:
    if m.shape[0] != m.shape[1]:
        raise DimensionError.not_square(m.shape)
    return m.shape[0]


def frobenius_norm(a: npt.ArrayLike) -> float:
    return float(np.linalg.norm(as_matrix(a), "fro"))


def relative_scale(a: ComplexMatrix) -> float:
    """Frobenius norm with the absolute floor applied."""
    return max(float(np.linalg.norm(a, "fro")), ABSOLUTE_FLOOR)


def adjoint(a: npt.ArrayLike) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a: npt.ArrayLike) -> complex:
    m = as_matrix(a)
    _require_square(m)
    return complex(np.trace(m))


def matmul(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    left, right = as_matrix(a, "left operand"), as_matrix(b, "right operand")
    if left.shape[1] != right.shape[0]:
        raise DimensionError.mismatch(left.shape, right.shape)
    product = left @ right
    if not np.all(np.isfinite(product)):
        raise NonFiniteError("matrix product")
    return product


def hermitian_defect(a: npt.ArrayLike) -> float:
    """‖a − a†‖_F / ‖a‖_F (floored)."""
    m = as_matrix(a)
    _require_square(m)
    return float(np.linalg.norm(m - m.conj().T, "fro")) / relative_scale(m)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues and, optionally, column eigenvectors."""
    values: np.ndarray
    vectors: Optional[ComplexMatrix] = None

    def reconstruction_error(self, a: npt.ArrayLike) -> float:
        """‖A·V − V·diag(values)‖_F / ‖A‖_F; requires vectors."""
        if self.vectors is None:
            raise ValueError("eigenvectors were not computed")
        m = as_matrix(a)
        residual = m @ self.vectors - self.vectors * self.values[np.newaxis, :]
        return float(np.linalg.norm(residual, "fro")) / relative_scale(m)


def eig_hermitian(a: npt.ArrayLike, with_vectors: bool = True) -> EigenSystem:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        a: Square matrix, Hermitian to HERMITIAN_TOL relative
        with_vectors: Also return eigenvectors

    Returns:
        EigenSystem with real eigenvalues in ascending order

    Raises:
        SymmetryError: If the input is not Hermitian within tolerance
        ConvergenceError: If LAPACK fails
    """
    m = as_matrix(a)
    _require_square(m)
    defect = hermitian_defect(m)
    if defect > HERMITIAN_TOL:
        raise SymmetryError(defect, HERMITIAN_TOL)
    # Symmetrize so LAPACK sees an exactly Hermitian matrix
    m = 0.5 * (m + m.conj().T)
    try:
        if with_vectors:
            values, vectors = scipy.linalg.eigh(m, check_finite=False)
            return EigenSystem(values=values, vectors=vectors)
        values = scipy.linalg.eigh(m, eigvals_only=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError.from_lapack("eigh", str(e)) from e
    return EigenSystem(values=values)


def eig_general(a: npt.ArrayLike, with_vectors: bool = False) -> EigenSystem:
    """
    Eigenvalues (unordered) of a general square matrix.

    Raises:
        ConvergenceError: If LAPACK fails or returns non-finite values
    """
    m = as_matrix(a)
    _require_square(m)
    try:
        if with_vectors:
            values, vectors = scipy.linalg.eig(m, check_finite=False)
        else:
            values = scipy.linalg.eigvals(m, check_finite=False)
            vectors = None
    except np.linalg.LinAlgError as e:
        raise ConvergenceError.from_lapack("geev", str(e)) from e
    if not np.all(np.isfinite(values)):
        raise ConvergenceError.from_lapack("geev", "non-finite eigenvalues")
    return EigenSystem(values=values.astype(np.complex128), vectors=vectors)


def schur(a: npt.ArrayLike) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    Complex Schur decomposition a = U·(Λ+T)·U†.

    Returns:
        (unitary, upper) with upper triangular and its diagonal the eigenvalues
    """
    m = as_matrix(a)
    _require_square(m)
    try:
        upper, unitary = scipy.linalg.schur(m, output="complex", check_finite=False)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError.from_lapack("gees", str(e)) from e
    if not (np.all(np.isfinite(upper)) and np.all(np.isfinite(unitary))):
        raise ConvergenceError.from_lapack("gees", "non-finite Schur factors")
    return unitary, upper
