"""
Numerics Module

Provides:
- Validated dense complex matrix algebra
- Hermitian and general eigendecompositions, complex Schur form
- Error-controlled integration of linear ODE systems
"""

from .linalg import (
    ComplexMatrix,
    EigenSystem,
    HERMITIAN_TOL,
    adjoint,
    as_matrix,
    eig_general,
    eig_hermitian,
    frobenius_norm,
    hermitian_defect,
    matmul,
    schur,
    trace,
)
from .ode import DEFAULT_REL_TOL, integrate_linear_ode

__all__ = [
    "ComplexMatrix",
    "EigenSystem",
    "HERMITIAN_TOL",
    "DEFAULT_REL_TOL",
    "adjoint",
    "as_matrix",
    "eig_general",
    "eig_hermitian",
    "frobenius_norm",
    "hermitian_defect",
    "matmul",
    "schur",
    "trace",
    "integrate_linear_ode",
]
