"""
Exception hierarchy rooted at LindbrandError.

Every error carries a message and a details dict for structured logs:
- Input validation (parameters, domains, dimensions, normalization)
- Numerical failures (symmetry, convergence, stiffness, positivity)
- Configuration errors
- Output errors
"""

from typing import Optional, Any


class LindbrandError(Exception):
    """Base exception for all lindbrand errors"""

    def __init__(self, message: str, details: Optional[dict] = None):
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> dict:
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "details": self.details
        }

    def __str__(self) -> str:
        return self.message


# ==================== Validation Errors ====================

class ValidationError(LindbrandError):
    """Input validation error"""

    def __init__(self, field: str, message: str, value: Any = None):
        self.field = field
        self.value = value
        details = {"field": field}
        if value is not None:
            details["value"] = str(value)[:100]
        super().__init__(message, details)


class ParameterError(ValidationError):
    """Parameter outside its admissible set"""

    @classmethod
    def not_positive(cls, field: str, value: Any) -> "ParameterError":
        return cls(field, f"{field} must be positive, got {value}", value)

    @classmethod
    def out_of_range(cls, field: str, value: Any, low: float, high: float) -> "ParameterError":
        return cls(field, f"{field} must lie in [{low}, {high}], got {value}", value)

    @classmethod
    def odd_dimension(cls, kind: str, dim: int) -> "ParameterError":
        return cls(
            "dim",
            f"{kind} needs an even dimension (quaternion blocks), got {dim}",
            dim,
        )


class DomainError(ParameterError):
    """Argument outside the domain where a formula is defined"""

    @classmethod
    def outside_support(cls, value: float, upper: float) -> "DomainError":
        return cls("d", f"rate {value} outside the support [0, {upper}]", value)


class DimensionError(ParameterError):
    """Matrix shapes incompatible with the operation"""

    @classmethod
    def not_square(cls, shape: tuple) -> "DimensionError":
        return cls("shape", f"expected a square matrix, got shape {shape}", shape)

    @classmethod
    def mismatch(cls, left: tuple, right: tuple) -> "DimensionError":
        return cls("shape", f"incompatible shapes {left} and {right}", (left, right))


class NormalizationError(ParameterError):
    """State vector is not normalized"""

    def __init__(self, norm: float, tolerance: float):
        super().__init__(
            "psi",
            f"state vector must have unit norm (tolerance {tolerance:g}), got {norm:.12g}",
            norm,
        )
        self.norm = norm


# ==================== Numerical Errors ====================

class NumericalError(LindbrandError):
    """Numerical failure with diagnostics"""
    pass


class NonFiniteError(NumericalError):
    """NaN or Inf encountered in a matrix"""

    def __init__(self, where: str):
        super().__init__(f"non-finite entries in {where}", {"where": where})
        self.where = where


class SymmetryError(NumericalError):
    """Matrix expected to be Hermitian is not"""

    def __init__(self, defect: float, tolerance: float):
        super().__init__(
            f"matrix is not Hermitian: relative defect {defect:.3e} > {tolerance:.1e}",
            {"defect": defect, "tolerance": tolerance},
        )
        self.defect = defect


class ConvergenceError(NumericalError):
    """Eigen or Schur iteration did not converge"""

    @classmethod
    def from_lapack(cls, routine: str, reason: str) -> "ConvergenceError":
        return cls(
            f"{routine} failed to converge: {reason}",
            {"routine": routine, "reason": reason},
        )


class StiffnessError(NumericalError):
    """ODE step size underflow"""

    @classmethod
    def at_time(cls, t: float, reason: str) -> "StiffnessError":
        return cls(
            f"integrator stalled at t={t:.6g}: {reason}",
            {"t": t, "reason": reason},
        )


class PositivityError(NumericalError):
    """Propagated state lost positive semidefiniteness"""

    def __init__(self, min_eigenvalue: float, floor: float, t: Optional[float] = None):
        where = f" at t={t:.6g}" if t is not None else ""
        super().__init__(
            f"density matrix eigenvalue {min_eigenvalue:.3e} below {floor:.1e}{where}",
            {"min_eigenvalue": min_eigenvalue, "floor": floor, "t": t},
        )
        self.min_eigenvalue = min_eigenvalue


# ==================== Configuration Errors ====================

class ConfigurationError(LindbrandError):
    """Configuration error"""
    pass


class ConfigFileError(ConfigurationError):
    """Experiment config file missing or unreadable"""

    def __init__(self, path: str, reason: str):
        super().__init__(
            f"Cannot read config file: {path}. Reason: {reason}",
            {"path": path, "reason": reason}
        )
        self.path = path
        self.reason = reason


# ==================== Output Errors ====================

class OutputError(LindbrandError):
    """Failed to write results"""

    def __init__(self, path: str, reason: str):
        super().__init__(
            f"Failed to write {path}. Reason: {reason}",
            {"path": path, "reason": reason}
        )
        self.path = path
        self.reason = reason
