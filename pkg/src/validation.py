"""
Input Validation

Validates numerical parameters before they reach samplers, integrators and
closed-form evaluators. Every function returns the normalized value or raises
a typed error from src.exceptions.
"""

import math
from typing import Sequence

import numpy as np

from .exceptions import (
    DomainError,
    ParameterError,
    ValidationError,
)


# Dimension constraints
MIN_DIMENSION = 1
MIN_ASYMPTOTIC_DIMENSION = 3  # large-N formulas and experiment grids
MAX_DIMENSION = 512

# Ensembles built from 2x2 quaternion blocks
SYMPLECTIC_KINDS = ("gse", "ginse")

# Tolerances
MAX_REL_TOL = 1e-3
MIXING_TOLERANCE = 1e-12
PURITY_SLACK = 1e-12

# Hypergeometric slice and moments
MAX_MOMENT_ORDER = 8
MAX_HYPERGEOMETRIC_Z = 1.0 - 1e-12

MAX_WORKERS = 256


def validate_positive(field: str, value: float) -> float:
    """
    Validate a strictly positive finite real.

    Raises:
        ParameterError: If value is not finite or not > 0
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(
            field, f"{field} must be a real number, got {value!r}", value
        ) from None
    if not math.isfinite(value) or value <= 0.0:
        raise ParameterError.not_positive(field, value)
    return value


def validate_dimension(n: int, minimum: int = MIN_DIMENSION, field: str = "n") -> int:
    """
    Validate a Hilbert-space dimension.

    Args:
        n: Requested dimension
        minimum: Smallest admissible value

    Returns:
        The dimension as a plain int

    Raises:
        ParameterError: If n is not an integer in [minimum, MAX_DIMENSION]
        DomainError: If n is below an asymptotic formula's minimum of 3
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ParameterError(field, f"{field} must be an integer, got {n!r}", n)
    n = int(n)
    if n < minimum:
        if minimum >= MIN_ASYMPTOTIC_DIMENSION:
            raise DomainError(
                field,
                f"{field} must be at least {minimum} for the asymptotic formulas, got {n}",
                n,
            )
        raise ParameterError.out_of_range(field, n, minimum, MAX_DIMENSION)
    if n > MAX_DIMENSION:
        raise ParameterError.out_of_range(field, n, minimum, MAX_DIMENSION)
    return n


def validate_even_dimension(kind: str, n: int) -> int:
    """Reject odd dimensions for the quaternion-block ensembles."""
    n = validate_dimension(n)
    if kind in SYMPLECTIC_KINDS and n % 2:
        raise ParameterError.odd_dimension(kind.upper(), n)
    return n


def validate_purity(p0: float, n: int) -> float:
    """
    Validate an initial purity for dimension n.

    Values within PURITY_SLACK of the endpoints are snapped onto them, so
    1/n computed in floating point is accepted.

    Raises:
        ParameterError: If p0 is outside [1/n, 1]
    """
    p0 = float(p0)
    low = 1.0 / n
    if not math.isfinite(p0) or p0 < low - PURITY_SLACK or p0 > 1.0 + PURITY_SLACK:
        raise ParameterError.out_of_range("p0", p0, low, 1.0)
    return min(max(p0, low), 1.0)


def validate_rel_tol(rel_tol: float) -> float:
    """Validate an ODE relative tolerance in (0, MAX_REL_TOL]."""
    rel_tol = float(rel_tol)
    if not 0.0 < rel_tol <= MAX_REL_TOL:
        raise ParameterError.out_of_range("rel_tol", rel_tol, 0.0, MAX_REL_TOL)
    return rel_tol


def validate_moment_order(k: int) -> int:
    """Validate a raw-moment order 1 <= k <= MAX_MOMENT_ORDER."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ParameterError("k", f"moment order must be an integer, got {k!r}", k)
    if not 1 <= k <= MAX_MOMENT_ORDER:
        raise ParameterError.out_of_range("k", k, 1, MAX_MOMENT_ORDER)
    return int(k)


def validate_hypergeometric_argument(z: float) -> float:
    """Validate z for the 2F1(1, k+1; k+2; z) slice."""
    z = float(z)
    if not 0.0 < z <= MAX_HYPERGEOMETRIC_Z:
        raise DomainError(
            "z",
            f"z must lie in (0, {MAX_HYPERGEOMETRIC_Z!r}], got {z}",
            z,
        )
    return z


def validate_mixing_weights(a1: float, a2: float) -> tuple[float, float]:
    """
    Validate mixed-ensemble weights.

    Raises:
        ParameterError: If a1^2 + a2^2 differs from 1 by more than 1e-12
    """
    a1, a2 = float(a1), float(a2)
    norm = a1 * a1 + a2 * a2
    if not math.isfinite(norm) or abs(norm - 1.0) > MIXING_TOLERANCE:
        raise ParameterError(
            "a1,a2",
            f"mixing weights must satisfy a1^2 + a2^2 = 1, got {norm:.15g}",
            (a1, a2),
        )
    return a1, a2


def validate_time_grid(t_grid: Sequence[float]) -> np.ndarray:
    """
    Validate an integration grid.

    Returns:
        The grid as a float array

    Raises:
        ValidationError: If the grid is empty, does not start at 0, or is not ascending
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValidationError("t_grid", "time grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(grid)):
        raise ValidationError("t_grid", "time grid contains non-finite values")
    if grid[0] != 0.0:
        raise ValidationError("t_grid", f"time grid must start at 0, got {grid[0]}", grid[0])
    if np.any(np.diff(grid) <= 0.0):
        raise ValidationError("t_grid", "time grid must be strictly ascending")
    return grid


def validate_worker_count(workers: int) -> int:
    """Validate a worker-pool size."""
    if isinstance(workers, bool) or not isinstance(workers, (int, np.integer)):
        raise ParameterError("n_workers", f"worker count must be an integer, got {workers!r}", workers)
    if not 1 <= workers <= MAX_WORKERS:
        raise ParameterError.out_of_range("n_workers", workers, 1, MAX_WORKERS)
    return int(workers)


def validate_count(field: str, value: int, minimum: int = 1) -> int:
    """Validate an integer sample count."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ParameterError(field, f"{field} must be an integer, got {value!r}", value)
    if value < minimum:
        raise ParameterError(field, f"{field} must be at least {minimum}, got {value}", value)
    return int(value)
