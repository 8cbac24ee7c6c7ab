"""
Error-controlled integration of linear ODE systems ẏ = G(y).

Used for the vectorized master equation. The embedded Runge-Kutta pair of
order 8(5,3) (scipy's DOP853) handles complex state vectors directly.
"""

from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..exceptions import NonFiniteError, StiffnessError
from ..logging_config import get_logger
from ..validation import validate_rel_tol, validate_time_grid

logger = get_logger(__name__)

DEFAULT_REL_TOL = 1e-8
# atol = rel_tol * ATOL_FACTOR * max|y0|
ATOL_FACTOR = 1e-2
ATOL_FLOOR = 1e-300


def integrate_linear_ode(
    generator: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    t_grid: Sequence[float],
    rel_tol: float = DEFAULT_REL_TOL,
    method: str = "DOP853",
) -> np.ndarray:
    """
    Integrate ẏ = generator(y) and sample the solution on t_grid.

    Args:
        generator: Linear apply-function y -> G·y (time independent)
        y0: Initial complex vector
        t_grid: Ascending times starting at 0
        rel_tol: Relative tolerance of the embedded error control, in (0, 1e-3]
        method: scipy.integrate.solve_ivp explicit Runge-Kutta method

    Returns:
        Array of shape (len(t_grid), len(y0)); row k is y(t_grid[k]) and row 0
        is y0 exactly

    Raises:
        StiffnessError: If the step size underflows
        NonFiniteError: If the solution blows up
    """
    grid = validate_time_grid(t_grid)
    rel_tol = validate_rel_tol(rel_tol)
    y0 = np.asarray(y0, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(y0)):
        raise NonFiniteError("initial vector")

    out = np.empty((grid.size, y0.size), dtype=np.complex128)
    out[0] = y0
    if grid.size == 1:
        return out

    scale = float(np.max(np.abs(y0))) if y0.size else 0.0
    atol = max(rel_tol * ATOL_FACTOR * scale, ATOL_FLOOR)

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return generator(y)

    sol = solve_ivp(
        rhs,
        (0.0, float(grid[-1])),
        y0,
        method=method,
        t_eval=grid,
        rtol=rel_tol,
        atol=atol,
    )
    if sol.status < 0:
        t_fail = float(sol.t[-1]) if sol.t.size else 0.0
        raise StiffnessError.at_time(t_fail, sol.message)

    logger.debug(
        "ODE integration finished",
        extra={"nfev": int(sol.nfev), "t_max": float(grid[-1]), "dim": int(y0.size)},
    )

    out[1:] = sol.y.T[1:]
    if not np.all(np.isfinite(out)):
        raise NonFiniteError("ODE solution")
    return out
