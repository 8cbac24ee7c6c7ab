"""
Decoherence rate of a single realization.

    D = (2/P₀) Σ_α γ_α [tr(ρ₀² L_α†L_α) − tr(ρ₀ L_α† ρ₀ L_α)]

evaluated in the equivalent commutator form (2/P₀) Σ_α γ_α Re tr(ρ L_α† [L_α, ρ]),
which vanishes identically for L_α ∝ I and for ρ = I/N instead of by
cancellation of two large traces.
"""

from typing import Optional

import numpy as np
import numpy.typing as npt

from ..exceptions import DimensionError, ParameterError
from ..lindblad import LindbladModel, purity_trajectory
from ..states import DensityMatrix

# Short-time slope estimator
SLOPE_STEP = 1e-4
SLOPE_REL_TOL = 1e-10


def _commutator_traces(ops: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Re tr(ρ L† [L, ρ]) for a batch of operators (B, N, N) and ρ (N, N) or (B, N, N)."""
    comm = ops @ rho - rho @ ops
    return np.real(np.einsum("bkj,bkj->b", np.conj(ops), comm @ rho))


def rate(model: LindbladModel, rho0: DensityMatrix) -> float:
    """Decoherence rate D of model at state rho0."""
    if rho0.dim != model.dim:
        raise DimensionError.mismatch((model.dim, model.dim), (rho0.dim, rho0.dim))
    ops = np.stack(model.jump_operators)
    traces = _commutator_traces(ops, rho0.matrix)
    return float(2.0 * np.dot(model.rates, traces) / rho0.purity)


def batch_rates(
    ops: npt.ArrayLike,
    rhos: npt.ArrayLike,
    purities: npt.ArrayLike,
    gamma: float,
) -> np.ndarray:
    """
    Single-channel rates for B realizations at once.

    Args:
        ops: Jump operators, shape (B, N, N)
        rhos: States, shape (B, N, N) or one shared (N, N) state
        purities: P₀ per realization, shape (B,) or scalar
        gamma: Rate γ = Γ of the single channel

    Returns:
        Array of B rates
    """
    ops = np.asarray(ops, dtype=np.complex128)
    rhos = np.asarray(rhos, dtype=np.complex128)
    if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
        raise DimensionError("ops", f"expected a (B, N, N) operator batch, got {ops.shape}", ops.shape)
    if rhos.shape[-2:] != ops.shape[1:]:
        raise DimensionError.mismatch(ops.shape[1:], rhos.shape[-2:])
    return 2.0 * gamma * _commutator_traces(ops, rhos) / np.asarray(purities, dtype=float)


def rate_shift_invariance_check(model: LindbladModel, rho0: DensityMatrix, shift: complex) -> float:
    """
    |D(L) − D(L + shift·I)| for a single-channel model.

    Raises:
        ParameterError: If the model has more than one jump operator
    """
    if model.n_jumps != 1:
        raise ParameterError("model", "shift invariance is checked on single-channel models", model.n_jumps)
    op = model.jump_operators[0]
    shifted = LindbladModel.single(
        op + complex(shift) * np.eye(model.dim, dtype=np.complex128),
        model.rates[0],
        model.hamiltonian,
    )
    return abs(rate(model, rho0) - rate(shifted, rho0))


def purity_slope_rate(
    model: LindbladModel,
    rho0: DensityMatrix,
    dt: Optional[float] = None,
    rel_tol: float = SLOPE_REL_TOL,
) -> float:
    """
    Short-time estimate (P₀ − P(δt))/(P₀·δt) from propagation.

    δt defaults to 10⁻⁴/D, or 10⁻⁴/Γ when D = 0.
    """
    if dt is None:
        d = rate(model, rho0)
        dt = SLOPE_STEP / (d if d > 0.0 else model.gamma_total)
    traj = purity_trajectory(model, rho0, [0.0, float(dt)], rel_tol)
    return float((rho0.purity - traj.purities[-1]) / (rho0.purity * dt))

