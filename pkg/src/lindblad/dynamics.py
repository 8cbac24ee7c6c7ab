"""
Time evolution under the master equation and purity trajectories.
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Sequence

import numpy as np

from ..ensembles import AnyEnsembleSpec, sample_haar_pure_state
from ..exceptions import DimensionError, ParameterError
from ..logging_config import get_logger
from ..numerics import DEFAULT_REL_TOL, hermitian_defect, integrate_linear_ode
from ..parallel import ordered_map
from ..randomness import SeedSpec
from ..states import DensityMatrix, purity_family
from ..validation import (
    validate_count,
    validate_positive,
    validate_purity,
    validate_time_grid,
)
from .model import LindbladModel, unvec, vec

logger = get_logger(__name__)

# Tolerances for re-validating propagated states
PROPAGATION_HERMITIAN_TOL = 1e-9
PROPAGATION_TRACE_TOL = 1e-9
PROPAGATION_PSD_FLOOR = -1e-6
HERMITIZE_WARN = 1e-12

LOG_GRID_DECADES = 3


@dataclass(frozen=True, eq=False)
class PurityTrajectory:
    """
    Purity sampled on a time grid.

    For ensemble averages, purities holds the mean over realizations and
    std_errors the standard error of that mean.
    """
    times: np.ndarray
    purities: np.ndarray
    std_errors: Optional[np.ndarray] = field(default=None)
    n_realizations: int = 1

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        purities = np.asarray(self.purities, dtype=float)
        if times.shape != purities.shape:
            raise ParameterError(
                "purities",
                f"times and purities differ in shape: {times.shape} vs {purities.shape}",
            )
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "purities", purities)

    @property
    def p0(self) -> float:
        return float(self.purities[0])

    def __len__(self) -> int:
        return int(self.times.size)


def propagate(
    model: LindbladModel,
    rho0: DensityMatrix,
    t_grid: Sequence[float],
    rel_tol: float = DEFAULT_REL_TOL,
) -> list[DensityMatrix]:
    """
    Solve ρ̇ = L(ρ) on t_grid.

    Every propagated state is hermitized and re-validated as a density
    matrix.

    Raises:
        DimensionError: If model and state dimensions differ
        StiffnessError: If the integrator stalls
        PositivityError: If an eigenvalue drops below −1e-6
    """
    n = model.dim
    if rho0.dim != n:
        raise DimensionError.mismatch((n, n), (rho0.dim, rho0.dim))
    grid = validate_time_grid(t_grid)
    sup = model.superoperator
    rows = integrate_linear_ode(lambda y: sup @ y, vec(rho0.matrix), grid, rel_tol=rel_tol)

    states = []
    worst = 0.0
    for t, row in zip(grid, rows):
        m = unvec(row, n)
        worst = max(worst, hermitian_defect(m))
        states.append(
            DensityMatrix.from_matrix(
                m,
                herm_tol=PROPAGATION_HERMITIAN_TOL,
                trace_tol=PROPAGATION_TRACE_TOL,
                psd_floor=PROPAGATION_PSD_FLOOR,
                t=float(t),
            )
        )
    if worst > HERMITIZE_WARN:
        logger.warning("Hermitized propagated states", extra={"max_defect": worst, "dim": n})
    return states


def purity_trajectory(
    model: LindbladModel,
    rho0: DensityMatrix,
    t_grid: Sequence[float],
    rel_tol: float = DEFAULT_REL_TOL,
) -> PurityTrajectory:
    """Purity tr(ρ_t²) along the propagated trajectory."""
    grid = validate_time_grid(t_grid)
    states = propagate(model, rho0, grid, rel_tol)
    return PurityTrajectory(times=grid, purities=np.array([s.purity for s in states]))


def depolarizing_purity(p0: float, n: int, rate: float, t: np.ndarray | float) -> np.ndarray:
    """
    Purity ansatz P(t) = (P₀ − 1/N)·e^{−rate·t} + 1/N.

    With rate = ⟨D_L⟩ this is the exponential fit form; with rate = 2Γσ²N it
    is the exact mean purity under the depolarizing semigroup that the
    many-channel ensemble average converges to.
    """
    return (p0 - 1.0 / n) * np.exp(-rate * np.asarray(t, dtype=float)) + 1.0 / n


def depolarizing_rate(n: int, gamma_sigma_sq: float) -> float:
    """Decay rate 2Γσ²N of the purity excess under the averaged generator."""
    return 2.0 * gamma_sigma_sq * n


@dataclass(frozen=True)
class FitReport:
    """Deviation of a purity trajectory from the exponential ansatz."""
    max_rel_deviation: float
    rms_rel_deviation: float
    residuals: np.ndarray = field(repr=False)
    times: np.ndarray = field(repr=False)
    rate: float

    def to_dict(self) -> dict:
        return {
            "max_rel_deviation": self.max_rel_deviation,
            "rms_rel_deviation": self.rms_rel_deviation,
            "rate": self.rate,
            "n_points": int(self.times.size),
        }


def fit_purity_ansatz(
    traj: PurityTrajectory,
    p0: float,
    p_inf: float,
    d_l: float,
    t_max: Optional[float] = None,
) -> FitReport:
    """
    Compare a trajectory against P_fit = (P₀ − P_∞)e^{−⟨D_L⟩t} + P_∞.

    The rate is given, not fitted. Residuals are P − P_fit; the relative
    deviation divides by P_fit. Only points with t ≤ t_max are used when
    t_max is given.
    """
    d_l = validate_positive("d_l", d_l)
    mask = np.ones(len(traj), dtype=bool) if t_max is None else traj.times <= t_max
    times = traj.times[mask]
    fitted = (p0 - p_inf) * np.exp(-d_l * times) + p_inf
    residuals = traj.purities[mask] - fitted
    rel = np.abs(residuals) / np.abs(fitted)
    return FitReport(
        max_rel_deviation=float(rel.max()) if rel.size else 0.0,
        rms_rel_deviation=float(np.sqrt(np.mean(rel * rel))) if rel.size else 0.0,
        residuals=residuals,
        times=times,
        rate=d_l,
    )


def time_grid(t_max: float, n_points: int, spacing: str = "linear") -> np.ndarray:
    """
    Time grid on [0, t_max].

    Log grids put n_points − 1 geometrically spaced points over the last
    three decades before t_max, preceded by t = 0.
    """
    t_max = validate_positive("t_max", t_max)
    n_points = validate_count("n_points", n_points, minimum=2)
    if spacing == "linear":
        return np.linspace(0.0, t_max, n_points)
    if spacing == "log":
        tail = np.geomspace(t_max * 10.0 ** -LOG_GRID_DECADES, t_max, n_points - 1)
        return np.concatenate(([0.0], tail))
    raise ParameterError("spacing", f"spacing must be 'linear' or 'log', got {spacing!r}", spacing)


def _realization_purities(
    index: int,
    spec: AnyEnsembleSpec,
    seed: SeedSpec,
    p0: float,
    grid: np.ndarray,
    gamma_total: float,
    n_jumps: int,
    rel_tol: float,
) -> np.ndarray:
    # ψ first, then the jump operators, all from the index-th substream
    stream = seed.child(index).generator()
    psi = sample_haar_pure_state(spec.dim, stream)
    model = LindbladModel.from_ensemble(spec, stream, gamma_total, n_jumps)
    return purity_trajectory(model, purity_family(psi, p0), grid, rel_tol).purities


def ensemble_purity_decay(
    spec: AnyEnsembleSpec,
    p0: float,
    t_grid: Sequence[float],
    n_realizations: int,
    seed: SeedSpec,
    gamma_total: float = 1.0,
    n_jumps: int = 1,
    rel_tol: float = DEFAULT_REL_TOL,
    n_workers: int = 1,
) -> PurityTrajectory:
    """
    Realization-averaged purity.

    Each realization draws a Haar-random ψ (mixed to purity p0) and n_jumps
    jump operators with γ = Γ/n_jumps from its own substream, so the result
    does not depend on n_workers.
    """
    grid = validate_time_grid(t_grid)
    p0 = validate_purity(p0, spec.dim)
    n_realizations = validate_count("n_realizations", n_realizations, minimum=2)
    task = partial(
        _realization_purities,
        spec=spec,
        seed=seed,
        p0=p0,
        grid=grid,
        gamma_total=gamma_total,
        n_jumps=n_jumps,
        rel_tol=rel_tol,
    )
    stacked = np.vstack(ordered_map(task, range(n_realizations), n_workers))
    mean = stacked.mean(axis=0)
    std_errors = stacked.std(axis=0, ddof=1) / np.sqrt(n_realizations)
    logger.info(
        "Ensemble purity decay finished",
        extra={
            "ensemble": spec.label,
            "dim": spec.dim,
            "p0": p0,
            "n_realizations": n_realizations,
            "n_jumps": n_jumps,
        },
    )
    return PurityTrajectory(grid, mean, std_errors, n_realizations)
