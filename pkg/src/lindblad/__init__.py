"""
Lindblad Module

Provides:
- The GKSL generator and its vectorized superoperator
- Propagation of density matrices and purity trajectories
- The exponential purity ansatz and the depolarizing reference curve
- Realization-averaged purity decay
"""

from .dynamics import (
    FitReport,
    PurityTrajectory,
    depolarizing_purity,
    depolarizing_rate,
    ensemble_purity_decay,
    fit_purity_ansatz,
    propagate,
    purity_trajectory,
    time_grid,
)
from .model import LindbladModel, apply_generator, unvec, vec

__all__ = [
    "LindbladModel",
    "PurityTrajectory",
    "FitReport",
    "apply_generator",
    "vec",
    "unvec",
    "propagate",
    "purity_trajectory",
    "fit_purity_ansatz",
    "depolarizing_purity",
    "depolarizing_rate",
    "time_grid",
    "ensemble_purity_decay",
]
