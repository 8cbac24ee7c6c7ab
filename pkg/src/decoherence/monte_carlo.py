"""
Monte Carlo ensemble averages of the decoherence rate.

Realization i draws, in order, a Haar-random ψ, P₀ (uniform policy only)
and one jump operator from substream i of the seed, so estimates are
identical for every worker count and chunking.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Optional, Union

import numpy as np

from ..ensembles import AnyEnsembleSpec, sample_batch, sample_haar_pure_state
from ..exceptions import ParameterError
from ..logging_config import get_logger
from ..parallel import ordered_map
from ..randomness import SeedSpec
from ..states import DensityMatrix, mixing_parameter
from ..validation import validate_count, validate_positive, validate_purity
from .rates import batch_rates

logger = get_logger(__name__)

CHUNK_SIZE = 256


class P0Mode(Enum):
    PURE = "pure"
    FIXED = "fixed"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class P0Policy:
    """How the initial purity of each realization is chosen."""
    mode: P0Mode
    value: Optional[float] = None

    @classmethod
    def pure(cls) -> "P0Policy":
        return cls(P0Mode.PURE, 1.0)

    @classmethod
    def fixed(cls, p0: float) -> "P0Policy":
        return cls(P0Mode.FIXED, float(p0))

    @classmethod
    def uniform(cls) -> "P0Policy":
        return cls(P0Mode.UNIFORM)

    @classmethod
    def parse(cls, mode: Union[str, P0Mode], p0: Optional[float] = None) -> "P0Policy":
        try:
            mode = P0Mode(mode)
        except ValueError:
            raise ParameterError(
                "p0_policy", f"p0_policy must be pure, fixed or uniform, got {mode!r}", mode
            ) from None
        if mode is P0Mode.FIXED:
            if p0 is None:
                raise ParameterError("p0", "p0 is required for the fixed policy")
            return cls.fixed(p0)
        return cls.pure() if mode is P0Mode.PURE else cls.uniform()

    def draw(self, n: int, stream: np.random.Generator) -> float:
        if self.mode is P0Mode.UNIFORM:
            return float(stream.uniform(1.0 / n, 1.0))
        return validate_purity(self.value, n)

    @property
    def label(self) -> str:
        if self.mode is P0Mode.FIXED:
            return f"fixed({self.value:g})"
        return self.mode.value


@dataclass(frozen=True)
class RateEstimate:
    """Sample mean of per-realization rates with its standard error."""
    mean: float
    std_error: float
    n_realizations: int
    spec: AnyEnsembleSpec
    p0: float  # fixed value, or the mean drawn P₀ under the uniform policy
    policy: P0Policy = P0Policy.pure()

    @property
    def std_dev(self) -> float:
        return self.std_error * math.sqrt(self.n_realizations)

    def to_dict(self) -> dict:
        return {
            "ensemble": self.spec.label,
            "n": self.spec.dim,
            "mean": self.mean,
            "std_error": self.std_error,
            "n_realizations": self.n_realizations,
            "p0": self.p0,
            "p0_policy": self.policy.label,
        }


def _family_state(psi: np.ndarray, p0: float) -> np.ndarray:
    n = psi.size
    p = 1.0 if n == 1 else mixing_parameter(p0, n)
    return ((1.0 - p) / n) * np.eye(n, dtype=np.complex128) + p * np.outer(psi, psi.conj())


def _chunk_rates(
    bounds: tuple[int, int],
    spec: AnyEnsembleSpec,
    policy: P0Policy,
    gamma_total: float,
    seed: SeedSpec,
) -> tuple[np.ndarray, np.ndarray]:
    start, stop = bounds
    n = spec.dim
    count = stop - start
    ops = np.empty((count, n, n), dtype=np.complex128)
    rhos = np.empty((count, n, n), dtype=np.complex128)
    p0s = np.empty(count)
    for j, index in enumerate(range(start, stop)):
        stream = seed.child(index).generator()
        psi = sample_haar_pure_state(n, stream)
        p0s[j] = policy.draw(n, stream)
        rhos[j] = _family_state(psi, p0s[j])
        ops[j] = sample_batch(spec, stream, 1)[0]
    # Purity of the family state equals P₀ exactly; use the realized value
    purities = np.real(np.einsum("bij,bij->b", rhos.conj(), rhos))
    return batch_rates(ops, rhos, purities, gamma_total), p0s


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def mc_average_rate(
    spec: AnyEnsembleSpec,
    p0_policy: P0Policy,
    n_realizations: int,
    gamma_total: float,
    seed: SeedSpec,
    n_workers: int = 1,
) -> RateEstimate:
    """
    Estimate the ensemble-averaged rate ⟨D⟩ with one jump operator per
    realization and γ = Γ.

    Raises:
        ParameterError: If the fixed P₀ is outside [1/N, 1] or n_realizations < 2
    """
    n_realizations = validate_count("n_realizations", n_realizations, minimum=2)
    gamma_total = validate_positive("gamma_total", gamma_total)
    if p0_policy.mode is P0Mode.FIXED:
        validate_purity(p0_policy.value, spec.dim)

    task = partial(_chunk_rates, spec=spec, policy=p0_policy, gamma_total=gamma_total, seed=seed)
    parts = ordered_map(task, _chunks(n_realizations, CHUNK_SIZE), n_workers)
    rates = np.concatenate([r for r, _ in parts])
    p0s = np.concatenate([p for _, p in parts])

    estimate = RateEstimate(
        mean=float(np.mean(rates)),
        std_error=float(np.std(rates, ddof=1) / math.sqrt(n_realizations)),
        n_realizations=n_realizations,
        spec=spec,
        p0=float(np.mean(p0s)),
        policy=p0_policy,
    )
    logger.debug("Monte Carlo rate estimate", extra=estimate.to_dict())
    return estimate


def mc_average_rate_for_state(
    spec: AnyEnsembleSpec,
    rho0: DensityMatrix,
    n_realizations: int,
    gamma_total: float,
    stream: np.random.Generator,
) -> RateEstimate:
    """
    Rate statistics over n_realizations jump operators at one fixed state.

    Operators are drawn from stream in blocks of CHUNK_SIZE·4, so the
    numbers consumed depend only on n_realizations.
    """
    n_realizations = validate_count("n_realizations", n_realizations, minimum=2)
    gamma_total = validate_positive("gamma_total", gamma_total)
    block = 4 * CHUNK_SIZE
    rates = np.concatenate(
        [
            batch_rates(
                sample_batch(spec, stream, min(block, n_realizations - start)),
                rho0.matrix,
                rho0.purity,
                gamma_total,
            )
            for start in range(0, n_realizations, block)
        ]
    )
    return RateEstimate(
        mean=float(np.mean(rates)),
        std_error=float(np.std(rates, ddof=1) / math.sqrt(n_realizations)),
        n_realizations=n_realizations,
        spec=spec,
        p0=rho0.purity,
        policy=P0Policy.fixed(rho0.purity),
    )
