"""
Spectral diagnostics for the samplers.

Hermitian kinds are compared against Wigner's semicircle on
[−2σ√N, 2σ√N]; Ginibre kinds against the circular law, whose radial
CDF on the disk of radius σ√N is r².
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import stats

from ..exceptions import ParameterError
from ..logging_config import get_logger
from ..numerics import as_matrix, eig_general, eig_hermitian, schur
from ..validation import validate_count
from .kinds import EnsembleSpec, Family
from .samplers import sample_batch

logger = get_logger(__name__)

# Pooled eigenvalues needed for a meaningful KS statistic
MIN_POOLED_EIGENVALUES = 100
EDGE_SLACK = 1.05
SPLIT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class SpectralReport:
    """Goodness of fit of pooled eigenvalues against the large-N law."""
    family: Family
    n_eigenvalues: int
    ks_distance: float
    ks_pvalue: float
    support_violations: int

    @property
    def outlier_fraction(self) -> float:
        return self.support_violations / self.n_eigenvalues

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "n_eigenvalues": self.n_eigenvalues,
            "ks_distance": self.ks_distance,
            "ks_pvalue": self.ks_pvalue,
            "support_violations": self.support_violations,
            "outlier_fraction": self.outlier_fraction,
        }


def semicircle_cdf(x: npt.ArrayLike) -> np.ndarray:
    """CDF of the semicircle on [−1, 1] in the reduced variable x = λ/(2σ√N)."""
    u = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    return 0.5 + (u * np.sqrt(1.0 - u * u) + np.arcsin(u)) / np.pi


def radial_cdf(r: npt.ArrayLike) -> np.ndarray:
    """CDF of |z|/(σ√N) under the uniform disk law."""
    u = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    return u * u


def pooled_eigenvalues(spec: EnsembleSpec, n_samples: int, stream: np.random.Generator) -> np.ndarray:
    """Eigenvalues of n_samples independent draws, concatenated."""
    n_samples = validate_count("n_samples", n_samples)
    batch = sample_batch(spec, stream, n_samples)
    if spec.kind.is_hermitian:
        return np.concatenate([eig_hermitian(m, with_vectors=False).values for m in batch])
    return np.concatenate([eig_general(m).values for m in batch])


def spectral_density_check(
    spec: EnsembleSpec,
    n_samples: int,
    stream: np.random.Generator,
) -> SpectralReport:
    """
    KS test of pooled eigenvalues against the semicircle or circular law.

    Support violations count eigenvalues beyond 1.05 times the edge of the
    limiting support (2σ√N for Hermitian kinds, σ√N for Ginibre kinds).

    Raises:
        ParameterError: If fewer than 100 eigenvalues would be pooled
    """
    n_samples = validate_count("n_samples", n_samples)
    if n_samples * spec.dim < MIN_POOLED_EIGENVALUES:
        raise ParameterError(
            "n_samples",
            f"need at least {MIN_POOLED_EIGENVALUES} pooled eigenvalues, "
            f"got {n_samples} samples of dimension {spec.dim}",
            n_samples,
        )

    values = pooled_eigenvalues(spec, n_samples, stream)
    scale = spec.sigma * np.sqrt(spec.dim)
    if spec.family is Family.GXE:
        reduced = np.real(values) / (2.0 * scale)
        result = stats.kstest(reduced, semicircle_cdf)
        violations = int(np.count_nonzero(np.abs(reduced) > EDGE_SLACK))
    else:
        reduced = np.abs(values) / scale
        result = stats.kstest(reduced, radial_cdf)
        violations = int(np.count_nonzero(reduced > EDGE_SLACK))

    report = SpectralReport(
        family=spec.family,
        n_eigenvalues=int(values.size),
        ks_distance=float(result.statistic),
        ks_pvalue=float(result.pvalue),
        support_violations=violations,
    )
    logger.debug("Spectral check", extra={"ensemble": spec.label, "dim": spec.dim, **report.to_dict()})
    return report


@dataclass(frozen=True)
class TraceSplit:
    lambda_sq: float  # Σ|λᵢ|²
    t_sq: float       # tr(T†T), strictly upper Schur part

    @property
    def total(self) -> float:
        return self.lambda_sq + self.t_sq


def schur_trace_split(g: npt.ArrayLike) -> TraceSplit:
    """
    Split tr(g†g) into its eigenvalue and non-normal parts.

    With g = U(Λ + T)U† the Schur form, tr(g†g) = Σ|λᵢ|² + tr(T†T).
    t_sq is computed as the remainder so the sum rule holds to rounding,
    and clamped to 0 when a normal matrix leaves a tiny negative residue.
    """
    m = as_matrix(g, "g")
    _, upper = schur(m)
    lambda_sq = float(np.sum(np.abs(np.diagonal(upper)) ** 2))
    total = float(np.real(np.vdot(m, m)))
    t_sq = total - lambda_sq
    if t_sq < 0.0:
        if t_sq < -SPLIT_TOLERANCE * max(total, 1.0):
            logger.warning(
                "Negative non-normal part in Schur split",
                extra={"t_sq": t_sq, "total": total},
            )
        t_sq = 0.0
    return TraceSplit(lambda_sq=lambda_sq, t_sq=t_sq)
