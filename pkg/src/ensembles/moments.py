"""
Exact second moments of the calibrated samplers.

These feed the averaged-rate formula: for Haar-random initial states the
ensemble-mean rate depends on the ensemble only through E tr(L†L) and
E|tr L|².
"""

from dataclasses import dataclass

from .kinds import AnyEnsembleSpec, EnsembleKind, EnsembleSpec, MixedEnsembleSpec


@dataclass(frozen=True)
class SecondMoments:
    dim: int
    tr_ldl: float        # E tr(L†L)
    abs_trace_sq: float  # E |tr L|²

    @property
    def traceless_part(self) -> float:
        """E tr(L̃†L̃) for the traceless shift L̃ = L − (tr L/N)·I."""
        return self.tr_ldl - self.abs_trace_sq / self.dim


def _single(spec: EnsembleSpec) -> SecondMoments:
    n, s2 = spec.dim, spec.sigma ** 2
    if spec.kind is EnsembleKind.GSE:
        # tr L = 2 tr A with N/2 diagonal entries of variance 2σ²
        return SecondMoments(dim=n, tr_ldl=s2 * n * n, abs_trace_sq=4.0 * s2 * n)
    return SecondMoments(dim=n, tr_ldl=s2 * n * n, abs_trace_sq=s2 * n)


def second_moments(spec: AnyEnsembleSpec) -> SecondMoments:
    """E tr(L†L) and E|tr L|²; mixtures add with weights a², cross terms vanish."""
    if isinstance(spec, MixedEnsembleSpec):
        first, second = _single(spec.first), _single(spec.second)
        w1, w2 = spec.a1 ** 2, spec.a2 ** 2
        return SecondMoments(
            dim=spec.dim,
            tr_ldl=w1 * first.tr_ldl + w2 * second.tr_ldl,
            abs_trace_sq=w1 * first.abs_trace_sq + w2 * second.abs_trace_sq,
        )
    return _single(spec)


@dataclass(frozen=True)
class GinibreTraceMoments:
    """Schur split of E tr(G†G) for GinUE, exact and circular-law values."""
    lambda_sq: float
    t_sq: float
    lambda_sq_large_n: float
    t_sq_large_n: float


def ginibre_trace_moments(n: int, sigma: float = 1.0) -> GinibreTraceMoments:
    """
    E Σ|λᵢ|² = σ²N(N+1)/2 and E tr(T†T) = σ²N(N−1)/2 for GinUE.

    The circular law gives σ²N²/2 for both at leading order.
    """
    s2 = sigma * sigma
    return GinibreTraceMoments(
        lambda_sq=s2 * n * (n + 1) / 2.0,
        t_sq=s2 * n * (n - 1) / 2.0,
        lambda_sq_large_n=s2 * n * n / 2.0,
        t_sq_large_n=s2 * n * n / 2.0,
    )
