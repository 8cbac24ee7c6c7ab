"""
Closed-form ensemble-averaged decoherence rates.

For a Haar-random initial state of purity P₀ the averaged rate of a single
channel with total rate Γ is

    ⟨D⟩ = 2Γ (N·P₀ − 1) / ((N² − 1)·P₀) · [E tr(L†L) − E|tr L|²/N]

so it depends on the ensemble only through two second moments. The printed
large-N limits for the Hermitian (GXE) and Ginibre (GinXE) families are
exposed alongside the exact values for this package's calibrated samplers.
"""

import math

from ..ensembles import AnyEnsembleSpec, Family, SecondMoments, second_moments
from ..exceptions import DomainError
from ..validation import (
    MIN_ASYMPTOTIC_DIMENSION,
    validate_dimension,
    validate_positive,
    validate_purity,
)

PI_SQ_OVER_12 = math.pi ** 2 / 12.0
PI_SQ_OVER_6 = math.pi ** 2 / 6.0


def analytic_rate_limit(family: Family | str, n: int, gamma_sigma_sq: float) -> float:
    """
    Pure-state averaged rate ⟨D_L⟩ in the large-N closed forms.

    GXE: 2Γσ²(N − 2 + π²/12). GinXE: 2Γσ²(N² − 2)/(N + 1).

    Raises:
        DomainError: If n < 3
    """
    family = Family.parse(family)
    n = validate_dimension(n, minimum=MIN_ASYMPTOTIC_DIMENSION)
    gamma_sigma_sq = validate_positive("gamma_sigma_sq", gamma_sigma_sq)
    if family is Family.GXE:
        return 2.0 * gamma_sigma_sq * (n - 2.0 + PI_SQ_OVER_12)
    return 2.0 * gamma_sigma_sq * (n * n - 2.0) / (n + 1.0)


def a_coefficient(family: Family | str, n: int) -> float:
    """A = 2 + (π²/6 − 2)/N for GXE and A = 2 − 2/(N² − 1) for GinXE."""
    family = Family.parse(family)
    n = validate_dimension(n, minimum=MIN_ASYMPTOTIC_DIMENSION)
    if family is Family.GXE:
        return 2.0 + (PI_SQ_OVER_6 - 2.0) / n
    return 2.0 - 2.0 / (n * n - 1.0)


def analytic_average_rate(family: Family | str, n: int, gamma_sigma_sq: float, p0: float) -> float:
    """
    ⟨D⟩ = Γσ²·A·(N − 1/P₀).

    Raises:
        DomainError: If n < 3
        ParameterError: If p0 is outside [1/N, 1]
    """
    a = a_coefficient(family, n)
    gamma_sigma_sq = validate_positive("gamma_sigma_sq", gamma_sigma_sq)
    p0 = validate_purity(p0, n)
    return gamma_sigma_sq * a * (n - 1.0 / p0)


def _require_two_levels(n: int) -> int:
    n = validate_dimension(n)
    if n < 2:
        raise DomainError("n", "averaged rates need N >= 2", n)
    return n


def rate_from_second_moments(n: int, gamma_total: float, p0: float, moments: SecondMoments) -> float:
    """Averaged rate at purity p0 from E tr(L†L) and E|tr L|²."""
    n = _require_two_levels(n)
    gamma_total = validate_positive("gamma_total", gamma_total)
    p0 = validate_purity(p0, n)
    prefactor = 2.0 * gamma_total * (n * p0 - 1.0) / ((n * n - 1.0) * p0)
    return prefactor * (moments.tr_ldl - moments.abs_trace_sq / n)


def rate_limit_from_second_moments(n: int, gamma_total: float, moments: SecondMoments) -> float:
    """Pure-state value, the upper bound over P₀: 2Γ/(N + 1)·[E tr(L†L) − E|tr L|²/N]."""
    return rate_from_second_moments(n, gamma_total, 1.0, moments)


def calibrated_rate_limit(spec: AnyEnsembleSpec, gamma_total: float = 1.0) -> float:
    """
    Exact finite-N pure-state rate for the calibrated samplers.

    2Γσ²(N − 1) for GOE, GUE and the Ginibre kinds; 2Γσ²(N² − 4)/(N + 1)
    for GSE.
    """
    return rate_limit_from_second_moments(spec.dim, gamma_total, second_moments(spec))


def calibrated_a(spec: AnyEnsembleSpec) -> float:
    """Exact A with ⟨D⟩ = Γσ²·A·(N − 1/P₀) for the calibrated samplers."""
    n = _require_two_levels(spec.dim)
    moments = second_moments(spec)
    return 2.0 * moments.traceless_part / (spec.sigma ** 2 * (n * n - 1.0))
