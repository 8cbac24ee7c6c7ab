"""
Distribution of the ensemble-averaged decoherence rate under a uniform
initial purity.

With P₀ ~ U[1/N, 1] and ⟨D⟩ = Ã(N − 1/P₀), the rate d lives on
[0, Ã(N − 1)] with

    F(d) = d / ((N − 1)(ÃN − d))
    f(d) = ÃN / ((N − 1)(ÃN − d)²)
    E[dᵏ] = Ãᵏ(N − 1)ᵏ [1 − k·₂F₁(1, k+1; k+2; (N−1)/N) / (N(k + 1))]
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy import integrate

from ..decoherence import a_coefficient, calibrated_a
from ..ensembles import AnyEnsembleSpec, EnsembleSpec, Family
from ..exceptions import DomainError, ParameterError
from ..validation import (
    MAX_MOMENT_ORDER,
    validate_dimension,
    validate_hypergeometric_argument,
    validate_moment_order,
    validate_positive,
)

SUPPORT_SLACK = 1e-12
# Below this z the logarithmic closed form cancels badly; sum the series
SERIES_CUTOFF = 0.5
SERIES_TERMS = 200
QUAD_EPSREL = 1e-13
QUAD_LIMIT = 200


@dataclass(frozen=True)
class RateDistributionModel:
    """Uniform-P₀ rate distribution for dimension N and Ã = Γσ²A."""
    n: int
    a_tilde: float
    family: Optional[Family] = None

    def __post_init__(self) -> None:
        n = validate_dimension(self.n, field="n")
        if n < 2:
            raise DomainError("n", "the rate distribution needs N >= 2", n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a_tilde", validate_positive("a_tilde", self.a_tilde))

    @classmethod
    def for_family(cls, family: Family | str, n: int, gamma_sigma_sq: float = 1.0) -> "RateDistributionModel":
        """Ã from the large-N A of the GXE or GinXE family."""
        family = Family.parse(family)
        gamma_sigma_sq = validate_positive("gamma_sigma_sq", gamma_sigma_sq)
        return cls(n, gamma_sigma_sq * a_coefficient(family, n), family)

    @classmethod
    def for_spec(cls, spec: AnyEnsembleSpec, gamma_total: float = 1.0) -> "RateDistributionModel":
        """Ã from the exact finite-N A of the calibrated sampler."""
        gamma_total = validate_positive("gamma_total", gamma_total)
        family = spec.family if isinstance(spec, EnsembleSpec) else None
        return cls(spec.dim, gamma_total * spec.sigma ** 2 * calibrated_a(spec), family)

    @property
    def upper(self) -> float:
        """Upper support endpoint Ã(N − 1)."""
        return self.a_tilde * (self.n - 1)

    @property
    def pole(self) -> float:
        return self.a_tilde * self.n

    def cdf_values(self, d: npt.ArrayLike) -> np.ndarray:
        """Vectorized CDF, 0 below and 1 above the support."""
        x = np.clip(np.asarray(d, dtype=float), 0.0, self.upper)
        return np.clip(x / ((self.n - 1) * (self.pole - x)), 0.0, 1.0)

    def pdf_values(self, d: npt.ArrayLike) -> np.ndarray:
        """Vectorized density, 0 outside the support."""
        x = np.asarray(d, dtype=float)
        inside = (x >= 0.0) & (x <= self.upper)
        safe = np.where(inside, x, 0.0)
        return np.where(inside, self.pole / ((self.n - 1) * (self.pole - safe) ** 2), 0.0)


def _in_support(model: RateDistributionModel, d: float) -> float:
    d = float(d)
    upper = model.upper
    if not math.isfinite(d) or d < -SUPPORT_SLACK * upper or d > upper * (1.0 + SUPPORT_SLACK):
        raise DomainError.outside_support(d, upper)
    return min(max(d, 0.0), upper)


def cdf(model: RateDistributionModel, d: float) -> float:
    """
    F(d) = d/((N − 1)(ÃN − d)).

    Raises:
        DomainError: If d is outside [0, Ã(N − 1)]
    """
    d = _in_support(model, d)
    if d == model.upper:
        return 1.0
    return d / ((model.n - 1) * (model.pole - d))


def pdf(model: RateDistributionModel, d: float) -> float:
    """
    f(d) = ÃN/((N − 1)(ÃN − d)²).

    Raises:
        DomainError: If d is outside [0, Ã(N − 1)]
    """
    d = _in_support(model, d)
    return model.pole / ((model.n - 1) * (model.pole - d) ** 2)


def quantile(model: RateDistributionModel, q: float) -> float:
    """Inverse CDF: d = q(N − 1)ÃN / (1 + q(N − 1))."""
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ParameterError.out_of_range("q", q, 0.0, 1.0)
    if q == 1.0:
        return model.upper
    m = q * (model.n - 1)
    return m * model.pole / (1.0 + m)


def hyp2f1_special(k: int, z: float) -> float:
    """
    ₂F₁(1, k+1; k+2; z) = (k + 1)·z^{−(k+1)}·[−ln(1 − z) − Σ_{m=1}^{k} z^m/m].

    For z < 0.5 the power series Σₙ (k + 1)/(k + 1 + n)·zⁿ is summed
    instead, since the bracket cancels to O(z^{k+1}).

    Raises:
        DomainError: If z is outside (0, 1 − 1e-12]
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise ParameterError("k", f"k must be a non-negative integer, got {k!r}", k)
    if k > MAX_MOMENT_ORDER:
        raise ParameterError.out_of_range("k", k, 0, MAX_MOMENT_ORDER)
    z = validate_hypergeometric_argument(z)
    k = int(k)
    if z < SERIES_CUTOFF:
        n = np.arange(SERIES_TERMS)
        return float(np.sum((k + 1.0) / (k + 1.0 + n) * z ** n))
    partial = sum(z ** m / m for m in range(1, k + 1))
    return float((k + 1) * z ** -(k + 1) * (-math.log1p(-z) - partial))


def moment(model: RateDistributionModel, k: int) -> float:
    """k-th raw moment E[dᵏ], 1 ≤ k ≤ 8."""
    k = validate_moment_order(k)
    n = model.n
    f = hyp2f1_special(k, (n - 1.0) / n)
    return (model.a_tilde * (n - 1)) ** k * (1.0 - k * f / (n * (k + 1.0)))


def moment_by_quadrature(model: RateDistributionModel, k: int) -> float:
    """
    ∫ dᵏ f(d) dd by adaptive quadrature (k = 0 gives the total mass).

    Uses u = ÃN − d and s = ln u, which turns the (ÃN − d)⁻² pole into a
    smooth integrand on [ln Ã, ln ÃN].
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= MAX_MOMENT_ORDER:
        raise ParameterError.out_of_range("k", k, 0, MAX_MOMENT_ORDER)
    pole, n = model.pole, model.n

    def integrand(s: float) -> float:
        u = math.exp(s)
        return (pole - u) ** k * pole / ((n - 1) * u)

    value, _ = integrate.quad(
        integrand,
        math.log(model.a_tilde),
        math.log(pole),
        epsabs=0.0,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
    )
    return float(value)


def cumulants(model: RateDistributionModel) -> tuple[float, float, float, float]:
    """First four cumulants in closed form."""
    n = float(model.n)
    a = model.a_tilde
    log_n = math.log(n)
    r = log_n / (n - 1.0)  # ln N/(N − 1)
    k1 = a * n * (1.0 - r)
    k2 = a ** 2 * n * (1.0 - n * r ** 2)
    k3 = -(a ** 3 * n / 2.0) * ((n + 1.0) - 6.0 * n * r + 4.0 * n ** 2 * r ** 3)
    k4 = (a ** 4 * n / 3.0) * (
        1.0
        + n * (n - 8.0)
        - 6.0 * n * (n + 1.0) * r
        + 36.0 * n ** 2 * r ** 2
        - 18.0 * n ** 3 * r ** 4
    )
    return k1, k2, k3, k4


def cumulants_from_moments(m1: float, m2: float, m3: float, m4: float) -> tuple[float, float, float, float]:
    """Cumulants from the first four raw moments."""
    k2 = m2 - m1 ** 2
    k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 ** 3
    k4 = m4 - 4.0 * m3 * m1 - 3.0 * m2 ** 2 + 12.0 * m2 * m1 ** 2 - 6.0 * m1 ** 4
    return m1, k2, k3, k4


@dataclass(frozen=True)
class SummaryStatistics:
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance": self.variance,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
        }


def summary_statistics(model: RateDistributionModel) -> SummaryStatistics:
    """Mean, variance, skewness and excess kurtosis from the cumulants."""
    k1, k2, k3, k4 = cumulants(model)
    return SummaryStatistics(
        mean=k1,
        variance=k2,
        skewness=k3 / k2 ** 1.5,
        excess_kurtosis=k4 / k2 ** 2,
    )
