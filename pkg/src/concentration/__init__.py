"""
Concentration Module

Provides:
- The closed-form CDF, density, moments and cumulants of the averaged rate
  under a uniform initial purity
- The per-state sampling experiment and its histogram summary
"""

from .distribution import (
    RateDistributionModel,
    SummaryStatistics,
    cdf,
    cumulants,
    cumulants_from_moments,
    hyp2f1_special,
    moment,
    moment_by_quadrature,
    pdf,
    quantile,
    summary_statistics,
)
from .sampling import (
    RateHistogram,
    ks_against_model,
    over_bound_fraction,
    rate_histogram,
    sample_rate_distribution,
)

__all__ = [
    "RateDistributionModel",
    "SummaryStatistics",
    "RateHistogram",
    "cdf",
    "pdf",
    "quantile",
    "moment",
    "moment_by_quadrature",
    "hyp2f1_special",
    "cumulants",
    "cumulants_from_moments",
    "summary_statistics",
    "sample_rate_distribution",
    "rate_histogram",
    "ks_against_model",
    "over_bound_fraction",
]
