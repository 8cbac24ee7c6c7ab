"""
Decoherence Module

Provides:
- The decoherence rate of one realization and its short-time purity estimate
- Monte Carlo ensemble averages with reproducible substreams
- Closed-form averaged rates and rate limits
"""

from .analytic import (
    a_coefficient,
    analytic_average_rate,
    analytic_rate_limit,
    calibrated_a,
    calibrated_rate_limit,
    rate_from_second_moments,
    rate_limit_from_second_moments,
)
from .monte_carlo import (
    P0Mode,
    P0Policy,
    RateEstimate,
    mc_average_rate,
    mc_average_rate_for_state,
)
from .rates import batch_rates, purity_slope_rate, rate, rate_shift_invariance_check

__all__ = [
    "P0Mode",
    "P0Policy",
    "RateEstimate",
    "rate",
    "batch_rates",
    "rate_shift_invariance_check",
    "purity_slope_rate",
    "mc_average_rate",
    "mc_average_rate_for_state",
    "analytic_rate_limit",
    "analytic_average_rate",
    "a_coefficient",
    "rate_from_second_moments",
    "rate_limit_from_second_moments",
    "calibrated_rate_limit",
    "calibrated_a",
]
