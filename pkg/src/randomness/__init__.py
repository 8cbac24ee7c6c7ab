"""
Randomness Module

Reproducible random streams keyed on (master seed, stream index).
"""

from .streams import SeedSpec, gaussian, resolve_seed, substream

__all__ = [
    "SeedSpec",
    "gaussian",
    "resolve_seed",
    "substream",
]
