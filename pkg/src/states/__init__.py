"""
States Module

Density matrices: pure states, the maximally mixed state and the
one-parameter purity family between them.
"""

from .density import (
    DensityMatrix,
    maximally_mixed,
    mixing_parameter,
    pure_state,
    purity,
    purity_family,
    random_purity_family_state,
)

__all__ = [
    "DensityMatrix",
    "maximally_mixed",
    "mixing_parameter",
    "pure_state",
    "purity",
    "purity_family",
    "random_purity_family_state",
]
