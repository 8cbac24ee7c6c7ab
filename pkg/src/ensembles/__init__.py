"""
Ensembles Module

Provides:
- Samplers for GOE, GUE, GSE and the Ginibre ensembles GinOE, GinUE, GinSE
- Two-ensemble mixtures
- Haar-random unitaries and pure states
- Spectral diagnostics and exact second moments
"""

from .diagnostics import (
    SpectralReport,
    TraceSplit,
    radial_cdf,
    schur_trace_split,
    semicircle_cdf,
    spectral_density_check,
)
from .haar import (
    haar_fourth_moment,
    haar_second_moment,
    sample_haar_pure_state,
    sample_haar_unitary,
)
from .kinds import AnyEnsembleSpec, EnsembleKind, EnsembleSpec, Family, MixedEnsembleSpec
from .moments import GinibreTraceMoments, SecondMoments, ginibre_trace_moments, second_moments
from .samplers import complex_normal, sample, sample_batch, sample_mixed

__all__ = [
    "AnyEnsembleSpec",
    "EnsembleKind",
    "EnsembleSpec",
    "Family",
    "MixedEnsembleSpec",
    "SpectralReport",
    "TraceSplit",
    "SecondMoments",
    "GinibreTraceMoments",
    "complex_normal",
    "sample",
    "sample_batch",
    "sample_mixed",
    "sample_haar_unitary",
    "sample_haar_pure_state",
    "haar_second_moment",
    "haar_fourth_moment",
    "spectral_density_check",
    "schur_trace_split",
    "semicircle_cdf",
    "radial_cdf",
    "second_moments",
    "ginibre_trace_moments",
]
