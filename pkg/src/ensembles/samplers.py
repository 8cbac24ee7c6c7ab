"""
Random-matrix samplers.

Calibration: every off-diagonal complex matrix entry has E|L_mn|² = σ², so
E tr(L†L) = σ²N² for all six kinds. The symplectic kinds use the complex
representation [[A, B], [−B̄, Ā]] of an (N/2)×(N/2) quaternion matrix.
"""

import numpy as np

from ..numerics import ComplexMatrix
from .kinds import AnyEnsembleSpec, EnsembleKind, EnsembleSpec, MixedEnsembleSpec

SQRT_HALF = np.sqrt(0.5)


def complex_normal(rng: np.random.Generator, size: tuple, sigma: float) -> np.ndarray:
    """Complex Gaussian entries with E|z|² = σ²."""
    parts = rng.normal(scale=sigma * SQRT_HALF, size=(2, *size))
    return parts[0] + 1j * parts[1]


def _hermitian_batch(
    rng: np.random.Generator,
    count: int,
    n: int,
    sigma: float,
    complex_entries: bool,
    diag_sigma: float,
) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    out = np.zeros((count, n, n), dtype=np.complex128)
    if complex_entries:
        upper = complex_normal(rng, (count, iu[0].size), sigma)
    else:
        upper = rng.normal(scale=sigma, size=(count, iu[0].size))
    out[:, iu[0], iu[1]] = upper
    out += np.conj(np.swapaxes(out, 1, 2))
    idx = np.arange(n)
    out[:, idx, idx] = rng.normal(scale=diag_sigma, size=(count, n))
    return out


def _quaternion_blocks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex representation [[A, B], [−conj(B), conj(A)]] for a batch."""
    top = np.concatenate((a, b), axis=2)
    bottom = np.concatenate((-np.conj(b), np.conj(a)), axis=2)
    return np.concatenate((top, bottom), axis=1)


def _gse_batch(rng: np.random.Generator, count: int, n: int, sigma: float) -> np.ndarray:
    h = n // 2
    # Quaternion-real diagonal appears twice in the complex representation;
    # variance 2σ² keeps E tr(L†L) = σ²N²
    a = _hermitian_batch(rng, count, h, sigma, complex_entries=True, diag_sigma=sigma * np.sqrt(2.0))
    iu = np.triu_indices(h, 1)
    b = np.zeros((count, h, h), dtype=np.complex128)
    b[:, iu[0], iu[1]] = complex_normal(rng, (count, iu[0].size), sigma)
    b -= np.swapaxes(b, 1, 2)
    return _quaternion_blocks(a, b)


def _ginse_batch(rng: np.random.Generator, count: int, n: int, sigma: float) -> np.ndarray:
    h = n // 2
    a = complex_normal(rng, (count, h, h), sigma)
    b = complex_normal(rng, (count, h, h), sigma)
    return _quaternion_blocks(a, b)


def _ensemble_batch(spec: EnsembleSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    n, sigma = spec.dim, spec.sigma
    kind = spec.kind
    if kind is EnsembleKind.GOE:
        return _hermitian_batch(rng, count, n, sigma, complex_entries=False, diag_sigma=sigma)
    if kind is EnsembleKind.GUE:
        return _hermitian_batch(rng, count, n, sigma, complex_entries=True, diag_sigma=sigma)
    if kind is EnsembleKind.GSE:
        return _gse_batch(rng, count, n, sigma)
    if kind is EnsembleKind.GINOE:
        return rng.normal(scale=sigma, size=(count, n, n)).astype(np.complex128)
    if kind is EnsembleKind.GINUE:
        return complex_normal(rng, (count, n, n), sigma)
    return _ginse_batch(rng, count, n, sigma)


def sample_batch(spec: AnyEnsembleSpec, stream: np.random.Generator, count: int) -> np.ndarray:
    """
    Draw count independent matrices as an array of shape (count, N, N).

    Mixed specs draw the two components from two child streams spawned off
    the given one.
    """
    if isinstance(spec, MixedEnsembleSpec):
        first_rng, second_rng = stream.spawn(2)
        return (
            spec.a1 * _ensemble_batch(spec.first, first_rng, count)
            + spec.a2 * _ensemble_batch(spec.second, second_rng, count)
        )
    return _ensemble_batch(spec, stream, count)


def sample(spec: EnsembleSpec, stream: np.random.Generator) -> ComplexMatrix:
    """
    Draw one N×N matrix from the ensemble.

    GOE is real symmetric, GUE Hermitian, GSE Hermitian and Kramers
    degenerate; GinOE is real, GinUE complex, GinSE has eigenvalues in
    conjugate pairs.
    """
    return _ensemble_batch(spec, stream, 1)[0]


def sample_mixed(spec: MixedEnsembleSpec, stream: np.random.Generator) -> ComplexMatrix:
    """Draw a1·L¹ + a2·L² using independent child streams for L¹ and L²."""
    return sample_batch(spec, stream, 1)[0]
