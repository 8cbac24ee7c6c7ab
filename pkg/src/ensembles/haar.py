"""
Haar-random unitaries and pure states, with the closed-form Haar moments used
to validate them.
"""

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..numerics import ComplexMatrix, as_matrix
from ..exceptions import DimensionError
from ..validation import validate_dimension
from .samplers import complex_normal


def sample_haar_unitary(n: int, stream: np.random.Generator) -> ComplexMatrix:
    """
    Haar-distributed unitary via QR of a GinUE matrix.

    The diagonal of R is rotated to positive reals (Q ← Q·diag(r/|r|)),
    which makes the QR factorization unique and the law of Q exactly Haar.
    """
    n = validate_dimension(n)
    z = complex_normal(stream, (n, n), 1.0)
    q, r = scipy.linalg.qr(z, check_finite=False)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[np.newaxis, :]


def sample_haar_pure_state(n: int, stream: np.random.Generator) -> np.ndarray:
    """Uniformly random unit vector in C^n."""
    n = validate_dimension(n)
    z = complex_normal(stream, (n,), 1.0)
    return z / np.linalg.norm(z)


def haar_second_moment(a: npt.ArrayLike) -> ComplexMatrix:
    """∫ U A U† dμ(U) = tr(A)/N · I."""
    m = as_matrix(a)
    n = m.shape[0]
    return (np.trace(m) / n) * np.eye(n, dtype=np.complex128)


def haar_fourth_moment(a: npt.ArrayLike, x: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """
    ∫ U A U† X U B U† dμ(U) from the unitary Weingarten calculus.

    Equals [trA·trB·(N·X − trX·I) + tr(AB)·(N·trX·I − X)] / (N(N²−1)),
    which for tr X = 1 is [tr(AB)(N·I − X) − trA·trB·(I − N·X)] / (N(N²−1)).
    Requires N ≥ 2.
    """
    ma, mx, mb = as_matrix(a), as_matrix(x), as_matrix(b)
    n = ma.shape[0]
    if not (ma.shape == mx.shape == mb.shape == (n, n)):
        raise DimensionError.mismatch(ma.shape, mx.shape)
    if n < 2:
        raise DimensionError("shape", "fourth Haar moment needs N >= 2", n)
    eye = np.eye(n, dtype=np.complex128)
    tr_a, tr_b, tr_x = np.trace(ma), np.trace(mb), np.trace(mx)
    tr_ab = np.trace(ma @ mb)
    numerator = tr_a * tr_b * (n * mx - tr_x * eye) + tr_ab * (n * tr_x * eye - mx)
    return numerator / (n * (n * n - 1))
