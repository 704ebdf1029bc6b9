"""Rank, kernel and orthonormal-basis helpers with fixed thresholds.

Thresholds are relative to ``max(1, sigma_max)`` so that an operator whose
entries are pure rounding noise has rank zero.
"""

import numpy as np
import scipy.linalg

RANK_RTOL = 1e-9


def _threshold(s, rtol):
    smax = s[0] if len(s) else 0.0
    return rtol * max(1.0, smax)


def rank(A, rtol: float = RANK_RTOL) -> int:
    A = np.atleast_2d(A)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > _threshold(s, rtol)))


def null_space(A, rtol: float = RANK_RTOL, ncols: int | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel of ``A``."""
    A = np.atleast_2d(A)
    if A.shape[0] == 0:
        n = A.shape[1] if ncols is None else ncols
        return canonical_basis(np.eye(n, dtype=A.dtype))
    _, s, vh = np.linalg.svd(A)
    r = int(np.sum(s > _threshold(s, rtol)))
    return canonical_basis(vh[r:].conj().T)


def canonical_basis(N: np.ndarray) -> np.ndarray:
    """Reproducible orthonormal basis for the column span of ``N``.

    The basis depends only on the orthogonal projector onto the span: a
    column-pivoted QR of the projector, with each column's largest entry
    made real and positive.
    """
    n, k = N.shape
    if k == 0:
        return np.zeros((n, 0), dtype=N.dtype)
    P = N @ N.conj().T
    Q, _, _ = scipy.linalg.qr(P, pivoting=True)
    B = Q[:, :k]
    for j in range(k):
        i = int(np.argmax(np.abs(B[:, j]) - 1e-12 * np.arange(n)))
        phase = B[i, j] / abs(B[i, j])
        B[:, j] = B[:, j] / phase
    if np.isrealobj(N):
        B = B.real
    return B


def orthogonal_complement(B: np.ndarray) -> np.ndarray:
    return null_space(B.conj().T, ncols=B.shape[0])


def intersect(B1: np.ndarray, B2: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the intersection of two column spans."""
    n = B1.shape[0]
    P1 = B1 @ B1.conj().T
    P2 = B2 @ B2.conj().T
    I = np.eye(n)
    return null_space(np.vstack([I - P1, I - P2]), ncols=n)


def op_norm(A) -> float:
    A = np.atleast_2d(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))
