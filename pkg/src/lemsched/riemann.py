"""Spectral numerics on the SPD cone: eigendecomposition, matrix log/exp and
the (squared) Log-Euclidean distance.

All functions accept stacks of matrices with shape ``(..., n, n)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SYMMETRY_RTOL = 1e-12
PD_RTOL = 1e-10


class NotPositiveDefiniteError(ValueError):
    pass


class SymEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return _from_spectrum(self.eigenvalues, self.eigenvectors)


def _from_spectrum(w, Q):
    return (Q * w[..., None, :]) @ np.swapaxes(Q, -1, -2)


def _check_symmetric(S) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if S.ndim < 2 or S.shape[-1] != S.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {S.shape}")
    scale = np.maximum(np.abs(S).max(axis=(-2, -1), initial=0.0), np.finfo(float).tiny)
    asym = np.abs(S - np.swapaxes(S, -1, -2)).max(axis=(-2, -1), initial=0.0)
    if np.any(asym > SYMMETRY_RTOL * scale):
        raise ValueError("matrix is not symmetric")
    return S


def sym_eig(S) -> SymEig:
    """Eigenvalues in ascending order with orthonormal eigenvector columns."""
    S = _check_symmetric(S)
    try:
        w, Q = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"eigendecomposition failed to converge: {exc}") from exc
    return SymEig(w, Q)


def _check_pd(w: np.ndarray) -> None:
    top = w[..., -1]
    if np.any(w[..., 0] <= 0) or np.any(w[..., 0] < PD_RTOL * top):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (smallest eigenvalue {np.min(w[..., 0]):.3g})"
        )


def logm(S) -> np.ndarray:
    """Principal logarithm of an SPD matrix."""
    w, Q = sym_eig(S)
    _check_pd(w)
    L = _from_spectrum(np.log(w), Q)
    return 0.5 * (L + np.swapaxes(L, -1, -2))


def expm(X) -> np.ndarray:
    """Exponential of a symmetric matrix (inverse of :func:`logm`)."""
    w, Q = sym_eig(X)
    E = _from_spectrum(np.exp(w), Q)
    return 0.5 * (E + np.swapaxes(E, -1, -2))


def lem_distance(S1, S2):
    """Squared Frobenius norm of ``log(S1) - log(S2)``.

    The square is kept on purpose: this is the quantity thresholded by the
    scheduler. Take the root yourself if a true metric is needed.
    """
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    if S1.shape[-2:] != S2.shape[-2:]:
        raise ValueError(f"dimension mismatch: {S1.shape[-2:]} vs {S2.shape[-2:]}")
    return lem_distance_logs(logm(S1), logm(S2))


def lem_distance_logs(log1, log2):
    """Same as :func:`lem_distance` for matrices already in the log domain."""
    diff = np.asarray(log1) - np.asarray(log2)
    return np.sum(diff * diff, axis=(-2, -1))
