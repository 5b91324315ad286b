"""Connectivity graphs of single pairs and pairs-of-pairs as (regularized)
Laplacians over the full node set.

Pair ``i`` owns transmitter node ``2i`` and receiver node ``2i + 1``, so every
matrix here is ``2K x 2K`` whatever pairs it describes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .topology import Deployment, distance_matrix

DEFAULT_GAMMA = 0.5


@dataclass(frozen=True)
class NodeIndexing:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")

    @property
    def n(self) -> int:
        return 2 * self.k

    def check_pair(self, i: int) -> int:
        if not 0 <= i < self.k:
            raise IndexError(f"pair index {i} out of range for k={self.k}")
        return int(i)

    def tx(self, i: int) -> int:
        return 2 * self.check_pair(i)

    def rx(self, i: int) -> int:
        return 2 * self.check_pair(i) + 1


class Edge(NamedTuple):
    src: int
    dst: int
    weight: float


def _edge(src, dst, weight) -> Edge:
    if src == dst:
        raise ValueError(f"self-loop on node {src}")
    if not weight > 0:
        raise ValueError(f"edge weight must be positive, got {weight}")
    return Edge(int(src), int(dst), float(weight))


def single_pair_edges(i: int, indexing: NodeIndexing) -> list[Edge]:
    """The lone desired link of pair ``i``, unit weight."""
    return [_edge(indexing.tx(i), indexing.rx(i), 1.0)]


def pair_pair_edges(i: int, j: int, dep: Deployment, dist: np.ndarray | None = None) -> list[Edge]:
    """Two desired links plus the two cross links between pairs ``i`` and ``j``.

    Order is ``[tx_i->rx_i, tx_j->rx_j, tx_i->rx_j, tx_j->rx_i]``; the cross
    links are weighted by their length in meters.
    """
    idx = NodeIndexing(dep.k)
    idx.check_pair(i)
    idx.check_pair(j)
    if i == j:
        raise ValueError("a pair cannot be paired with itself")
    if dist is None:
        dist = distance_matrix(dep)
    return [
        _edge(idx.tx(i), idx.rx(i), 1.0),
        _edge(idx.tx(j), idx.rx(j), 1.0),
        _edge(idx.tx(i), idx.rx(j), dist[j, i]),
        _edge(idx.tx(j), idx.rx(i), dist[i, j]),
    ]


def incidence_matrix(edges, n: int) -> np.ndarray:
    """``n x m`` matrix with ``+1`` at each edge's source and ``-1`` at its sink."""
    A = np.zeros((n, len(edges)))
    for col, e in enumerate(edges):
        if not (0 <= e[0] < n and 0 <= e[1] < n):
            raise IndexError(f"edge {tuple(e[:2])} references a node outside 0..{n - 1}")
        A[e[0], col] = 1.0
        A[e[1], col] = -1.0
    return A


def weight_matrix(edges) -> np.ndarray:
    return np.diag([float(e[2]) for e in edges])


def laplacian(A: np.ndarray, W: np.ndarray) -> np.ndarray:
    """``A W A^T``."""
    A = np.asarray(A, dtype=float)
    W = np.asarray(W, dtype=float)
    if A.ndim != 2 or W.shape != (A.shape[1], A.shape[1]):
        raise ValueError(f"incidence {A.shape} and weights {W.shape} are not conformable")
    if np.any(W - np.diag(np.diag(W))):
        raise ValueError("weight matrix must be diagonal")
    if np.any(np.diag(W) <= 0):
        raise ValueError("edge weights must be positive")
    L = (A * np.diag(W)) @ A.T
    # exact symmetry regardless of summation order
    return 0.5 * (L + L.T)


def regularize(L: np.ndarray, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Shift a PSD Laplacian by ``gamma * I`` into the SPD cone."""
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {L.shape}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    scale = max(1.0, np.abs(L).max(initial=0.0))
    if np.abs(L - L.T).max(initial=0.0) > 1e-12 * scale:
        raise ValueError("Laplacian is not symmetric")
    return L + gamma * np.eye(L.shape[0])


def pair_spd(i: int, k: int, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Regularized Laplacian of pair ``i`` alone."""
    idx = NodeIndexing(k)
    edges = single_pair_edges(i, idx)
    return regularize(laplacian(incidence_matrix(edges, idx.n), weight_matrix(edges)), gamma)


def pair_pair_spd(i: int, j: int, dep: Deployment, gamma: float = DEFAULT_GAMMA, dist=None) -> np.ndarray:
    """Regularized Laplacian of the four-edge graph joining pairs ``i`` and ``j``."""
    edges = pair_pair_edges(i, j, dep, dist)
    return regularize(laplacian(incidence_matrix(edges, 2 * dep.k), weight_matrix(edges)), gamma)


def format_matrix(M: np.ndarray) -> str:
    """Row-major plain-text dump for debugging."""
    return "\n".join(" ".join(f"{v:.6g}" for v in row) for row in np.atleast_2d(M)) + "\n"
