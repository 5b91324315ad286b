"""Link schedulers: the Log-Euclidean sequential selector and the baselines
it is compared against.

Scheme names used throughout (CLI, CSV): ``lem``, ``greedy``, ``strongest``,
``random``, ``all``, ``oracle``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import graphlap, riemann
from .channel import ChannelParams, ChannelRealization, sum_rate
from .topology import Deployment, distance_matrix, make_rng

SCHEMES = ("lem", "greedy", "strongest", "random", "all", "oracle")
DEFAULT_ORACLE_GUARD = 12


LEM_METRICS = ("frobenius", "squared")


@dataclass(frozen=True)
class LemConfig:
    """Selector settings.

    ``metric`` is the scale the threshold test runs on: ``"frobenius"``
    compares ``||log S12 - log S1||_F`` against ``r`` times its maximum,
    ``"squared"`` compares the squared norm. The two coincide when the
    squared run uses ``r**2``.
    """

    gamma: float = graphlap.DEFAULT_GAMMA
    r: float = 0.8
    metric: str = "frobenius"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not 0 < self.r < 1:
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        if self.metric not in LEM_METRICS:
            raise ValueError(f"metric must be one of {LEM_METRICS}, got {self.metric!r}")

    def scale(self, squared_distance):
        """Map a squared LEM distance onto the scale the threshold uses."""
        return np.sqrt(squared_distance) if self.metric == "frobenius" else squared_distance


@dataclass(frozen=True)
class LemDecision:
    candidate: int
    min_distance: float
    accepted: bool


@dataclass(frozen=True)
class LemTrace:
    """What the LEM selector saw: priority order, threshold and each verdict."""

    order: tuple[int, ...]
    threshold: float
    decisions: tuple[LemDecision, ...] = ()


@dataclass(frozen=True, eq=False)
class Schedule:
    x: np.ndarray
    z: tuple[int, ...]
    scheme: str = ""
    trace: LemTrace | None = field(default=None, repr=False)

    def __post_init__(self):
        x = np.array(self.x, dtype=np.int8)
        z = tuple(int(i) for i in self.z)
        if len(set(z)) != len(z):
            raise ValueError("scheduled set has duplicates")
        if set(np.flatnonzero(x).tolist()) != set(z) or np.any((x != 0) & (x != 1)):
            raise ValueError("activation vector and scheduled set disagree")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @classmethod
    def from_order(cls, k: int, z, scheme: str = "", trace=None) -> "Schedule":
        x = np.zeros(k, dtype=np.int8)
        x[list(z)] = 1
        return cls(x, tuple(z), scheme, trace)

    @classmethod
    def from_mask(cls, mask, scheme: str = "") -> "Schedule":
        mask = np.asarray(mask).astype(bool)
        return cls(mask.astype(np.int8), tuple(np.flatnonzero(mask).tolist()), scheme)

    @property
    def k(self) -> int:
        return self.x.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return self.z == other.z and np.array_equal(self.x, other.x) and self.scheme == other.scheme

    __hash__ = None


def activation_ratio(s: Schedule) -> float:
    return len(s.z) / s.k


# --------------------------------------------------------------------------
# LEM selector


def sort_by_direct_distance(dep: Deployment) -> list[int]:
    """Pairs by ascending link length, ties by index."""
    return np.argsort(dep.direct_distances(), kind="stable").tolist()


def threshold_from_distances(distances, r: float) -> float:
    return float(r * np.max(distances))


def _single_log_block(gamma: float) -> np.ndarray:
    # log of [[1+g, -1], [-1, 1+g]]: eigenvalues g (vector [1,1]) and 2+g (vector [1,-1])
    a, b = np.log(gamma), np.log(2 + gamma)
    return 0.5 * np.array([[a + b, a - b], [a - b, a + b]])


def pair_pair_lem_matrix(dep: Deployment, gamma: float = graphlap.DEFAULT_GAMMA) -> np.ndarray:
    """``D[k1, k2]``: LEM distance between the regularized Laplacian of the
    pair-of-pairs ``{k1, k2}`` and that of ``k1`` alone. Diagonal is NaN.

    Both Laplacians vanish outside the four nodes of ``k1`` and ``k2``, where
    each logarithm is ``log(gamma) * I``; the distance is therefore computed
    exactly on the 4x4 block ``[tx_k1, rx_k1, tx_k2, rx_k2]``.
    """
    k = dep.k
    D = np.full((k, k), np.nan)
    if k == 1:
        return D
    dist = distance_matrix(dep)
    i, j = np.nonzero(~np.eye(k, dtype=bool))
    w_ij = dist[j, i]  # tx_i -> rx_j
    w_ji = dist[i, j]  # tx_j -> rx_i
    # block node order: 0 tx_i, 1 rx_i, 2 tx_j, 3 rx_j
    L = np.zeros((i.size, 4, 4))
    for (a, b), w in (((0, 1), 1.0), ((2, 3), 1.0), ((0, 3), w_ij), ((2, 1), w_ji)):
        L[:, a, a] += w
        L[:, b, b] += w
        L[:, a, b] -= w
        L[:, b, a] -= w
    S = L + gamma * np.eye(4)
    ref = np.zeros((4, 4))
    ref[:2, :2] = _single_log_block(gamma)
    ref[2, 2] = ref[3, 3] = np.log(gamma)
    D[i, j] = riemann.lem_distance_logs(riemann.logm(S), ref)
    return D


class _DenseLem:
    """Full ``2K x 2K`` evaluation, computing logs on demand and caching the
    single-pair ones, exactly as the sequential algorithm is written."""

    def __init__(self, dep: Deployment, gamma: float):
        self.dep = dep
        self.gamma = gamma
        self.dist = distance_matrix(dep)
        self._single_logs: dict[int, np.ndarray] = {}

    def single_log(self, k1: int) -> np.ndarray:
        if k1 not in self._single_logs:
            self._single_logs[k1] = riemann.logm(graphlap.pair_spd(k1, self.dep.k, self.gamma))
        return self._single_logs[k1]

    def __call__(self, k1: int, k2: int) -> float:
        S = graphlap.pair_pair_spd(k1, k2, self.dep, self.gamma, self.dist)
        return float(riemann.lem_distance_logs(riemann.logm(S), self.single_log(k1)))


def compute_threshold(dep: Deployment, first: int, cfg: LemConfig = LemConfig(), method: str = "block") -> float:
    """``r`` times the largest LEM distance from pair ``first`` to any other
    pair, on the scale given by ``cfg.metric``."""
    if dep.k < 2:
        raise ValueError("threshold needs at least two pairs")
    others = [k2 for k2 in range(dep.k) if k2 != first]
    if method == "dense":
        lem = _DenseLem(dep, cfg.gamma)
        distances = [lem(first, k2) for k2 in others]
    else:
        distances = pair_pair_lem_matrix(dep, cfg.gamma)[first, others]
    return threshold_from_distances(cfg.scale(np.asarray(distances)), cfg.r)


def select_links(order, distance, r: float) -> LemTrace:
    """Sequential admission over a priority ``order``.

    ``distance(k1, k2)`` is the LEM distance from scheduled pair ``k1`` to
    candidate ``k2``. The first pair is always admitted; the threshold is
    ``r`` times its largest distance to any other pair, and a later candidate
    is admitted iff its smallest distance to every admitted pair reaches it.
    """
    order = tuple(int(k) for k in order)
    first, rest = order[0], order[1:]
    if not rest:
        return LemTrace(order, float("nan"))
    threshold = threshold_from_distances([distance(first, k2) for k2 in rest], r)
    scheduled = [first]
    decisions = []
    for k2 in rest:
        d_min = min(distance(k1, k2) for k1 in scheduled)
        ok = bool(d_min >= threshold)
        decisions.append(LemDecision(k2, float(d_min), ok))
        if ok:
            scheduled.append(k2)
    return LemTrace(order, threshold, tuple(decisions))


def _trace_schedule(k: int, trace: LemTrace) -> Schedule:
    z = [trace.order[0]] + [d.candidate for d in trace.decisions if d.accepted]
    return Schedule.from_order(k, z, "lem", trace)


def schedule_lem(dep: Deployment, cfg: LemConfig = LemConfig(), method: str = "block") -> Schedule:
    """CSI-free schedule from node positions alone.

    ``method="block"`` precomputes every pairwise distance on 4x4 blocks;
    ``method="dense"`` evaluates the full ``2K x 2K`` matrices lazily. Both
    give the same schedule.
    """
    order = sort_by_direct_distance(dep)
    if method == "block":
        D = cfg.scale(pair_pair_lem_matrix(dep, cfg.gamma))
        distance = lambda k1, k2: D[k1, k2]  # noqa: E731
    elif method == "dense":
        dense = _DenseLem(dep, cfg.gamma)
        distance = lambda k1, k2: cfg.scale(dense(k1, k2))  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}; use 'block' or 'dense'")
    return _trace_schedule(dep.k, select_links(order, distance, cfg.r))


def schedule_lem_from_matrix(D: np.ndarray, order, cfg: LemConfig = LemConfig()) -> Schedule:
    """Re-run the selection on a precomputed :func:`pair_pair_lem_matrix`,
    e.g. to sweep ``r`` without recomputing any logarithm."""
    scaled = cfg.scale(D)
    return _trace_schedule(D.shape[0], select_links(order, lambda k1, k2: scaled[k1, k2], cfg.r))


# --------------------------------------------------------------------------
# baselines


def _gain(g) -> np.ndarray:
    return g.gain if isinstance(g, ChannelRealization) else np.asarray(g, dtype=float)


def _rate(x, g, params: ChannelParams) -> float:
    return float(sum_rate(x, g, params.p_tx_watts, params.noise_watts, params.bandwidth))


def schedule_greedy(dep: Deployment | None, g, params: ChannelParams = ChannelParams()) -> Schedule:
    """Visit links by decreasing direct SNR; keep each one that does not lower
    the total sum rate."""
    gain = _gain(g)
    k = gain.shape[0]
    order = np.argsort(-np.diag(gain), kind="stable")
    x = np.zeros(k)
    z = []
    best = 0.0
    for i in order:
        x[i] = 1.0
        rate = _rate(x, gain, params)
        if rate >= best:
            best = rate
            z.append(int(i))
        else:
            x[i] = 0.0
    assert best == _rate(x, gain, params)
    return Schedule.from_order(k, z, "greedy")


def schedule_strongest(dep: Deployment | None, g, params: ChannelParams = ChannelParams()) -> Schedule:
    gain = _gain(g)
    snr = params.p_tx_watts * np.diag(gain) / params.noise_watts
    return Schedule.from_order(gain.shape[0], [int(np.argmax(snr))], "strongest")


def schedule_random(k: int, activation_prob: float = 0.5, seed: int = 0) -> Schedule:
    if not 0 <= activation_prob <= 1:
        raise ValueError(f"activation_prob must lie in [0, 1], got {activation_prob}")
    mask = make_rng(seed).random(k) < activation_prob
    return Schedule.from_mask(mask, "random")


def schedule_all(k: int) -> Schedule:
    return Schedule.from_mask(np.ones(k, dtype=bool), "all")


def schedule_exhaustive(
    g, params: ChannelParams = ChannelParams(), k_max_guard: int = DEFAULT_ORACLE_GUARD
) -> Schedule:
    """Best of all ``2**K`` activation vectors.

    Ties go to the smallest active set, then the lexicographically smallest
    index tuple. Near-ties in the batched evaluation are re-scored one vector
    at a time so the winner is exact under :func:`sum_rate` itself.
    """
    gain = _gain(g)
    k = gain.shape[0]
    if k > k_max_guard:
        raise ValueError(f"exhaustive search over K={k} links exceeds the guard of {k_max_guard}")
    masks = np.array(list(itertools.product((0.0, 1.0), repeat=k)))
    rates = sum_rate(masks, gain, params.p_tx_watts, params.noise_watts, params.bandwidth)
    top = rates.max()
    near = np.flatnonzero(rates >= top - 1e-9 * abs(top))

    def key(m):
        idx = tuple(np.flatnonzero(m).tolist())
        return (-_rate(m, gain, params), len(idx), idx)

    winner = min((masks[i] for i in near), key=key)
    return Schedule.from_mask(winner, "oracle")
