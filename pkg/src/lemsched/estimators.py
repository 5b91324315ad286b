"""scikit-learn style wrappers around the schedulers.

Scheduling is transductive, like clustering: ``fit`` takes one network
layout (plus channel gains for the CSI-based schemes) and exposes the
decision as ``x_`` / ``support_``; ``fit_predict`` returns ``x_`` directly.
``score`` is the achieved sum rate in bit/s, so higher is better.

>>> from lemsched import LEMScheduler, gen_deployment
>>> LEMScheduler(r=0.8).fit_predict(gen_deployment(5, seed=1)).shape
(5,)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import scheduler as sch
from .channel import ChannelParams, sum_rate
from .validation import check_gains, check_layout


class _SchedulerMixin:
    _requires_csi = True

    def _fit(self, dep, gains):
        raise NotImplementedError

    def fit(self, X, gains=None):
        """Schedule the links of layout ``X``.

        ``gains`` is a ``k x k`` linear power-gain matrix (receiver rows,
        transmitter columns) or a :class:`ChannelRealization`.
        """
        dep = check_layout(X)
        g = check_gains(gains, dep.k) if (self._requires_csi or gains is not None) else None
        self.schedule_ = self._fit(dep, g)
        self.x_ = np.asarray(self.schedule_.x)
        self.support_ = np.array(self.schedule_.z, dtype=int)
        self.n_links_ = dep.k
        return self

    def fit_predict(self, X, gains=None):
        return self.fit(X, gains).x_

    @property
    def activation_ratio_(self) -> float:
        check_is_fitted(self, "schedule_")
        return sch.activation_ratio(self.schedule_)

    def score(self, X, gains, channel: ChannelParams | None = None) -> float:
        """Sum rate of the fitted schedule on ``gains``."""
        check_is_fitted(self, "schedule_")
        p = channel or getattr(self, "channel", None) or ChannelParams()
        g = check_gains(gains, self.n_links_)
        return float(sum_rate(self.x_, g, p.p_tx_watts, p.noise_watts, p.bandwidth))


class LEMScheduler(_SchedulerMixin, BaseEstimator):
    """Log-Euclidean sequential link selection; uses positions only.

    Parameters
    ----------
    gamma : float, default=0.5
        Diagonal shift that makes each Laplacian positive definite.
    r : float, default=0.8
        Threshold ratio in (0, 1).
    metric : {"frobenius", "squared"}, default="frobenius"
        Scale of the threshold test.
    method : {"block", "dense"}, default="block"
        Evaluate distances on 4x4 blocks or on full ``2K x 2K`` matrices.

    Attributes
    ----------
    threshold_ : float
        Adaptive threshold for this layout (NaN for a single pair).
    order_ : ndarray
        Priority order, shortest link first.
    """

    _requires_csi = False

    def __init__(self, gamma=0.5, r=0.8, metric="frobenius", method="block"):
        self.gamma = gamma
        self.r = r
        self.metric = metric
        self.method = method

    def _fit(self, dep, gains):
        s = sch.schedule_lem(dep, sch.LemConfig(self.gamma, self.r, self.metric), method=self.method)
        self.threshold_ = s.trace.threshold
        self.order_ = np.array(s.trace.order)
        return s


class GreedyScheduler(_SchedulerMixin, BaseEstimator):
    def __init__(self, channel=None):
        self.channel = channel

    def _fit(self, dep, gains):
        return sch.schedule_greedy(dep, gains, self.channel or ChannelParams())


class StrongestLinkScheduler(_SchedulerMixin, BaseEstimator):
    def __init__(self, channel=None):
        self.channel = channel

    def _fit(self, dep, gains):
        return sch.schedule_strongest(dep, gains, self.channel or ChannelParams())


class RandomScheduler(_SchedulerMixin, BaseEstimator):
    _requires_csi = False

    def __init__(self, activation_prob=0.5, random_state=0):
        self.activation_prob = activation_prob
        self.random_state = random_state

    def _fit(self, dep, gains):
        return sch.schedule_random(dep.k, self.activation_prob, self.random_state)


class AllActiveScheduler(_SchedulerMixin, BaseEstimator):
    _requires_csi = False

    def _fit(self, dep, gains):
        return sch.schedule_all(dep.k)


class ExhaustiveScheduler(_SchedulerMixin, BaseEstimator):
    """Brute-force sum-rate maximizer; the upper bound for small ``k``."""

    def __init__(self, channel=None, k_max_guard=sch.DEFAULT_ORACLE_GUARD):
        self.channel = channel
        self.k_max_guard = k_max_guard

    def _fit(self, dep, gains):
        return sch.schedule_exhaustive(gains, self.channel or ChannelParams(), self.k_max_guard)


ESTIMATORS = {
    "lem": LEMScheduler,
    "greedy": GreedyScheduler,
    "strongest": StrongestLinkScheduler,
    "random": RandomScheduler,
    "all": AllActiveScheduler,
    "oracle": ExhaustiveScheduler,
}
