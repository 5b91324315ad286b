"""Input coercion shared by the estimators and the harness."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .channel import ChannelRealization
from .topology import Deployment


def check_layout(X) -> Deployment:
    """Accept a :class:`Deployment` or a ``(k, 4)`` array of
    ``tx_x, tx_y, rx_x, rx_y`` rows."""
    if isinstance(X, Deployment):
        return X
    layout = check_array(X, dtype=np.float64, ensure_min_samples=1)
    if layout.shape[1] != 4:
        raise ValueError(f"layout must have 4 columns (tx_x, tx_y, rx_x, rx_y), got {layout.shape[1]}")
    return Deployment.from_array(layout)


def check_gains(gains, k: int | None = None) -> ChannelRealization:
    if gains is None:
        raise ValueError("this scheduler needs channel gains (CSI)")
    if not isinstance(gains, ChannelRealization):
        gains = ChannelRealization(check_array(gains, dtype=np.float64))
    if k is not None and gains.k != k:
        raise ValueError(f"gain matrix is {gains.k}x{gains.k} but the layout has {k} pairs")
    return gains
