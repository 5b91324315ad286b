"""Channel model and rate evaluation.

Path loss is the ITU-R P.1411 line-of-sight median curve with a two-slope
breakpoint; fast fading is Rayleigh (unit-mean exponential power).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .topology import Deployment, distance_matrix, make_rng

SPEED_OF_LIGHT = 3e8


@dataclass(frozen=True)
class ChannelParams:
    p_tx: float = 40.0  # dBm per active link
    fc: float = 2.4e9  # Hz
    h_ant: float = 1.5  # m, both ends
    g_ant: float = 2.5  # dB per antenna
    n0: float = -169.0  # dBm/Hz
    bandwidth: float = 5e6  # Hz

    def __post_init__(self):
        for name in ("fc", "h_ant", "bandwidth"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        for f in fields(self):
            if not np.isfinite(getattr(self, f.name)):
                raise ValueError(f"{f.name} must be finite")

    @property
    def p_tx_watts(self) -> float:
        return dbm_to_watts(self.p_tx)

    @property
    def noise_watts(self) -> float:
        return noise_power_watts(self.n0, self.bandwidth)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """``gain[i, j]``: linear power gain from transmitter ``j`` to receiver ``i``."""

    gain: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        g = np.array(self.gain, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"gain must be a square matrix, got shape {g.shape}")
        if not np.all(np.isfinite(g)) or np.any(g < 0):
            raise ValueError("gains must be finite and nonnegative")
        g.setflags(write=False)
        object.__setattr__(self, "gain", g)

    @property
    def k(self) -> int:
        return self.gain.shape[0]


def db_to_linear(db):
    return np.power(10.0, np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def dbm_to_watts(dbm):
    return db_to_linear(np.asarray(dbm, dtype=float) - 30.0)


def itu1411_pathloss_db(d, fc: float = 2.4e9, h_tx: float = 1.5, h_rx: float = 1.5):
    """Median LOS path loss in dB; 20 dB/decade up to the breakpoint, 40 after."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distances must be positive")
    wavelength = SPEED_OF_LIGHT / fc
    r_bp = 4 * h_tx * h_rx / wavelength
    l_bp = abs(20 * np.log10(wavelength**2 / (8 * np.pi * h_tx * h_rx)))
    slope = np.where(d <= r_bp, 20.0, 40.0)
    return l_bp + 6 + slope * np.log10(d / r_bp)


def breakpoint_distance(fc: float = 2.4e9, h_tx: float = 1.5, h_rx: float = 1.5) -> float:
    return 4 * h_tx * h_rx * fc / SPEED_OF_LIGHT


def draw_fading(k: int, seed: int) -> np.ndarray:
    """``k x k`` i.i.d. unit-mean exponential power gains."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    g = make_rng(seed).standard_exponential(size=(k, k))
    # zero has probability ~2**-53 per draw but would break the gain invariant
    return np.maximum(g, np.finfo(float).tiny)


def gain_matrix(dep: Deployment, fading, params: ChannelParams = ChannelParams(), seed=None) -> ChannelRealization:
    fading = np.asarray(fading, dtype=float)
    if fading.shape != (dep.k, dep.k):
        raise ValueError(f"fading must have shape {(dep.k, dep.k)}, got {fading.shape}")
    pl = itu1411_pathloss_db(distance_matrix(dep), params.fc, params.h_ant, params.h_ant)
    return ChannelRealization(db_to_linear(2 * params.g_ant - pl) * fading, seed=seed)


def noise_power_watts(n0: float, bandwidth: float) -> float:
    if not bandwidth > 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    return float(dbm_to_watts(n0 + 10 * np.log10(bandwidth)))


def link_rates(x, gain, p_tx_watts: float, sigma2: float, bandwidth: float) -> np.ndarray:
    """Per-link Shannon rates in bit/s.

    ``x`` may be a single activation vector ``(k,)`` or a batch ``(m, k)``.
    """
    g = gain.gain if isinstance(gain, ChannelRealization) else np.asarray(gain, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != g.shape[0]:
        raise ValueError(f"schedule has {x.shape[-1]} entries for {g.shape[0]} links")
    direct = np.diag(g)
    cross = g - np.diag(direct)
    signal = p_tx_watts * x * direct
    interference = p_tx_watts * (x @ cross.T)
    return bandwidth * np.log2(1.0 + signal / (interference + sigma2))


def sum_rate(x, gain, p_tx_watts: float, sigma2: float, bandwidth: float):
    return link_rates(x, gain, p_tx_watts, sigma2, bandwidth).sum(axis=-1)
