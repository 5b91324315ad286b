"""Log-Euclidean link scheduling for device-to-device interference channels."""

from .channel import ChannelParams, ChannelRealization, draw_fading, gain_matrix, sum_rate
from .estimators import (
    AllActiveScheduler,
    ExhaustiveScheduler,
    GreedyScheduler,
    LEMScheduler,
    RandomScheduler,
    StrongestLinkScheduler,
)
from .scheduler import LemConfig, Schedule, activation_ratio, schedule_lem
from .topology import Deployment, distance_matrix, gen_deployment

__all__ = [
    "AllActiveScheduler",
    "ChannelParams",
    "ChannelRealization",
    "Deployment",
    "ExhaustiveScheduler",
    "GreedyScheduler",
    "LEMScheduler",
    "LemConfig",
    "RandomScheduler",
    "Schedule",
    "StrongestLinkScheduler",
    "activation_ratio",
    "distance_matrix",
    "draw_fading",
    "gain_matrix",
    "gen_deployment",
    "schedule_lem",
    "sum_rate",
]
