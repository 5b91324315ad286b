"""Experiment configuration: flat ``key = value`` files with ``#`` comments.

An empty file reproduces the default network setup (500 m square, 2-65 m
links, 40 dBm, 2.4 GHz, 1.5 m antennas with 2.5 dB gain, -169 dBm/Hz, 5 MHz).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ..channel import ChannelParams
from ..scheduler import DEFAULT_ORACLE_GUARD, SCHEMES, LemConfig
from ..topology import DEFAULT_AREA_SIDE, DEFAULT_R_MAX, DEFAULT_R_MIN


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    k_values: tuple[int, ...] = (10, 20, 30, 40, 50)
    n_trials: int = 200
    schemes: tuple[str, ...] = ("lem", "greedy", "strongest", "random", "all")
    channel: ChannelParams = field(default_factory=ChannelParams)
    lem: LemConfig = field(default_factory=LemConfig)
    base_seed: int = 0
    output_path: str = "results.csv"
    area_side: float = DEFAULT_AREA_SIDE
    r_min: float = DEFAULT_R_MIN
    r_max: float = DEFAULT_R_MAX
    random_prob: float = 0.5
    oracle_guard: int = DEFAULT_ORACLE_GUARD
    n_jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.n_trials < 1:
            raise ConfigError(f"n_trials must be at least 1, got {self.n_trials}")
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ConfigError(f"k_values must be positive counts, got {self.k_values}")
        if not self.schemes:
            raise ConfigError("schemes must not be empty")
        bad = [s for s in self.schemes if s not in SCHEMES]
        if bad:
            raise ConfigError(f"unknown scheme(s) {bad}; valid: {', '.join(SCHEMES)}")
        if not 0 < self.r_min < self.r_max < self.area_side:
            raise ConfigError("need 0 < r_min < r_max < area_side")
        if self.base_seed < 0:
            raise ConfigError(f"base_seed must be nonnegative, got {self.base_seed}")
        if self.n_jobs == 0:
            raise ConfigError("n_jobs must be nonzero")
        if not 0 <= self.random_prob <= 1:
            raise ConfigError(f"random_prob must lie in [0, 1], got {self.random_prob}")

    def with_overrides(self, **kw) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _int_list(v: str) -> tuple[int, ...]:
    return tuple(int(s) for s in v.replace(",", " ").split())


def _str_list(v: str) -> tuple[str, ...]:
    return tuple(s for s in v.replace(",", " ").split())


def _bool(v: str) -> bool:
    low = v.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


_TOP = {
    "k_values": _int_list,
    "n_trials": int,
    "schemes": _str_list,
    "base_seed": int,
    "output_path": str,
    "area_side": float,
    "r_min": float,
    "r_max": float,
    "random_prob": float,
    "oracle_guard": int,
    "n_jobs": int,
    "timing": _bool,
}
_CHANNEL = {f.name: float for f in fields(ChannelParams)}
_LEM = {"gamma": float, "r": float, "lem_metric": str}


def parse_config(text: str) -> ExperimentConfig:
    top, chan, lem = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        for table, dest in ((_TOP, top), (_CHANNEL, chan), (_LEM, lem)):
            if key in table:
                try:
                    dest[key] = table[key](value)
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
                break
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if "lem_metric" in lem:
        lem["metric"] = lem.pop("lem_metric")
    try:
        return ExperimentConfig(channel=ChannelParams(**chan), lem=LemConfig(**lem), **top)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())
