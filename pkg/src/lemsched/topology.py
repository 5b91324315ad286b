"""Random D2D layouts and the pairwise geometry derived from them.

Random draws use numpy's Philox4x64 counter-based bit generator keyed through
``numpy.random.SeedSequence(seed)``. For a deployment the draw order is fixed:
transmitter coordinates ``(k, 2)``, then link lengths ``(k,)``, then link
angles ``(k,)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

DEFAULT_AREA_SIDE = 500.0
DEFAULT_R_MIN = 2.0
DEFAULT_R_MAX = 65.0


def make_rng(seed: int) -> np.random.Generator:
    """Seeded Philox generator shared by every random draw in the package."""
    return np.random.Generator(np.random.Philox(int(seed)))


class Point2D(NamedTuple):
    x: float
    y: float


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Deployment:
    """Positions of ``k`` transmitter/receiver pairs.

    ``tx`` and ``rx`` are read-only ``(k, 2)`` arrays; pair ``i`` is the link
    ``tx[i] -> rx[i]``.
    """

    tx: np.ndarray
    rx: np.ndarray
    area_side: float = DEFAULT_AREA_SIDE
    seed: int = 0

    def __post_init__(self):
        tx = _frozen(self.tx).reshape(-1, 2)
        rx = _frozen(self.rx).reshape(-1, 2)
        if tx.shape != rx.shape:
            raise ValueError(
                f"tx and rx must hold the same number of points, got {tx.shape[0]} and {rx.shape[0]}"
            )
        if tx.shape[0] < 1:
            raise ValueError("a deployment needs at least one pair")
        if not (np.all(np.isfinite(tx)) and np.all(np.isfinite(rx))):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "tx", tx)
        object.__setattr__(self, "rx", rx)

    @property
    def k(self) -> int:
        return self.tx.shape[0]

    @property
    def tx_points(self) -> list[Point2D]:
        return [Point2D(*map(float, p)) for p in self.tx]

    @property
    def rx_points(self) -> list[Point2D]:
        return [Point2D(*map(float, p)) for p in self.rx]

    def direct_distances(self) -> np.ndarray:
        return np.hypot(*(self.tx - self.rx).T)

    def to_array(self) -> np.ndarray:
        """Layout as a ``(k, 4)`` array of ``tx_x, tx_y, rx_x, rx_y`` rows."""
        return np.hstack([self.tx, self.rx])

    @classmethod
    def from_array(cls, layout, area_side: float = DEFAULT_AREA_SIDE, seed: int = 0) -> "Deployment":
        layout = np.asarray(layout, dtype=float)
        if layout.ndim != 2 or layout.shape[1] != 4:
            raise ValueError(f"layout must have shape (k, 4), got {layout.shape}")
        return cls(layout[:, :2], layout[:, 2:], area_side=area_side, seed=seed)

    def __eq__(self, other):
        if not isinstance(other, Deployment):
            return NotImplemented
        return (
            self.area_side == other.area_side
            and self.seed == other.seed
            and np.array_equal(self.tx, other.tx)
            and np.array_equal(self.rx, other.rx)
        )

    __hash__ = None


def gen_deployment(
    k: int,
    area_side: float = DEFAULT_AREA_SIDE,
    r_min: float = DEFAULT_R_MIN,
    r_max: float = DEFAULT_R_MAX,
    seed: int = 0,
) -> Deployment:
    """Drop ``k`` pairs: transmitters uniform on the square, receivers on a
    circle of uniformly drawn radius around their transmitter.

    Receivers are not clipped to the square.
    """
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not 0 < r_min < r_max:
        raise ValueError(f"need 0 < r_min < r_max, got r_min={r_min}, r_max={r_max}")
    if not r_max < area_side:
        raise ValueError(f"r_max ({r_max}) must be smaller than area_side ({area_side})")
    k = int(k)
    rng = make_rng(seed)
    tx = rng.uniform(0.0, area_side, size=(k, 2))
    radius = rng.uniform(r_min, r_max, size=k)
    angle = rng.uniform(0.0, 2 * np.pi, size=k)
    rx = tx + radius[:, None] * np.column_stack([np.cos(angle), np.sin(angle)])
    return Deployment(tx, rx, area_side=float(area_side), seed=int(seed))


def distance_matrix(dep: Deployment) -> np.ndarray:
    """``D[i, j]`` is the distance from transmitter ``j`` to receiver ``i``."""
    diff = dep.rx[:, None, :] - dep.tx[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def format_deployment(dep: Deployment) -> str:
    # repr of a Python float round-trips exactly
    lines = [f"{dep.k} {float(dep.area_side)!r} {dep.seed}"]
    for row in dep.to_array().tolist():
        lines.append(" ".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_deployment(text: str) -> Deployment:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 3:
        raise ValueError("deployment header must be 'k area_side seed'")
    k, area_side, seed = int(rows[0][0]), float(rows[0][1]), int(rows[0][2])
    body = rows[1:]
    if len(body) != k or any(len(r) != 4 for r in body):
        raise ValueError(f"expected {k} lines of 'tx_x tx_y rx_x rx_y'")
    layout = np.array(body, dtype=float)
    return Deployment.from_array(layout, area_side=area_side, seed=seed)


def save_deployment(dep: Deployment, path) -> None:
    Path(path).write_text(format_deployment(dep))


def load_deployment(path) -> Deployment:
    return parse_deployment(Path(path).read_text())
