"""Monte Carlo orchestration and CSV output."""

from __future__ import annotations

import csv
import logging
import math
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed

from .. import scheduler as sch
from ..channel import ChannelRealization, draw_fading, gain_matrix, sum_rate
from ..topology import Deployment, gen_deployment
from .config import ExperimentConfig

log = logging.getLogger(__name__)

RESULT_HEADER = (
    "trial_id",
    "k",
    "scheme",
    "sum_rate_bps",
    "activation_ratio",
    "elapsed_ms",
    "deployment_seed",
    "fading_seed",
)
SUMMARY_HEADER = (
    "k",
    "scheme",
    "n",
    "mean_sum_rate_bps",
    "stderr_sum_rate_bps",
    "mean_activation_ratio",
    "stderr_activation_ratio",
)
SWEEP_HEADER = ("k", "r", "n", "mean_sum_rate_bps", "stderr_sum_rate_bps", "mean_activation_ratio")

_FADING_STREAM = 1
_RANDOM_STREAM = 2


@dataclass(frozen=True)
class TrialResult:
    trial_id: int
    k: int
    scheme: str
    sum_rate_bps: float
    activation_ratio: float
    elapsed_ms: float
    deployment_seed: int
    fading_seed: int

    @property
    def skipped(self) -> bool:
        return math.isnan(self.sum_rate_bps)


@dataclass(frozen=True)
class SummaryRow:
    k: int
    scheme: str
    n: int
    mean_sum_rate_bps: float
    stderr_sum_rate_bps: float
    mean_activation_ratio: float
    stderr_activation_ratio: float


@dataclass(frozen=True, eq=False)
class Trial:
    """One network instance shared by every scheme of a trial."""

    trial_id: int
    deployment: Deployment
    channel: ChannelRealization
    deployment_seed: int
    fading_seed: int
    random_seed: int


def derive_seed(*words: int) -> int:
    return int(np.random.SeedSequence([int(w) for w in words]).generate_state(1, np.uint64)[0])


def make_trial(cfg: ExperimentConfig, k: int, trial_id: int, fading_seed: int | None = None) -> Trial:
    dep_seed = cfg.base_seed + trial_id
    if fading_seed is None:
        fading_seed = derive_seed(dep_seed, k, _FADING_STREAM)
    dep = gen_deployment(k, cfg.area_side, cfg.r_min, cfg.r_max, dep_seed)
    g = gain_matrix(dep, draw_fading(k, fading_seed), cfg.channel, seed=fading_seed)
    return Trial(trial_id, dep, g, dep_seed, fading_seed, derive_seed(dep_seed, k, _RANDOM_STREAM))


def run_scheme(cfg: ExperimentConfig, trial: Trial, scheme: str) -> sch.Schedule:
    dep, g, p = trial.deployment, trial.channel, cfg.channel
    if scheme == "lem":
        return sch.schedule_lem(dep, cfg.lem)
    if scheme == "greedy":
        return sch.schedule_greedy(dep, g, p)
    if scheme == "strongest":
        return sch.schedule_strongest(dep, g, p)
    if scheme == "random":
        return sch.schedule_random(dep.k, cfg.random_prob, trial.random_seed)
    if scheme == "all":
        return sch.schedule_all(dep.k)
    if scheme == "oracle":
        return sch.schedule_exhaustive(g, p, cfg.oracle_guard)
    raise ValueError(f"unknown scheme {scheme!r}")


def _ordered(schemes):
    return sorted(dict.fromkeys(schemes), key=sch.SCHEMES.index)


def run_trial(cfg: ExperimentConfig, k: int, trial_id: int):
    """Results of every configured scheme on one shared trial, plus the
    schedules that produced them (``None`` where a scheme was skipped)."""
    trial = make_trial(cfg, k, trial_id)
    p = cfg.channel
    results, schedules = [], {}
    for scheme in _ordered(cfg.schemes):
        row = dict(trial_id=trial_id, k=k, scheme=scheme, deployment_seed=trial.deployment_seed, fading_seed=trial.fading_seed)
        if scheme == "oracle" and k > cfg.oracle_guard:
            log.warning("oracle skipped for k=%d (guard %d), trial %d", k, cfg.oracle_guard, trial_id)
            results.append(TrialResult(sum_rate_bps=math.nan, activation_ratio=math.nan, elapsed_ms=0.0, **row))
            schedules[scheme] = None
            continue
        t0 = time.perf_counter()
        s = run_scheme(cfg, trial, scheme)
        elapsed = (time.perf_counter() - t0) * 1e3 if cfg.timing else 0.0
        rate = float(sum_rate(s.x, trial.channel, p.p_tx_watts, p.noise_watts, p.bandwidth))
        results.append(TrialResult(sum_rate_bps=rate, activation_ratio=sch.activation_ratio(s), elapsed_ms=elapsed, **row))
        schedules[scheme] = s
    return results, schedules


def _units(cfg: ExperimentConfig):
    return [(k, t) for k in cfg.k_values for t in range(cfg.n_trials)]


def run_experiment(cfg: ExperimentConfig) -> list[TrialResult]:
    """Every scheme on every (k, trial); output order is independent of
    ``n_jobs``."""
    chunks = Parallel(n_jobs=cfg.n_jobs)(delayed(run_trial)(cfg, k, t) for k, t in _units(cfg))
    rows = [r for results, _ in chunks for r in results]
    rows.sort(key=lambda r: (r.k, r.trial_id, sch.SCHEMES.index(r.scheme)))
    return rows


def _sweep_trial(cfg: ExperimentConfig, k: int, trial_id: int, r_values):
    trial = make_trial(cfg, k, trial_id)
    D = sch.pair_pair_lem_matrix(trial.deployment, cfg.lem.gamma)
    order = sch.sort_by_direct_distance(trial.deployment)
    p = cfg.channel
    out = []
    for r in r_values:
        s = sch.schedule_lem_from_matrix(D, order, sch.LemConfig(cfg.lem.gamma, r, cfg.lem.metric))
        rate = float(sum_rate(s.x, trial.channel, p.p_tx_watts, p.noise_watts, p.bandwidth))
        out.append((r, rate, sch.activation_ratio(s)))
    return k, out


def sweep_r(cfg: ExperimentConfig, r_values) -> dict[float, dict[int, SummaryRow]]:
    """Mean LEM sum rate per ``(k, r)`` on the layouts and fading of
    :func:`run_experiment`. Duplicate ``r`` values are merged."""
    r_values = sorted({float(r) for r in r_values})
    if not r_values:
        raise ValueError("no r values given")
    for r in r_values:
        if not 0 < r < 1:
            raise ValueError(f"r must lie in (0, 1), got {r}")
    chunks = Parallel(n_jobs=cfg.n_jobs)(delayed(_sweep_trial)(cfg, k, t, r_values) for k, t in _units(cfg))
    rates = {(k, r): [] for k in cfg.k_values for r in r_values}
    ratios = {key: [] for key in rates}
    for k, out in chunks:
        for r, rate, ratio in out:
            rates[k, r].append(rate)
            ratios[k, r].append(ratio)
    table: dict[float, dict[int, SummaryRow]] = {r: {} for r in r_values}
    for (k, r), v in rates.items():
        m, se = _mean_stderr(v)
        ma, sa = _mean_stderr(ratios[k, r])
        table[r][k] = SummaryRow(k, "lem", len(v), m, se, ma, sa)
    return table


def _mean_stderr(values) -> tuple[float, float]:
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return math.nan, math.nan
    se = float(v.std(ddof=1) / math.sqrt(v.size)) if v.size > 1 else 0.0
    return float(v.mean()), se


def summarize(results) -> list[SummaryRow]:
    """Per ``(k, scheme)`` mean and standard error; skipped rows are ignored."""
    groups: dict[tuple[int, str], list[TrialResult]] = {}
    for r in results:
        if not r.skipped:
            groups.setdefault((r.k, r.scheme), []).append(r)
    rows = []
    for (k, scheme), rs in sorted(groups.items(), key=lambda kv: (kv[0][0], _scheme_rank(kv[0][1]))):
        m, se = _mean_stderr([r.sum_rate_bps for r in rs])
        ma, sa = _mean_stderr([r.activation_ratio for r in rs])
        rows.append(SummaryRow(k, scheme, len(rs), m, se, ma, sa))
    return rows


def _scheme_rank(scheme: str):
    return (sch.SCHEMES.index(scheme), "") if scheme in sch.SCHEMES else (len(sch.SCHEMES), scheme)


# --------------------------------------------------------------------------
# CSV


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    return str(v)


def _write_rows(path, header, rows) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(getattr(row, h)) for h in header])


def emit_csv(results, path) -> None:
    """Overwrite ``path`` with one row per result."""
    _write_rows(path, RESULT_HEADER, results)


def read_csv(path) -> list[TrialResult]:
    types = {f.name: f.type for f in fields(TrialResult)}
    conv = {"int": int, "float": float, "str": str}
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RESULT_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [TrialResult(**{k: conv[types[k]](v) for k, v in row.items()}) for row in reader]


def emit_summary_csv(rows, path) -> None:
    _write_rows(path, SUMMARY_HEADER, rows)


def emit_sweep_csv(table, path) -> None:
    rows = []
    for r, by_k in table.items():
        for k, s in sorted(by_k.items()):
            rows.append(_SweepRow(k, r, s.n, s.mean_sum_rate_bps, s.stderr_sum_rate_bps, s.mean_activation_ratio))
    rows.sort(key=lambda row: (row.k, row.r))
    _write_rows(path, SWEEP_HEADER, rows)


@dataclass(frozen=True)
class _SweepRow:
    k: int
    r: float
    n: int
    mean_sum_rate_bps: float
    stderr_sum_rate_bps: float
    mean_activation_ratio: float
