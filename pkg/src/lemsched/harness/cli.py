"""Command line entry point: ``lemsched {gen,run,sweep-r,summarize}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..topology import gen_deployment, save_deployment
from .config import ExperimentConfig, load_config, _int_list, _str_list
from .experiment import (
    emit_csv,
    emit_summary_csv,
    emit_sweep_csv,
    read_csv,
    run_experiment,
    summarize,
    sweep_r,
)

log = logging.getLogger("lemsched")


def _float_list(v: str) -> tuple[float, ...]:
    return tuple(float(s) for s in v.replace(",", " ").split())


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    return cfg.with_overrides(
        base_seed=args.seed,
        output_path=args.out,
        k_values=args.k,
        n_trials=args.trials,
        schemes=getattr(args, "schemes", None),
    )


def cmd_gen(args) -> int:
    cfg = _config(args)
    out = Path(cfg.output_path if args.out else "deployments")
    deployments = [
        gen_deployment(k, cfg.area_side, cfg.r_min, cfg.r_max, cfg.base_seed + t)
        for k in cfg.k_values
        for t in range(args.trials or 1)
    ]
    if len(deployments) == 1 and out.suffix:
        save_deployment(deployments[0], out)
        print(out)
        return 0
    out.mkdir(parents=True, exist_ok=True)
    for dep in deployments:
        path = out / f"deployment_k{dep.k}_seed{dep.seed}.txt"
        save_deployment(dep, path)
        print(path)
    return 0


def cmd_run(args) -> int:
    cfg = _config(args)
    results = run_experiment(cfg)
    emit_csv(results, cfg.output_path)
    log.info("wrote %d rows to %s", len(results), cfg.output_path)
    return 0


def cmd_sweep(args) -> int:
    cfg = _config(args)
    out = args.out or "sweep_r.csv"
    table = sweep_r(cfg, args.r)
    emit_sweep_csv(table, out)
    for r, by_k in table.items():
        for k, row in sorted(by_k.items()):
            print(f"k={k} r={r:g} mean_sum_rate={row.mean_sum_rate_bps:.6g} stderr={row.stderr_sum_rate_bps:.3g}")
    return 0


def cmd_summarize(args) -> int:
    rows = summarize(read_csv(args.input))
    out = args.out or str(Path(args.input).with_suffix("")) + "_summary.csv"
    emit_summary_csv(rows, out)
    log.info("wrote %d summary rows to %s", len(rows), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lemsched", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, schemes=True):
        p.add_argument("--config", help="key = value experiment config file")
        p.add_argument("--seed", type=int, help="base seed (overrides config)")
        p.add_argument("--out", help="output path")
        p.add_argument("--k", type=_int_list, help="comma separated pair counts, e.g. 10,30,50")
        p.add_argument("--trials", type=int, help="layouts per K")
        if schemes:
            p.add_argument("--schemes", type=_str_list, help="comma separated scheme names")

    p = sub.add_parser("gen", help="write deployment files")
    common(p, schemes=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run an experiment and write the results CSV")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep-r", help="mean LEM sum rate for several threshold ratios")
    common(p, schemes=False)
    p.add_argument("--r", type=_float_list, default=(0.5, 0.6, 0.7, 0.8, 0.9), help="comma separated ratios in (0, 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("summarize", help="per-(K, scheme) means of a results CSV")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_summarize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"lemsched: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
