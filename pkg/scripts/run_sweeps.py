#!/usr/bin/env python3
"""Run the four attack-effectiveness sweeps and write CSVs.

Axes: edge density (Erdos-Renyi p), attacker prominence, victim
prominence, and the navigation probability alpha (on the mixed-attachment
model). One trials.csv/summary.csv pair per condition lands under --out.
"""
import argparse
import dataclasses
from pathlib import Path

from linkbomb import ExperimentConfig, GeneratorConfig, SelectionRule, run_experiment
from linkbomb.experiment import write_summary_csv, write_trials_csv

BANDS = ((0.0, 0.3), (0.35, 0.65), (0.7, 1.0))


def emit(cfg: ExperimentConfig, out: Path, name: str) -> None:
    records = run_experiment(cfg)
    write_trials_csv(records, out / f"{name}_trials.csv")
    write_summary_csv(cfg, records, out / f"{name}_summary.csv")
    print(f"wrote {name} ({len(records)} trial records)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--n", type=int, default=200, help="nodes per graph")
    ap.add_argument("--trials", type=int, default=20, help="trials per condition")
    ap.add_argument("--seed", type=int, default=0, help="master seed")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    base = ExperimentConfig(
        generator=GeneratorConfig("random", args.n, p=0.01),
        alphas=(0.85,),
        trials=args.trials,
        master_seed=args.seed,
    )

    for p in (0.01, 0.03, 0.08):
        cfg = dataclasses.replace(base, generator=GeneratorConfig("random", args.n, p=p))
        emit(cfg, out, f"density_p{p}")

    for lo, hi in BANDS:
        cfg = dataclasses.replace(base, attacker_selection=SelectionRule("quantile", lo, hi))
        emit(cfg, out, f"attacker_band_{lo}_{hi}")

    for lo, hi in BANDS:
        cfg = dataclasses.replace(base, victim_selection=SelectionRule("quantile", lo, hi))
        emit(cfg, out, f"victim_band_{lo}_{hi}")

    cfg = dataclasses.replace(
        base,
        generator=GeneratorConfig("mwdta", args.n, target_expected_edges=4.0 * args.n),
        alphas=(0.5, 0.85, 0.95),
    )
    emit(cfg, out, "alpha_sweep_mwdta")


if __name__ == "__main__":
    main()
