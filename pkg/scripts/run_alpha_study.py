#!/usr/bin/env python3
"""Paired wing-on vs wing-off study over a generated task menu.

Prints the per-condition means and the relative improvement, and optionally
writes the standard artifact set (trials.csv, summary.json, snapshots).

Example:
    python3 scripts/run_alpha_study.py --trials 400 --jitter 3 --out results/alpha
"""

import argparse
from pathlib import Path

from wingmenu.menu import MenuConfig
from wingmenu.simulate import (
    CursorModel,
    run_experiment,
    summarize_records,
    write_summary_json,
    write_trials_csv,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--factor", choices=("alpha", "epsilon"), default="alpha")
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--branching", type=int, default=6)
    ap.add_argument("--trials", type=int, default=100, help="paired trials")
    ap.add_argument("--tasks", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jitter", type=float, default=3.0)
    ap.add_argument("--tau", type=float, default=250.0)
    ap.add_argument("--overshoot", type=float, default=0.0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None, help="optional output directory")
    args = ap.parse_args()

    config = MenuConfig(hover_delay_tau=args.tau)
    cursor = CursorModel(jitter_sigma=args.jitter, overshoot=args.overshoot)
    records = run_experiment(
        args.factor, depth=args.depth, branching=args.branching,
        n_trials=args.trials, n_tasks=args.tasks, seed=args.seed,
        config=config, cursor=cursor, jobs=args.jobs,
    )
    s = summarize_records(args.factor, records)

    print(f"factor={s.factor}  pairs={s.n_pairs}  menu depth={args.depth} "
          f"branching={args.branching}  jitter={args.jitter}px")
    print(f"{s.base_label}: mean {s.base_mean_ms:8.1f} ms  sd {s.base_std_ms:7.1f}  "
          f"success {s.base_success}/{s.n_pairs}")
    print(f"{s.test_label}: mean {s.test_mean_ms:8.1f} ms  sd {s.test_std_ms:7.1f}  "
          f"success {s.test_success}/{s.n_pairs}")
    print(f"improvement: {s.improvement_percent:.2f}%")
    print()
    print(f"{'task':>12} {'base ms':>10} {'test ms':>10} {'pairs':>6}")
    for row in s.per_task:
        print(f"{row.task:>12} {row.base_mean_ms:10.1f} {row.test_mean_ms:10.1f} "
              f"{row.n_pairs:6d}")

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_trials_csv(records, out / "trials.csv")
        write_summary_json(s, out / "summary.json")
        print(f"\nwrote {out / 'trials.csv'} and {out / 'summary.json'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
