"""Command line entry points.

``wingmenu simulate`` runs a counterbalanced A/B experiment over a generated
task menu and writes summary.json, trials.csv and SVG snapshots into the
output directory.  ``wingmenu replay`` feeds a recorded raw-input trace
through the engine headlessly and emits the event log.  ``wingmenu serve``
starts the HTTP boundary used by the browser demo.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from wingmenu.menu import (
    MenuConfig,
    MenuModel,
    format_event_line,
    load_menu_file,
    replay_inputs,
)
from wingmenu.geometry import Point
from wingmenu.simulate import (
    CursorModel,
    FACTORS,
    run_experiment,
    summarize_records,
    write_summary_json,
    write_trials_csv,
)
from wingmenu.svgout import render_snapshot


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wingmenu")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a simulated A/B selection experiment")
    sim.add_argument("--factor", choices=FACTORS, default="alpha",
                     help="which variable the two conditions toggle between 0 and 1")
    sim.add_argument("--depth", type=int, default=3)
    sim.add_argument("--branching", type=int, default=6)
    sim.add_argument("--trials", type=int, default=16,
                     help="number of paired trials (each runs both conditions)")
    sim.add_argument("--tasks", type=int, default=16, help="distinct target leaves")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--alpha", type=float, default=1.0,
                     help="fixed alpha when it is not the studied factor")
    sim.add_argument("--epsilon", type=float, default=0.0,
                     help="fixed epsilon when it is not the studied factor")
    sim.add_argument("--tau", type=float, default=250.0, help="hover delay in ms")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--jitter", type=float, default=3.0, help="cursor noise sigma, px")
    sim.add_argument("--speed", type=float, default=0.6, help="cursor top speed, px/ms")
    sim.add_argument("--step-ms", type=float, default=8.0)
    sim.add_argument("--overshoot", type=float, default=0.0)
    sim.add_argument("--item-width", type=float, default=100.0)
    sim.add_argument("--item-height", type=float, default=20.0)
    sim.add_argument("--opacity", type=float, default=0.75, help="overlap opacity")
    sim.add_argument("--formula-mode", choices=("literal", "single_alpha"), default="literal")
    sim.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    rep = sub.add_parser("replay", help="replay a raw input trace through the engine")
    rep.add_argument("--menu", required=True, help="menu definition JSON file")
    rep.add_argument("--inputs", required=True,
                     help="JSONL of {t_ms, kind: move|click, x, y} records")
    rep.add_argument("--out", default="-", help="event log output path (default stdout)")

    srv = sub.add_parser("serve", help="serve the engine over HTTP for the browser demo")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8787)
    return parser


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = MenuConfig(
        alpha=args.alpha,
        epsilon=args.epsilon,
        item_width=args.item_width,
        item_height=args.item_height,
        hover_delay_tau=args.tau,
        overlap_opacity=args.opacity,
        formula_mode=args.formula_mode,
    )
    cursor = CursorModel(
        speed=args.speed,
        jitter_sigma=args.jitter,
        step_ms=args.step_ms,
        overshoot=args.overshoot,
    )
    records = run_experiment(
        args.factor,
        depth=args.depth,
        branching=args.branching,
        n_trials=args.trials,
        n_tasks=args.tasks,
        seed=args.seed,
        config=config,
        cursor=cursor,
        jobs=args.jobs,
    )
    summary = summarize_records(args.factor, records)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_trials_csv(records, out / "trials.csv")
    write_summary_json(summary, out / "summary.json")
    _write_snapshots(out, records[0].log.task, summary, config)

    print(f"{summary.factor}: {summary.base_label} vs {summary.test_label}, "
          f"{summary.n_pairs} pairs")
    print(f"base mean {summary.base_mean_ms:.1f} ms, "
          f"test mean {summary.test_mean_ms:.1f} ms")
    print(f"improvement {summary.improvement_percent:.2f}%")
    return 0


def _write_snapshots(out: Path, task, summary, config: MenuConfig) -> None:
    tree = task.menu
    closed = MenuModel(tree, config)
    (out / "snapshot_closed.svg").write_text(render_snapshot(closed), encoding="utf-8")

    # open the chain to the first task's target with the test condition active
    test_cfg = config
    if summary.factor == "alpha":
        test_cfg = MenuConfig(alpha=1.0, epsilon=config.epsilon,
                              item_width=config.item_width, item_height=config.item_height,
                              hover_delay_tau=0.0, overlap_opacity=config.overlap_opacity,
                              formula_mode=config.formula_mode)
    else:
        test_cfg = MenuConfig(alpha=config.alpha, epsilon=0.0,
                              item_width=config.item_width, item_height=config.item_height,
                              hover_delay_tau=0.0, overlap_opacity=config.overlap_opacity,
                              formula_mode=config.formula_mode)
    model = MenuModel(tree, test_cfg)
    t = 0.0
    for nid in tree.path_to(task.target_id)[:-1]:
        r = tree.rect(nid)
        t += 1.0
        model.update_cursor(Point(r.x + 0.95 * r.w, r.cy), t)
    (out / "snapshot_open.svg").write_text(render_snapshot(model), encoding="utf-8")


def _cmd_replay(args: argparse.Namespace) -> int:
    tree, config = load_menu_file(args.menu)
    with open(args.inputs, "r", encoding="utf-8") as fh:
        inputs = [json.loads(line) for line in fh if line.strip()]
    events = replay_inputs(tree, config, inputs)
    lines = "\n".join(format_event_line(e) for e in events)
    if lines:
        lines += "\n"
    if args.out == "-":
        sys.stdout.write(lines)
    else:
        Path(args.out).write_text(lines, encoding="utf-8")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        import uvicorn

        from wingmenu.server import create_app
    except ImportError as exc:
        print(f"serve requires fastapi and uvicorn: {exc}", file=sys.stderr)
        return 2
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "simulate":
        return _cmd_simulate(args)
    if args.command == "replay":
        return _cmd_replay(args)
    if args.command == "serve":
        return _cmd_serve(args)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    raise SystemExit(main())
