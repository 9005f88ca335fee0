"""Synthetic selection-task harness for wing-expansion menus.

A trial drives the real menu state machine with a simulated cursor: straight
legs aim at an eta-dependent point inside each ancestor item, Gaussian lateral
jitter perturbs every step, and the cursor waits on each ancestor until the
hover delay opens its submenu, then clicks the target leaf.  Two modeling
rules connect the simulation to the steering-law argument:

* instantaneous speed scales with the vertical extent of the hovered item's
  live activation outline (wide tunnel, fast movement; floor at half speed),
* the cursor stays inside the "safe" region it can trust: the task path's
  visible item rectangles, the open submenu columns along the path, and the
  live outline of the hovered path item.  A step that would leave it is
  counted as a tunnel exit and replaced by an axis-aligned slide.

With expansion disabled every activation area is a bare rectangle, so the
same policy yields slower, row-hugging traversals; with the wing enabled the
diagonal descent happens inside the expanded outline at full speed.  Trials
are fully deterministic in (task, config, cursor seed) and independent of
wall clock, so experiments are reproducible and parallelizable.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from wingmenu.geometry import Point, outline_edges_at, outline_vertical_extent
from wingmenu.menu import MenuConfig, MenuModel, MenuNode, MenuTree

__all__ = [
    "TaskSpec",
    "CursorModel",
    "Condition",
    "TrialLog",
    "TrialRecord",
    "TaskMeans",
    "ExperimentSummary",
    "generate_task_menu",
    "sample_tasks",
    "run_trial",
    "run_experiment",
    "ab_experiment",
    "summarize_records",
    "trials_csv_lines",
    "write_trials_csv",
    "summary_to_dict",
    "write_summary_json",
]

MAX_MENU_NODES = 2_000_000
FACTORS = ("alpha", "epsilon")


class Condition(NamedTuple):
    alpha: float
    epsilon: float


@dataclass(frozen=True)
class TaskSpec:
    """One selection task: find and click the target leaf."""

    menu: MenuTree
    target_id: str
    target_label: str

    def __post_init__(self) -> None:
        node = self.menu.node(self.target_id)
        if not node.is_leaf:
            raise ValueError(f"task target {self.target_id!r} is not a leaf")
        if node.label != self.target_label:
            raise ValueError(
                f"target label {self.target_label!r} does not match node label {node.label!r}"
            )


@dataclass(frozen=True)
class CursorModel:
    """Synthetic cursor parameters.

    speed is the top speed in px/ms; movement slows toward speed_floor as the
    local activation extent drops below width_ref_heights item heights.
    Legs aim at horizontal fraction aim_eta of each item; overshoot > 0 makes
    each leg pass its aim point by that many pixels before returning.
    """

    speed: float = 0.6
    jitter_sigma: float = 0.0
    step_ms: float = 8.0
    seed: int = 0
    aim_eta: float = 0.8
    overshoot: float = 0.0
    max_steps: int = 5000
    speed_floor: float = 0.5
    width_ref_heights: float = 2.0

    def __post_init__(self) -> None:
        if self.speed <= 0:
            raise ValueError("speed must be > 0")
        if self.step_ms <= 0:
            raise ValueError("step_ms must be > 0")
        if self.jitter_sigma < 0:
            raise ValueError("jitter_sigma must be >= 0")
        if not 0.0 < self.aim_eta <= 1.0:
            raise ValueError("aim_eta must be in (0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if not 0.0 < self.speed_floor <= 1.0:
            raise ValueError("speed_floor must be in (0, 1]")


@dataclass(frozen=True)
class TrialLog:
    task: TaskSpec
    condition: Condition
    duration_ms: float
    path_exits: int
    reopened_submenus: int
    success: bool
    trace: tuple[tuple[float, Point], ...]


def generate_task_menu(depth: int, branching: int, seed: int = 0, *,
                       item_width: float = 100.0, item_height: float = 20.0,
                       origin: tuple[float, float] = (0.0, 0.0)) -> MenuTree:
    """Uniform task menu with dotted index-path labels ("3.5.1.6").

    The structure is fully determined by depth and branching; the seed is
    accepted for interface symmetry with the trial functions and does not
    alter the tree.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if branching < 2:
        raise ValueError("branching must be >= 2")
    total = sum(branching ** d for d in range(1, depth + 1))
    if total > MAX_MENU_NODES:
        raise ValueError(f"menu would have {total} nodes (limit {MAX_MENU_NODES})")

    def build(prefix: str, level: int) -> tuple[MenuNode, ...]:
        nodes = []
        for i in range(1, branching + 1):
            nid = f"{prefix}.{i}" if prefix else str(i)
            children = build(nid, level + 1) if level < depth else ()
            nodes.append(MenuNode(id=nid, label=nid, children=children))
        return tuple(nodes)

    return MenuTree(build("", 1), item_width, item_height, origin=origin)


def sample_tasks(menu: MenuTree, n: int, seed: int = 0) -> list[TaskSpec]:
    """Draw n target leaves (without replacement when possible)."""
    leaves = menu.leaf_ids()
    rng = np.random.default_rng(seed)
    if n <= len(leaves):
        chosen = rng.choice(len(leaves), size=n, replace=False)
    else:
        chosen = rng.choice(len(leaves), size=n, replace=True)
    out = []
    for idx in chosen:
        nid = leaves[int(idx)]
        out.append(TaskSpec(menu=menu, target_id=nid, target_label=menu.node(nid).label))
    return out


def run_trial(task: TaskSpec, config: MenuConfig, cursor: CursorModel) -> TrialLog:
    """Run one simulated selection task; deterministic in its inputs.

    Simulated time advances by step_ms per step regardless of wall clock.
    The trial aborts with success=False when max_steps is exhausted.
    """
    tree = task.menu
    if (tree.item_width, tree.item_height) != (config.item_width, config.item_height):
        raise ValueError("menu was laid out with different item dimensions than config")
    model = MenuModel(tree, config)
    rng = np.random.default_rng(cursor.seed)
    path = tree.path_to(task.target_id)
    path_index = {nid: i for i, nid in enumerate(path)}
    width_ref = cursor.width_ref_heights * tree.item_height

    pos = Point(tree.origin[0] - 10.0, tree.origin[1] - 10.0)
    trace: list[tuple[float, Point]] = [(0.0, pos)]
    opens: Counter[str] = Counter()
    path_exits = 0
    success = False
    goal: str | None = None
    waypoints: list[Point] = []

    def aim_of(node_id: str) -> Point:
        r = tree.rect(node_id)
        return Point(r.x + cursor.aim_eta * r.w, r.cy)

    def left_entry(node_id: str) -> Point:
        # Enter through the item's left edge: no sibling wing reaches there,
        # so the hover is guaranteed to land on the intended item.
        r = tree.rect(node_id)
        return Point(r.x + 0.02 * r.w, r.cy)

    def plan(node_id: str, from_pos: Point) -> list[Point]:
        target_aim = aim_of(node_id)
        wps: list[Point] = []
        on_item = tree.rect(node_id).contains(from_pos) and model.hit_test(from_pos) == node_id
        if not on_item:
            wps.append(left_entry(node_id))
        if cursor.overshoot > 0.0:
            ref = wps[-1] if wps else from_pos
            dx, dy = target_aim.x - ref.x, target_aim.y - ref.y
            norm = math.hypot(dx, dy)
            if norm > 1e-9:
                wps.append(Point(target_aim.x + cursor.overshoot * dx / norm,
                                 target_aim.y + cursor.overshoot * dy / norm))
        wps.append(target_aim)
        return wps

    def current_goal() -> str:
        for nid in path[:-1]:
            if not model.is_open(nid):
                return nid
        return path[-1]

    def in_safe(p: Point) -> bool:
        open_path = [nid for nid in path[:-1] if model.is_open(nid)]
        if not open_path:
            return tree.root_column_rect().contains(p)
        for i, nid in enumerate(path):
            if i == 0 or model.is_open(path[i - 1]):
                if tree.rect(nid).contains(p):
                    return True
        # Only the deepest open submenu (the goal's own column) is fair game;
        # wandering an earlier column risks dwelling on an ancestor's sibling,
        # which would tear the open chain down.
        if tree.submenu_rect(open_path[-1]).contains(p):
            return True
        hovered = model.hovered_id
        if hovered is not None and hovered in path_index:
            rect = tree.rect(hovered)
            lx = p.x - rect.x
            if 0.0 <= lx <= rect.w:
                top, bottom = outline_edges_at(model.outline_for(hovered), lx)
                if top <= p.y - rect.y <= bottom:
                    return True
        return False

    def local_speed(p: Point) -> float:
        hovered = model.hovered_id
        if hovered is None:
            return cursor.speed
        rect = tree.rect(hovered)
        extent = outline_vertical_extent(model.outline_for(hovered), p.x - rect.x)
        factor = extent / width_ref
        factor = min(1.0, max(cursor.speed_floor, factor))
        return cursor.speed * factor

    def feed_cursor(p: Point, now: float) -> None:
        for e in model.update_cursor(p, now):
            if e.kind == "opened":
                opens[e.node_id] += 1

    steps = 0
    t = 0.0
    while steps < cursor.max_steps and not success:
        steps += 1
        t = steps * cursor.step_ms

        g = current_goal()
        if g != goal:
            goal = g
            waypoints = plan(goal, pos)

        if waypoints:
            wp = waypoints[0]
            d = local_speed(pos) * cursor.step_ms
            dist = math.hypot(wp.x - pos.x, wp.y - pos.y)
            if dist <= d:
                tentative = wp
                step_x, step_y = wp.x - pos.x, wp.y - pos.y
            else:
                ux, uy = (wp.x - pos.x) / dist, (wp.y - pos.y) / dist
                lateral = float(rng.normal()) * cursor.jitter_sigma
                tentative = Point(pos.x + d * ux - lateral * uy,
                                  pos.y + d * uy + lateral * ux)
                step_x, step_y = d * ux, d * uy
            if in_safe(pos) and not in_safe(tentative):
                path_exits += 1
                best: tuple[float, Point] | None = None
                for cand in (Point(pos.x + step_x, pos.y), Point(pos.x, pos.y + step_y)):
                    if cand != pos and in_safe(cand):
                        closeness = math.hypot(wp.x - cand.x, wp.y - cand.y)
                        if best is None or closeness < best[0]:
                            best = (closeness, cand)
                if best is not None:
                    pos = best[1]
            else:
                pos = tentative
            feed_cursor(pos, t)
            if pos == wp:
                waypoints.pop(0)
        elif goal == path[-1]:
            if tree.rect(goal).contains(pos) and model.hit_test(pos) == goal:
                events = model.select(pos, t)
                if any(e.kind == "selected" and e.node_id == task.target_id for e in events):
                    success = True
                else:
                    goal = None  # wrong click closed the menu; re-navigate
            else:
                waypoints = plan(goal, pos)  # a sibling wing shadows us; re-enter
        else:
            feed_cursor(pos, t)  # dwell until the hover delay opens the goal
            if model.hovered_id != goal:
                waypoints = plan(goal, pos)  # dwell landed under a wing shadow

        trace.append((t, pos))

    return TrialLog(
        task=task,
        condition=Condition(config.alpha, config.epsilon),
        duration_ms=steps * cursor.step_ms,
        path_exits=path_exits,
        reopened_submenus=sum(c - 1 for c in opens.values() if c > 1),
        success=success,
        trace=tuple(trace),
    )


# -- A/B experiments -------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    pair_index: int
    exec_index: int  # 0 = run first within the pair
    seed: int
    role: str  # "base" | "test"
    label: str  # e.g. "alpha=0"
    log: TrialLog


class TaskMeans(NamedTuple):
    task: str
    base_mean_ms: float
    test_mean_ms: float
    n_pairs: int


@dataclass(frozen=True)
class ExperimentSummary:
    factor: str
    base_label: str
    test_label: str
    n_pairs: int
    base_mean_ms: float
    base_std_ms: float
    test_mean_ms: float
    test_std_ms: float
    base_success: int
    test_success: int
    improvement_percent: float
    per_task: tuple[TaskMeans, ...]


def _condition_pair(factor: str, config: MenuConfig) -> tuple[tuple[str, MenuConfig], tuple[str, MenuConfig]]:
    """(base, test) labelled configs for a factor; test is the wing feature."""
    if factor == "alpha":
        return ("alpha=0", replace(config, alpha=0.0)), ("alpha=1", replace(config, alpha=1.0))
    if factor == "epsilon":
        return ("epsilon=1", replace(config, epsilon=1.0)), ("epsilon=0", replace(config, epsilon=0.0))
    raise ValueError(f"factor must be one of {FACTORS}, got {factor!r}")


def _pair_seed(seed: int, pair_index: int) -> int:
    return seed * 1_000_003 + pair_index


def _run_pair(args) -> list[TrialRecord]:
    pair_index, task, base, test, cursor_template = args
    (base_label, base_cfg), (test_label, test_cfg) = base, test
    seed = cursor_template.seed
    cursor = replace(cursor_template, seed=seed)
    runs = [("test", test_label, test_cfg), ("base", base_label, base_cfg)]
    if pair_index % 2 == 1:  # counterbalanced order: odd pairs run base first
        runs.reverse()
    out = []
    for exec_index, (role, label, cfg) in enumerate(runs):
        log = run_trial(task, cfg, cursor)
        out.append(TrialRecord(pair_index, exec_index, seed, role, label, log))
    return out


def run_experiment(factor: str, *, depth: int = 3, branching: int = 6,
                   n_trials: int = 16, n_tasks: int = 16, seed: int = 0,
                   config: MenuConfig | None = None,
                   cursor: CursorModel | None = None,
                   jobs: int = 1) -> list[TrialRecord]:
    """Counterbalanced paired trials; returns records in execution order.

    n_trials counts pairs (each pair runs both conditions on one seed and one
    task). Even pairs run the test condition first, odd pairs the base
    condition first, cancelling any order effect the way split study groups
    do. Results are invariant to ``jobs``.
    """
    if n_trials < 1 or n_trials % 2 != 0:
        raise ValueError("n_trials must be a positive even number of pairs")
    config = config or MenuConfig()
    cursor = cursor or CursorModel()
    menu = generate_task_menu(depth, branching, seed,
                              item_width=config.item_width,
                              item_height=config.item_height)
    tasks = sample_tasks(menu, min(n_tasks, len(menu.leaf_ids())), seed)
    base, test = _condition_pair(factor, config)
    pair_args = [
        (
            i,
            tasks[i % len(tasks)],
            base,
            test,
            replace(cursor, seed=_pair_seed(seed, i)),
        )
        for i in range(n_trials)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            nested = list(pool.map(_run_pair, pair_args, chunksize=8))
    else:
        nested = [_run_pair(a) for a in pair_args]
    records: list[TrialRecord] = []
    for group in sorted(nested, key=lambda g: g[0].pair_index):
        records.extend(sorted(group, key=lambda r: r.exec_index))
    return records


def summarize_records(factor: str, records: Sequence[TrialRecord]) -> ExperimentSummary:
    base = [r for r in records if r.role == "base"]
    test = [r for r in records if r.role == "test"]
    if not base or len(base) != len(test):
        raise ValueError("records must hold complete base/test pairs")

    def stats(rows: list[TrialRecord]) -> tuple[float, float]:
        xs = np.asarray([r.log.duration_ms for r in rows], dtype=float)
        std = float(np.std(xs, ddof=1)) if len(xs) > 1 else 0.0
        return float(np.mean(xs)), std

    base_mean, base_std = stats(base)
    test_mean, test_std = stats(test)
    per_task: list[TaskMeans] = []
    seen: dict[str, None] = {}
    for r in records:
        seen.setdefault(r.log.task.target_label, None)
    for label in seen:
        b = [r.log.duration_ms for r in base if r.log.task.target_label == label]
        t = [r.log.duration_ms for r in test if r.log.task.target_label == label]
        per_task.append(TaskMeans(label, float(np.mean(b)), float(np.mean(t)), len(b)))
    return ExperimentSummary(
        factor=factor,
        base_label=base[0].label,
        test_label=test[0].label,
        n_pairs=len(base),
        base_mean_ms=base_mean,
        base_std_ms=base_std,
        test_mean_ms=test_mean,
        test_std_ms=test_std,
        base_success=sum(1 for r in base if r.log.success),
        test_success=sum(1 for r in test if r.log.success),
        improvement_percent=(base_mean - test_mean) / base_mean * 100.0,
        per_task=tuple(per_task),
    )


def ab_experiment(factor: str, **kwargs) -> ExperimentSummary:
    """Run a counterbalanced paired experiment and summarize it.

    Accepts the same keyword arguments as :func:`run_experiment`.
    """
    return summarize_records(factor, run_experiment(factor, **kwargs))


# -- stable output formats -------------------------------------------------

CSV_HEADER = "seed,task,condition,duration_ms,path_exits,reopened,success"


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def trials_csv_lines(records: Iterable[TrialRecord]) -> list[str]:
    lines = [CSV_HEADER]
    for r in records:
        log = r.log
        lines.append(",".join([
            str(r.seed),
            log.task.target_label,
            r.label,
            _num(log.duration_ms),
            str(log.path_exits),
            str(log.reopened_submenus),
            "true" if log.success else "false",
        ]))
    return lines


def write_trials_csv(records: Iterable[TrialRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(trials_csv_lines(records)) + "\n")


def summary_to_dict(summary: ExperimentSummary) -> dict:
    return {
        "factor": summary.factor,
        "n_pairs": summary.n_pairs,
        "conditions": {
            "base": {
                "label": summary.base_label,
                "mean_duration_ms": summary.base_mean_ms,
                "std_duration_ms": summary.base_std_ms,
                "successes": summary.base_success,
            },
            "test": {
                "label": summary.test_label,
                "mean_duration_ms": summary.test_mean_ms,
                "std_duration_ms": summary.test_std_ms,
                "successes": summary.test_success,
            },
        },
        "improvement_percent": summary.improvement_percent,
        "per_task": [
            {
                "task": t.task,
                "base_mean_ms": t.base_mean_ms,
                "test_mean_ms": t.test_mean_ms,
                "n_pairs": t.n_pairs,
            }
            for t in summary.per_task
        ],
    }


def write_summary_json(summary: ExperimentSummary, path) -> None:
    import json

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary_to_dict(summary), fh, indent=2)
        fh.write("\n")
