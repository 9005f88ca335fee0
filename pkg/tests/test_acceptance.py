"""Acceptance suite: one test per release criterion, each printing a verdict.

Run with ``pytest -s tests/test_acceptance.py`` to see the PASS lines as they
happen; without -s they appear in pytest's captured output.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from wingmenu.geometry import (
    Point,
    ShapeParams,
    compute_item_outline,
    contains_point,
    flatten_outline,
    outline_area,
    wing_edge_is_straight,
)
from wingmenu.menu import MenuConfig, MenuModel, MenuNode, MenuTree, format_event_line
from wingmenu.simulate import (
    CursorModel,
    generate_task_menu,
    run_experiment,
    summarize_records,
)
from wingmenu.steering import index_of_difficulty, tunnel_for_target

from oracles import dense_polygon, distance_to_polyline, winding_inside


def report(name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE PASS: {name}{suffix}")


def random_params(rng) -> dict:
    return dict(
        width=float(rng.uniform(20, 300)),
        height=float(rng.uniform(6, 60)),
        eta=float(rng.uniform(0, 1)),
        alpha=float(rng.uniform(0, 1)),
        epsilon=float(rng.uniform(0, 1)),
        gamma=int(rng.integers(0, 13)),
    )


class TestAcceptance:
    def test_geometry_degeneracy(self):
        start = time.perf_counter()
        rng = np.random.default_rng(101)
        for i in range(1000):
            kw = random_params(rng)
            if i % 2 == 0:
                kw["eta"] = 0.0
            else:
                kw["alpha"] = 0.0
            p = ShapeParams(**kw)
            flat = flatten_outline(compute_item_outline(p), 0.1)
            w, h = p.width, p.height
            expect = [(0, 0), (w, 0), (w, h), (0, h), (0, 0)]
            assert len(flat.vertices) == 5
            for v, e in zip(flat.vertices, expect):
                assert math.hypot(v.x - e[0], v.y - e[1]) <= 1e-6
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"degeneracy sweep took {elapsed:.2f}s"
        report("geometry degeneracy", f"1000 draws in {elapsed:.2f}s")

    def test_closed_form_checks(self):
        o = compute_item_outline(ShapeParams(100, 20, eta=1, alpha=1, epsilon=1, gamma=10))
        assert o.p2 == (100.0, -20.0)
        assert o.p3 == (100.0, 200.0)
        assert wing_edge_is_straight(o, rel_tol=1e-9)
        # shoelace oracle on the degenerate quadrilateral
        quad = [(0, 0), (100, -20), (100, 200), (0, 20)]
        acc = 0.0
        for (ax, ay), (bx, by) in zip(quad, quad[1:] + quad[:1]):
            acc += ax * by - bx * ay
        oracle = abs(acc) / 2.0
        assert oracle == 12000.0
        assert abs(outline_area(o) - 12000.0) <= 1.0
        report("closed-form checks", "p2, p3, collinearity, area=12000")

    def test_hit_test_oracle(self):
        start = time.perf_counter()
        rng = np.random.default_rng(77)
        agree = 0
        total = 0
        for _ in range(100):
            o = compute_item_outline(ShapeParams(**random_params(rng)))
            poly = dense_polygon(o, samples=768)
            lo = poly.min(axis=0) - 1.0
            hi = poly.max(axis=0) + 1.0
            pts = rng.uniform(lo, hi, size=(800, 2))
            pts = pts[distance_to_polyline(pts, poly) > 1.0]  # 1 px boundary band
            want = winding_inside(pts, poly)
            got = np.fromiter(
                (contains_point(o, Point(*q)) for q in pts), dtype=bool, count=len(pts)
            )
            agree += int((want == got).sum())
            total += len(pts)
        elapsed = time.perf_counter() - start
        rate = agree / total
        assert rate >= 0.999, f"agreement {rate:.5f}"
        assert elapsed < 30.0, f"hit-test sweep took {elapsed:.1f}s"
        report("hit-test oracle", f"{total} points, agreement {rate:.5f}, {elapsed:.1f}s")

    def test_area_monotonicity_lattice(self):
        grid = np.linspace(0.0, 1.0, 11)
        areas = np.empty((11, 11, 11))
        for i, eta in enumerate(grid):
            for j, alpha in enumerate(grid):
                for k, eps in enumerate(grid):
                    areas[i, j, k] = outline_area(
                        compute_item_outline(ShapeParams(100, 20, eta, alpha, eps, 10))
                    )
        tol = 1e-9 * areas.max()
        violations = (
            int((np.diff(areas, axis=0) < -tol).sum())
            + int((np.diff(areas, axis=1) < -tol).sum())
            + int((np.diff(areas, axis=2) < -tol).sum())
        )
        assert violations == 0
        report("area monotonicity", "11x11x11 lattice, zero violations")

    def test_state_machine_fuzz(self):
        def fanout(prefix, n, depth):
            out = []
            for i in range(1, n + 1):
                nid = f"{prefix}.{i}" if prefix else str(i)
                children = tuple(fanout(nid, n, depth - 1)) if depth > 1 else ()
                out.append(MenuNode(nid, nid, children))
            return out

        tree = MenuTree(tuple(fanout("", 3, 3)), 100, 20)
        cfg = MenuConfig(hover_delay_tau=120)
        parents = {n.id: tree.parent(n.id) for n in tree.walk()}
        rng = np.random.default_rng(2024)
        n_traces = 10_000
        for trace_idx in range(n_traces):
            with_clicks = trace_idx % 5 == 4  # 2000 traces also exercise clicks
            n_inputs = int(rng.integers(4, 14))
            xs = rng.uniform(-30, 360, n_inputs)
            ys = rng.uniform(-60, 320, n_inputs)
            dts = rng.integers(0, 300, n_inputs)
            clicks = rng.random(n_inputs) < (0.2 if with_clicks else 0.0)

            def run(collect):
                model = MenuModel(tree, cfg)
                t = 0.0
                hover_since: dict[str, float] = {}
                lines = []
                for x, y, dt, click in zip(xs, ys, dts, clicks):
                    t += float(dt)
                    p = Point(float(x), float(y))
                    if click:
                        events = model.select(p, t)
                    else:
                        events = model.update_cursor(p, t)
                        hov = model.hovered_id
                        if hov is not None and hov not in hover_since:
                            hover_since = {hov: t}
                        elif hov is None:
                            hover_since = {}
                        if not with_clicks:
                            for e in events:
                                if e.kind == "opened":
                                    assert e.t_ms - hover_since[e.node_id] >= cfg.hover_delay_tau
                    if collect:
                        lines.extend(format_event_line(e) for e in events)
                    open_ids = [n.id for n in tree.walk() if model.is_open(n.id)]
                    for nid in open_ids:
                        up = parents[nid]
                        assert up is None or model.is_open(up)
                    assert sorted(open_ids) == sorted(model.open_path())
                return lines

            first = run(collect=True)
            assert first == run(collect=True)  # bit-exact replay
        report("state machine fuzz", f"{n_traces} traces, tau bound + chain + replay")

    def test_steering_difficulty(self):
        # constant-width tunnel sanity: ID == L / W within 0.1%
        items = (MenuNode("a", "a"), MenuNode("b", "b"))
        tree = MenuTree(items, 200.0, 20.0)
        path = tunnel_for_target(tree, MenuConfig(alpha=0.0, item_width=200.0), "a")
        assert abs(index_of_difficulty(path) - (100.0 / 20.0)) / 5.0 < 0.001

        rng = np.random.default_rng(55)
        menus = 0
        targets = 0
        while menus < 50:
            branching = int(rng.integers(2, 13))
            max_depth = 1
            while max_depth < 4 and branching ** (max_depth + 1) <= 300:
                max_depth += 1
            depth = int(rng.integers(1, max_depth + 1))
            menu = generate_task_menu(depth, branching, menus)
            wing = MenuConfig(alpha=1.0, epsilon=0.0)
            rect = MenuConfig(alpha=0.0, epsilon=0.0)
            for target in menu.leaf_ids():
                idw = index_of_difficulty(tunnel_for_target(menu, wing, target, step=4.0))
                idr = index_of_difficulty(tunnel_for_target(menu, rect, target, step=4.0))
                assert idw <= idr + 1e-9, (branching, depth, target)
                if menu.depth(target) > 1:
                    assert idw < idr, (branching, depth, target)
                targets += 1
            menus += 1
        report("steering difficulty", f"{menus} menus, {targets} targets")

    def test_directional_simulation(self):
        start = time.perf_counter()
        records = run_experiment(
            "alpha", depth=3, branching=6, n_trials=400, seed=7,
            cursor=CursorModel(jitter_sigma=3.0),
        )
        summary = summarize_records("alpha", records)
        elapsed = time.perf_counter() - start
        assert summary.improvement_percent > 0.0
        assert summary.base_success == summary.n_pairs
        assert summary.test_success == summary.n_pairs
        assert elapsed < 120.0, f"simulation took {elapsed:.1f}s"
        report(
            "directional simulation",
            f"improvement {summary.improvement_percent:.2f}% over {summary.n_pairs} "
            f"pairs in {elapsed:.1f}s",
        )

    def test_cli_golden(self, tmp_path):
        args = [
            sys.executable, "-m", "wingmenu", "simulate",
            "--factor", "alpha", "--depth", "2", "--branching", "3",
            "--trials", "6", "--seed", "21", "--alpha", "1.0", "--epsilon", "0.0",
            "--tau", "250", "--jitter", "2.0",
        ]
        outs = []
        for name, jobs in (("r1", "1"), ("r2", "1"), ("r3", "2")):
            out = tmp_path / name
            subprocess.run([*args, "--out", str(out), "--jobs", jobs],
                           check=True, capture_output=True)
            outs.append(out)
        csvs = [(o / "trials.csv").read_bytes() for o in outs]
        jsons = [(o / "summary.json").read_bytes() for o in outs]
        assert csvs[0] == csvs[1] == csvs[2]
        assert jsons[0] == jsons[1] == jsons[2]
        doc = json.loads(jsons[0])
        assert doc["n_pairs"] == 6
        report("cli golden", "byte-identical across runs and jobs=1,2")
