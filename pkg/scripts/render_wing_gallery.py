#!/usr/bin/env python3
"""Render a small SVG gallery of wing shapes and an opened cascade.

Writes single-item snapshots for curvature settings 0, 0.5 and 1 at full
expansion, plus a menu opened along a chain with the last item hovered.

Example:
    python3 scripts/render_wing_gallery.py --out gallery/
"""

import argparse
from pathlib import Path

from wingmenu.geometry import Point
from wingmenu.menu import MenuConfig, MenuModel, MenuNode, MenuTree
from wingmenu.simulate import generate_task_menu
from wingmenu.svgout import render_snapshot


def single_item(epsilon: float) -> MenuModel:
    children = tuple(MenuNode(f"m.{i}", f"m.{i}") for i in range(11))
    tree = MenuTree((MenuNode("m", "item", children),), 100.0, 20.0, origin=(0.0, 220.0))
    cfg = MenuConfig(alpha=1.0, epsilon=epsilon, hover_delay_tau=0.0)
    model = MenuModel(tree, cfg)
    r = tree.rect("m")
    model.update_cursor(Point(r.right - 1e-6, r.cy), 1.0)
    return model


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="gallery")
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--branching", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for eps in (0.0, 0.5, 1.0):
        name = f"wing_eps_{eps:g}.svg"
        (out / name).write_text(render_snapshot(single_item(eps)), encoding="utf-8")
        print("wrote", out / name)

    menu = generate_task_menu(args.depth, args.branching, 0)
    cfg = MenuConfig(alpha=1.0, epsilon=0.0, hover_delay_tau=0.0)
    model = MenuModel(menu, cfg)
    target = menu.leaf_ids()[len(menu.leaf_ids()) // 2]
    t = 0.0
    for nid in menu.path_to(target)[:-1]:
        r = menu.rect(nid)
        t += 1.0
        model.update_cursor(Point(r.x + 0.95 * r.w, r.cy), t)
    (out / "cascade_open.svg").write_text(render_snapshot(model), encoding="utf-8")
    print("wrote", out / "cascade_open.svg")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
