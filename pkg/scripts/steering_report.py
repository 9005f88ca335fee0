#!/usr/bin/env python3
"""Steering-difficulty comparison: expanded wing vs plain rectangles.

For each target depth of a uniform menu, averages the index of difficulty
over all leaves at that depth under both conditions and prints the predicted
relative speedup.

Example:
    python3 scripts/steering_report.py --depth 4 --branching 5
"""

import argparse
from collections import defaultdict

from wingmenu.menu import MenuConfig
from wingmenu.simulate import generate_task_menu
from wingmenu.steering import ModelConstants, index_of_difficulty, predict_time, tunnel_for_target


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--branching", type=int, default=5)
    ap.add_argument("--eta-profile", type=float, default=1.0)
    ap.add_argument("--a", type=float, default=0.0, help="law intercept, seconds")
    ap.add_argument("--b", type=float, default=1.0, help="law slope, s per unit ID")
    args = ap.parse_args()

    menu = generate_task_menu(args.depth, args.branching, 0)
    wing = MenuConfig(alpha=1.0, epsilon=0.0)
    plain = MenuConfig(alpha=0.0, epsilon=0.0)
    k = ModelConstants(a=args.a, b=args.b)

    by_depth: dict[int, list[tuple[float, float]]] = defaultdict(list)
    for leaf in menu.leaf_ids():
        idw = index_of_difficulty(tunnel_for_target(menu, wing, leaf, args.eta_profile))
        idp = index_of_difficulty(tunnel_for_target(menu, plain, leaf, args.eta_profile))
        by_depth[menu.depth(leaf)].append((idw, idp))

    print(f"menu: depth={args.depth} branching={args.branching} "
          f"eta_profile={args.eta_profile}")
    print(f"{'depth':>5} {'leaves':>7} {'ID wing':>9} {'ID plain':>9} "
          f"{'t wing':>8} {'t plain':>8} {'speedup':>8}")
    for d in sorted(by_depth):
        rows = by_depth[d]
        idw = sum(r[0] for r in rows) / len(rows)
        idp = sum(r[1] for r in rows) / len(rows)
        tw, tp = predict_time(idw, k), predict_time(idp, k)
        print(f"{d:5d} {len(rows):7d} {idw:9.3f} {idp:9.3f} "
              f"{tw:8.3f} {tp:8.3f} {100 * (tp - tw) / tp:7.2f}%")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
