"""Steering-law difficulty of navigating a menu.

Movement through a constrained 2-D tunnel gets harder as the tunnel narrows;
the index of difficulty integrates the reciprocal tunnel width along the
path, ID = integral ds / W(s), and predicted time is affine in ID.  Applied
to a cascading menu, the tunnel through each ancestor item is as tall as the
item's live activation outline, so a wing-expanded menu yields a wider tunnel
and a lower ID than the same menu with expansion disabled.

Tunnel construction mirrors how a cursor actually traverses the menu: run
horizontally through each ancestor item (the outline growing with the
cursor's position fraction), then down the ancestor's right edge to the next
level's row, where the local width is the full right-edge span of the
expanded outline.  With expansion off every width collapses to the item
height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from wingmenu.geometry import (
    Point,
    ShapeParams,
    compute_item_outline,
    outline_vertical_extent,
    right_edge_span,
)
from wingmenu.menu import MenuConfig, MenuTree

__all__ = [
    "PathSample",
    "SteeringPath",
    "ModelConstants",
    "tunnel_for_target",
    "index_of_difficulty",
    "predict_time",
    "fit_constants",
]


class PathSample(NamedTuple):
    point: Point
    local_width: float


@dataclass(frozen=True)
class SteeringPath:
    """Sampled tunnel centerline with a local width at each sample."""

    samples: tuple[PathSample, ...]

    def __post_init__(self) -> None:
        if len(self.samples) < 2:
            raise ValueError("a steering path needs at least two samples")
        prev = None
        for pt, width in self.samples:
            if not (width > 0.0) or not math.isfinite(width):
                raise ValueError(f"local width must be > 0, got {width!r}")
            if prev is not None and pt == prev:
                raise ValueError("samples must strictly advance in arc length")
            prev = pt

    def arc_lengths(self) -> np.ndarray:
        pts = np.asarray([s.point for s in self.samples], dtype=float)
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        return np.concatenate([[0.0], np.cumsum(seg)])

    @property
    def length(self) -> float:
        return float(self.arc_lengths()[-1])


class ModelConstants(NamedTuple):
    """Affine law constants: time = a + b * ID (a in s, b in s per unit ID)."""

    a: float = 0.0
    b: float = 1.0


def _extent_at(config: MenuConfig, gamma: int, eta: float, x_fraction: float) -> float:
    params = ShapeParams(
        width=config.item_width,
        height=config.item_height,
        eta=eta,
        alpha=config.alpha,
        epsilon=config.epsilon,
        gamma=gamma,
    )
    outline = compute_item_outline(params, config.formula_mode)
    return outline_vertical_extent(outline, x_fraction * config.item_width)


class _TunnelBuilder:
    def __init__(self) -> None:
        self.points: list[Point] = []
        self.widths: list[float] = []

    def add(self, point: Point, width: float) -> None:
        if self.points and self.points[-1] == point:
            # corner between two legs: keep the narrower of the two widths
            self.widths[-1] = min(self.widths[-1], width)
            return
        self.points.append(point)
        self.widths.append(width)

    def build(self) -> SteeringPath:
        return SteeringPath(tuple(PathSample(p, w) for p, w in zip(self.points, self.widths)))


def tunnel_for_target(menu: MenuTree, config: MenuConfig, target_id: str,
                      eta_profile: float = 1.0, step: float = 2.0) -> SteeringPath:
    """Sampled steering tunnel from the menu's top level to ``target_id``.

    ``eta_profile`` scales how far right the traversing cursor is assumed to
    ride: at horizontal fraction u of an item, the outline is evaluated at
    eta = eta_profile * u.  The final item is traversed only to its center,
    the nominal click point.
    """
    if target_id not in menu:
        raise KeyError(f"unknown target id {target_id!r}")
    if step <= 0:
        raise ValueError("step must be > 0")
    eta_profile = min(max(float(eta_profile), 0.0), 1.0)
    path = menu.path_to(target_id)
    w = menu.item_width
    builder = _TunnelBuilder()

    def horizontal(node_id: str, end_fraction: float) -> None:
        rect = menu.rect(node_id)
        gamma = menu.node(node_id).gamma
        length = end_fraction * w
        n = max(2, int(math.ceil(length / step)) + 1)
        for u in np.linspace(0.0, end_fraction, n):
            width = _extent_at(config, gamma, eta_profile * float(u), float(u))
            builder.add(Point(rect.x + float(u) * w, rect.cy), width)

    for node_id, child_id in zip(path[:-1], path[1:]):
        horizontal(node_id, 1.0)
        rect = menu.rect(node_id)
        gamma = menu.node(node_id).gamma
        span = right_edge_span(
            compute_item_outline(
                ShapeParams(w, menu.item_height, eta_profile, config.alpha,
                            config.epsilon, gamma),
                config.formula_mode,
            )
        )
        y0, y1 = rect.cy, menu.rect(child_id).cy
        if y0 != y1:
            n = max(2, int(math.ceil(abs(y1 - y0) / step)) + 1)
            for y in np.linspace(y0, y1, n):
                builder.add(Point(rect.right, float(y)), span)
    horizontal(path[-1], 0.5)
    return builder.build()


def index_of_difficulty(path: SteeringPath) -> float:
    """Trapezoidal integral of 1 / local_width over arc length."""
    s = path.arc_lengths()
    inv = 1.0 / np.asarray([w for _, w in path.samples], dtype=float)
    return float(np.sum(np.diff(s) * (inv[:-1] + inv[1:]) / 2.0))


def predict_time(id_value: float, k: ModelConstants = ModelConstants()) -> float:
    """Predicted traversal time in seconds for a difficulty value."""
    if not k.b > 0:
        raise ValueError("slope b must be > 0")
    return k.a + k.b * id_value


def fit_constants(ids: Sequence[float], times: Sequence[float]) -> ModelConstants:
    """Least-squares fit of the affine law to observed (ID, time) pairs."""
    ids = np.asarray(ids, dtype=float)
    times = np.asarray(times, dtype=float)
    if ids.shape != times.shape or ids.size < 2:
        raise ValueError("need at least two (id, time) pairs of equal length")
    b, a = np.polyfit(ids, times, 1)
    return ModelConstants(a=float(a), b=float(b))
