"""Item-outline geometry for the wing expansion menu.

Every menu item is a closed path p1 -> p2 -> p3 -> p4 -> p1 where the three
straight segments are joined by a cubic Bezier between p3 and p4.  With the
cursor at horizontal fraction ``eta`` over an item that has ``gamma + 1``
children, the right edge stretches upward at p2 and downward at p3 so the item
can cover its own submenu; ``epsilon`` bends the lower edge between maximal
curvature (0) and a straight chord (1).

Coordinates are screen-style: x grows rightward, y grows downward, and each
outline lives in its item's local frame with the top-left corner at (0, 0).
All functions here are pure and all values immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

__all__ = [
    "DEFAULT_FLATTEN_TOLERANCE",
    "FORMULA_MODES",
    "Point",
    "ShapeParams",
    "ItemOutline",
    "FlatOutline",
    "compute_item_outline",
    "bezier_point",
    "flatten_outline",
    "contains_point",
    "outline_area",
    "outline_edges_at",
    "outline_vertical_extent",
    "right_edge_span",
    "wing_edge_is_straight",
]

DEFAULT_FLATTEN_TOLERANCE = 0.1  # px
FORMULA_MODES = ("literal", "single_alpha")

_AREA_TOLERANCE = 0.002  # px, fine flattening used for area computation
_MAX_SPLIT_DEPTH = 24


class Point(NamedTuple):
    x: float
    y: float


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _require_fraction(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class ShapeParams:
    """Variable bundle describing one item state.

    ``gamma`` is the item's child count minus one; items without a submenu to
    cover (leaves, and single-child items whose submenu is a lone row) carry
    gamma 0 and never expand.
    """

    width: float
    height: float
    eta: float = 0.0
    alpha: float = 1.0
    epsilon: float = 0.0
    gamma: int = 0

    def __post_init__(self) -> None:
        for name in ("width", "height"):
            value = _require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise ValueError(f"{name} must be > 0, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("eta", "alpha", "epsilon"):
            object.__setattr__(self, name, _require_fraction(name, getattr(self, name)))
        gamma = self.gamma
        if not isinstance(gamma, int) or isinstance(gamma, bool) or gamma < 0:
            raise ValueError(f"gamma must be an integer >= 0, got {gamma!r}")


@dataclass(frozen=True)
class ItemOutline:
    """Closed outline p1 -> p2 -> p3 -> (Bezier via c1, c2) -> p4 -> p1."""

    p1: Point
    p2: Point
    p3: Point
    p4: Point
    c1: Point
    c2: Point
    params: ShapeParams

    @property
    def width(self) -> float:
        return self.params.width

    @property
    def height(self) -> float:
        return self.params.height


@dataclass(frozen=True)
class FlatOutline:
    """Closed polygon approximation; first and last vertex are identical."""

    vertices: tuple[Point, ...]
    tolerance: float


def compute_item_outline(params: ShapeParams, formula_mode: str = "literal") -> ItemOutline:
    """Build the outline for one item state.

    The expansion is active only when eta > 0, alpha > 0 and gamma > 0;
    otherwise the outline is exactly the width x height rectangle with the
    Bezier handles resting on the bottom edge.

    ``formula_mode`` selects how alpha enters the p2 and handle formulas:
    "literal" applies it twice in p2 (quadratic attenuation) and once more in
    the handles, "single_alpha" applies it once everywhere.
    """
    if formula_mode not in FORMULA_MODES:
        raise ValueError(f"formula_mode must be one of {FORMULA_MODES}, got {formula_mode!r}")
    w, h = params.width, params.height
    eta, alpha, eps, gamma = params.eta, params.alpha, params.epsilon, params.gamma

    expands = eta > 0.0 and alpha > 0.0 and gamma > 0
    if not expands:
        p2y = 0.0
        p3y = h
        handle_scale = alpha
    else:
        if formula_mode == "literal":
            p2y = -alpha * (h * alpha * eta)
            handle_scale = alpha
        else:
            p2y = -alpha * h * eta
            handle_scale = 1.0
        p3y = h + alpha * (gamma * h * eta) - (h * alpha * eta)

    # Handle x positions 2/3 and 1/3 are fractions of the item width.
    c1 = Point(w * (2.0 / 3.0), h + handle_scale * ((p3y - h) * (2.0 / 3.0)) * eps)
    c2 = Point(w * (1.0 / 3.0), h + handle_scale * ((p3y - h) * (1.0 / 3.0)) * eps)
    return ItemOutline(
        p1=Point(0.0, 0.0),
        p2=Point(w, p2y),
        p3=Point(w, p3y),
        p4=Point(0.0, h),
        c1=c1,
        c2=c2,
        params=params,
    )


def bezier_point(t: float, start: Point, h1: Point, h2: Point, end: Point) -> Point:
    """Evaluate the cubic Bezier at t (clamped to [0, 1])."""
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else float(t)
    mt = 1.0 - t
    a = mt * mt * mt
    b = 3.0 * mt * mt * t
    c = 3.0 * mt * t * t
    d = t * t * t
    return Point(
        a * start.x + b * h1.x + c * h2.x + d * end.x,
        a * start.y + b * h1.y + c * h2.y + d * end.y,
    )


def _dist_to_chord(p: Point, a: Point, b: Point) -> float:
    vx, vy = b.x - a.x, b.y - a.y
    norm = math.hypot(vx, vy)
    if norm < 1e-12:
        return math.hypot(p.x - a.x, p.y - a.y)
    return abs((p.x - a.x) * vy - (p.y - a.y) * vx) / norm


def _flatten_cubic(p0: Point, h1: Point, h2: Point, p3: Point,
                   tolerance: float, depth: int, out: list[Point]) -> None:
    # Convex-hull bound: the curve never strays further from the chord than
    # its control points do, so this termination test is conservative.
    if depth >= _MAX_SPLIT_DEPTH or (
        _dist_to_chord(h1, p0, p3) <= tolerance and _dist_to_chord(h2, p0, p3) <= tolerance
    ):
        out.append(p3)
        return
    p01 = Point((p0.x + h1.x) / 2.0, (p0.y + h1.y) / 2.0)
    p12 = Point((h1.x + h2.x) / 2.0, (h1.y + h2.y) / 2.0)
    p23 = Point((h2.x + p3.x) / 2.0, (h2.y + p3.y) / 2.0)
    p012 = Point((p01.x + p12.x) / 2.0, (p01.y + p12.y) / 2.0)
    p123 = Point((p12.x + p23.x) / 2.0, (p12.y + p23.y) / 2.0)
    mid = Point((p012.x + p123.x) / 2.0, (p012.y + p123.y) / 2.0)
    _flatten_cubic(p0, p01, p012, mid, tolerance, depth + 1, out)
    _flatten_cubic(mid, p123, p23, p3, tolerance, depth + 1, out)


def flatten_outline(outline: ItemOutline, tolerance: float = DEFAULT_FLATTEN_TOLERANCE) -> FlatOutline:
    """Adaptively subdivide the Bezier edge into a closed polygon.

    Straight segments are copied verbatim; the curve is split until the chord
    deviation drops below ``tolerance``.
    """
    tolerance = float(tolerance)
    if not math.isfinite(tolerance) or tolerance <= 0.0:
        raise ValueError(f"tolerance must be > 0, got {tolerance!r}")
    verts: list[Point] = [outline.p1, outline.p2, outline.p3]
    _flatten_cubic(outline.p3, outline.c1, outline.c2, outline.p4, tolerance, 0, verts)
    verts.append(outline.p1)
    return FlatOutline(vertices=tuple(verts), tolerance=tolerance)


_flatten_cached = lru_cache(maxsize=512)(flatten_outline)


def contains_point(outline: ItemOutline, q: Point, tolerance: float = DEFAULT_FLATTEN_TOLERANCE) -> bool:
    """Even-odd membership test on the flattened outline.

    Points within ``tolerance`` of the true boundary may land on either side.
    """
    flat = _flatten_cached(outline, tolerance)
    verts = flat.vertices
    qx, qy = q
    inside = False
    for i in range(len(verts) - 1):
        ax, ay = verts[i]
        bx, by = verts[i + 1]
        if (ay > qy) != (by > qy):
            x_cross = ax + (qy - ay) * (bx - ax) / (by - ay)
            if qx < x_cross:
                inside = not inside
    return inside


def outline_area(outline: ItemOutline) -> float:
    """Enclosed area in square pixels (shoelace on a fine flattening)."""
    verts = flatten_outline(outline, _AREA_TOLERANCE).vertices
    acc = 0.0
    for i in range(len(verts) - 1):
        ax, ay = verts[i]
        bx, by = verts[i + 1]
        acc += ax * by - bx * ay
    return abs(acc) / 2.0


def outline_edges_at(outline: ItemOutline, x: float) -> tuple[float, float]:
    """(top y, bottom y) of the outline at horizontal position x.

    Exact: the handle x positions at 2/3 and 1/3 of the width make the Bezier
    x-coordinate linear in its parameter, so the lower edge is a function of x
    and the whole outline is the region between two graphs over [0, width].
    """
    w = outline.params.width
    u = x / w
    u = 0.0 if u < 0.0 else 1.0 if u > 1.0 else u
    top = outline.p2.y * u
    bottom = bezier_point(1.0 - u, outline.p3, outline.c1, outline.c2, outline.p4).y
    return top, bottom


def outline_vertical_extent(outline: ItemOutline, x: float) -> float:
    """Vertical thickness of the active area at horizontal position x."""
    top, bottom = outline_edges_at(outline, x)
    return bottom - top


def right_edge_span(outline: ItemOutline) -> float:
    """Length of the right edge, p3.y - p2.y."""
    return outline.p3.y - outline.p2.y


def wing_edge_is_straight(outline: ItemOutline, rel_tol: float = 1e-9) -> bool:
    """True when both handles are collinear with the chord p3-p4."""
    scale = max(outline.params.width, outline.params.height, abs(outline.p3.y))
    limit = rel_tol * scale
    return (
        _dist_to_chord(outline.c1, outline.p3, outline.p4) <= limit
        and _dist_to_chord(outline.c2, outline.p3, outline.p4) <= limit
    )
