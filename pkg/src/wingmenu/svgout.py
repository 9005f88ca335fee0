"""Standalone SVG snapshots of live menu states.

Outlines are drawn back-to-front in the model's z order with their overlap
opacity, then all labels on top so covered text stays legible.  Straight
lower edges (expansion off, or handles collinear with the chord) are emitted
as line segments; only genuinely curved wings produce cubic path commands.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from wingmenu.geometry import ItemOutline, wing_edge_is_straight
from wingmenu.menu import MenuModel

__all__ = ["render_snapshot"]

_FILL_PLAIN = "#f4f4f2"
_FILL_OPEN = "#e4eaf3"
_FILL_EXPANDED = "#cdddf2"
_STROKE = "#3a3a3a"


def _n(v: float) -> str:
    s = f"{v:.2f}"
    s = s.rstrip("0").rstrip(".") if "." in s else s
    return "0" if s == "-0" else s


def _outline_path(outline: ItemOutline, ox: float, oy: float) -> str:
    pts = {
        name: (getattr(outline, name).x + ox, getattr(outline, name).y + oy)
        for name in ("p1", "p2", "p3", "p4", "c1", "c2")
    }
    d = (
        f"M {_n(pts['p1'][0])} {_n(pts['p1'][1])} "
        f"L {_n(pts['p2'][0])} {_n(pts['p2'][1])} "
        f"L {_n(pts['p3'][0])} {_n(pts['p3'][1])} "
    )
    if wing_edge_is_straight(outline):
        d += f"L {_n(pts['p4'][0])} {_n(pts['p4'][1])} "
    else:
        d += (
            f"C {_n(pts['c1'][0])} {_n(pts['c1'][1])}, "
            f"{_n(pts['c2'][0])} {_n(pts['c2'][1])}, "
            f"{_n(pts['p4'][0])} {_n(pts['p4'][1])} "
        )
    return d + "Z"


def render_snapshot(model: MenuModel, margin: float = 12.0) -> str:
    """Render every visible outline and label into one SVG document."""
    rows = model.visible_outlines()
    tree = model.tree
    xs: list[float] = []
    ys: list[float] = []
    shapes: list[str] = []
    texts: list[str] = []
    font = max(8.0, 0.55 * tree.item_height)

    for node_id, outline, opacity, _z in rows:
        rect = tree.rect(node_id)
        xs += [rect.x, rect.x + outline.width]
        ys += [rect.y + min(0.0, outline.p2.y), rect.y + max(outline.height, outline.p3.y)]
        st = model.state_of(node_id)
        fill = _FILL_EXPANDED if st.eta > 0 else _FILL_OPEN if st.open else _FILL_PLAIN
        attrs = f'fill="{fill}" stroke="{_STROKE}" stroke-width="1"'
        if opacity < 1.0:
            attrs += f' fill-opacity="{_n(opacity)}"'
        shapes.append(f'<path d="{_outline_path(outline, rect.x, rect.y)}" {attrs}/>')
        label = escape(tree.node(node_id).label)
        tx = _n(rect.x + 6.0)
        ty = _n(rect.cy + font * 0.36)
        texts.append(
            f'<text x="{tx}" y="{ty}" font-family="sans-serif" '
            f'font-size="{_n(font)}" fill="#111">{label}</text>'
        )

    x0, y0 = min(xs) - margin, min(ys) - margin
    bw, bh = max(xs) - min(xs) + 2 * margin, max(ys) - min(ys) + 2 * margin
    body = "\n".join(["  " + s for s in shapes + texts])
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_n(x0)} {_n(y0)} {_n(bw)} {_n(bh)}" '
        f'width="{_n(bw)}" height="{_n(bh)}">\n{body}\n</svg>\n'
    )
