"""Hierarchical menu state machine with cursor-driven wing expansion.

A :class:`MenuModel` owns one menu instance and consumes a serialized stream
of cursor updates and clicks with millisecond timestamps.  Hovering an item
expands its outline immediately with the cursor's horizontal fraction (eta);
opening the hovered item's submenu additionally requires a continuous hover of
at least ``hover_delay_tau`` milliseconds, so brief touches never open
anything.  Opened submenus stay open until a sibling's delay elapses or a
click intervenes.

Layout convention: submenus cascade to the right, and a submenu column is
vertically aligned so its top sits one item height above its parent row.  At
full expansion the parent's right edge then spans exactly the submenu height,
covering every child row.

The whole module is deterministic: replaying the same input sequence on a
fresh model yields the same events.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from wingmenu.geometry import (
    FORMULA_MODES,
    ItemOutline,
    Point,
    ShapeParams,
    compute_item_outline,
    outline_edges_at,
)

__all__ = [
    "Rect",
    "MenuNode",
    "MenuTree",
    "MenuConfig",
    "ItemState",
    "MenuEvent",
    "MenuModel",
    "compute_eta",
    "menu_from_dict",
    "menu_to_dict",
    "load_menu_file",
    "save_menu_file",
    "event_record",
    "format_event_line",
    "replay_inputs",
]


class Rect(NamedTuple):
    x: float
    y: float
    w: float
    h: float

    @property
    def right(self) -> float:
        return self.x + self.w

    @property
    def bottom(self) -> float:
        return self.y + self.h

    @property
    def cx(self) -> float:
        return self.x + self.w / 2.0

    @property
    def cy(self) -> float:
        return self.y + self.h / 2.0

    def contains(self, p: Point) -> bool:
        return self.x <= p[0] <= self.right and self.y <= p[1] <= self.bottom


@dataclass(frozen=True)
class MenuNode:
    id: str
    label: str
    children: tuple["MenuNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def gamma(self) -> int:
        return len(self.children) - 1 if self.children else 0


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else float(v)


@dataclass(frozen=True)
class MenuConfig:
    """Developer-set menu parameters.

    alpha, epsilon and overlap_opacity are clamped into [0, 1] here (lenient
    shell); the geometry layer itself rejects out-of-range values.
    """

    alpha: float = 1.0
    epsilon: float = 0.0
    item_width: float = 100.0
    item_height: float = 20.0
    hover_delay_tau: float = 250.0
    overlap_opacity: float = 0.75
    formula_mode: str = "literal"

    def __post_init__(self) -> None:
        if self.item_width <= 0 or self.item_height <= 0:
            raise ValueError("item_width and item_height must be > 0")
        if self.hover_delay_tau < 0:
            raise ValueError("hover_delay_tau must be >= 0")
        if self.formula_mode not in FORMULA_MODES:
            raise ValueError(f"formula_mode must be one of {FORMULA_MODES}")
        object.__setattr__(self, "alpha", _clamp01(self.alpha))
        object.__setattr__(self, "epsilon", _clamp01(self.epsilon))
        object.__setattr__(self, "overlap_opacity", _clamp01(self.overlap_opacity))


class MenuTree:
    """Menu hierarchy plus per-node base rectangles.

    Children of one parent are stacked vertically with identical width and
    height; each submenu column starts at its parent's right edge with its top
    one item height above the parent row.
    """

    def __init__(self, items: Iterable[MenuNode], item_width: float, item_height: float,
                 origin: tuple[float, float] = (0.0, 0.0)) -> None:
        self.items: tuple[MenuNode, ...] = tuple(items)
        if not self.items:
            raise ValueError("menu needs at least one top-level item")
        if item_width <= 0 or item_height <= 0:
            raise ValueError("item dimensions must be > 0")
        self.item_width = float(item_width)
        self.item_height = float(item_height)
        self.origin = (float(origin[0]), float(origin[1]))

        self._nodes: dict[str, MenuNode] = {}
        self._parent: dict[str, str | None] = {}
        self._depth: dict[str, int] = {}
        self._rect: dict[str, Rect] = {}

        w, h = self.item_width, self.item_height
        ox, oy = self.origin

        def place(nodes: tuple[MenuNode, ...], parent: str | None, depth: int,
                  col_x: float, top_y: float) -> None:
            for i, node in enumerate(nodes):
                if node.id in self._nodes:
                    raise ValueError(f"duplicate node id {node.id!r}")
                self._nodes[node.id] = node
                self._parent[node.id] = parent
                self._depth[node.id] = depth
                rect = Rect(col_x, top_y + i * h, w, h)
                self._rect[node.id] = rect
                if node.children:
                    place(node.children, node.id, depth + 1, rect.right, rect.y - h)

        place(self.items, None, 1, ox, oy)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def node(self, node_id: str) -> MenuNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id!r}") from None

    def rect(self, node_id: str) -> Rect:
        self.node(node_id)
        return self._rect[node_id]

    def parent(self, node_id: str) -> str | None:
        self.node(node_id)
        return self._parent[node_id]

    def depth(self, node_id: str) -> int:
        """1 for top-level items, growing with submenu depth."""
        self.node(node_id)
        return self._depth[node_id]

    def path_to(self, node_id: str) -> list[str]:
        """Ids from the top-level ancestor down to node_id inclusive."""
        self.node(node_id)
        path = [node_id]
        while (up := self._parent[path[-1]]) is not None:
            path.append(up)
        path.reverse()
        return path

    def siblings(self, node_id: str) -> tuple[str, ...]:
        parent = self.parent(node_id)
        group = self.items if parent is None else self.node(parent).children
        return tuple(n.id for n in group if n.id != node_id)

    def walk(self) -> Iterator[MenuNode]:
        stack = list(reversed(self.items))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaf_ids(self) -> list[str]:
        return [n.id for n in self.walk() if n.is_leaf]

    def column_rect(self, node_ids: Iterable[str]) -> Rect:
        """Bounding rectangle of the given nodes' base rects."""
        rects = [self.rect(n) for n in node_ids]
        if not rects:
            raise ValueError("empty node set")
        x0 = min(r.x for r in rects)
        y0 = min(r.y for r in rects)
        x1 = max(r.right for r in rects)
        y1 = max(r.bottom for r in rects)
        return Rect(x0, y0, x1 - x0, y1 - y0)

    def root_column_rect(self) -> Rect:
        return self.column_rect(n.id for n in self.items)

    def submenu_rect(self, node_id: str) -> Rect:
        node = self.node(node_id)
        if not node.children:
            raise ValueError(f"{node_id!r} has no submenu")
        return self.column_rect(c.id for c in node.children)


@dataclass
class ItemState:
    node_id: str
    hovered: bool = False
    hover_since: float | None = None
    eta: float = 0.0
    open: bool = False


@dataclass(frozen=True)
class MenuEvent:
    kind: str  # opened | closed | selected | expansion_changed
    node_id: str
    t_ms: float


def compute_eta(cursor_x: float, item_left: float, item_width: float) -> float:
    """Horizontal cursor fraction over an item: 0 at the far left, 1 far right."""
    if item_width <= 0:
        raise ValueError("item_width must be > 0")
    return _clamp01((cursor_x - item_left) / item_width)


class MenuModel:
    """Single-owner, serialized-event menu state machine."""

    def __init__(self, tree: MenuTree, config: MenuConfig) -> None:
        self.tree = tree
        self.config = config
        self._state: dict[str, ItemState] = {
            node.id: ItemState(node.id) for node in tree.walk()
        }
        self._hovered: str | None = None
        self._last_t: float | None = None
        self._stamp = 0
        self._stamps: dict[str, int] = {}

    # -- introspection -------------------------------------------------

    @property
    def hovered_id(self) -> str | None:
        return self._hovered

    def is_open(self, node_id: str) -> bool:
        return self._state[node_id].open

    def eta_of(self, node_id: str) -> float:
        return self._state[node_id].eta

    def state_of(self, node_id: str) -> ItemState:
        st = self._state[node_id]
        return ItemState(st.node_id, st.hovered, st.hover_since, st.eta, st.open)

    def open_path(self) -> list[str]:
        """Open nodes ordered from the top level downward."""
        chain: list[str] = []
        group = self.tree.items
        while True:
            nxt = [n for n in group if self._state[n.id].open]
            if not nxt:
                return chain
            # Invariant: at most one open child per level.
            chain.append(nxt[0].id)
            group = nxt[0].children

    def outline_for(self, node_id: str) -> ItemOutline:
        node = self.tree.node(node_id)
        st = self._state[node_id]
        params = ShapeParams(
            width=self.tree.item_width,
            height=self.tree.item_height,
            eta=st.eta if st.hovered else 0.0,
            alpha=self.config.alpha,
            epsilon=self.config.epsilon,
            gamma=node.gamma,
        )
        return compute_item_outline(params, self.config.formula_mode)

    def visible_ids(self) -> list[str]:
        """Document-ordered ids of every currently shown item."""
        out = [n.id for n in self.tree.items]
        for open_id in self.open_path():
            out.extend(c.id for c in self.tree.node(open_id).children)
        return out

    # -- hit testing ----------------------------------------------------

    def _outline_contains(self, node_id: str, p: Point) -> bool:
        rect = self.tree.rect(node_id)
        lx, ly = p[0] - rect.x, p[1] - rect.y
        if not 0.0 <= lx <= rect.w:
            return False
        outline = self.outline_for(node_id)
        top, bottom = outline_edges_at(outline, lx)
        return top <= ly <= bottom

    def hit_test(self, p: Point) -> str | None:
        """Topmost item under p: expanded/open items shadow their siblings."""
        visible = self.visible_ids()

        def priority(entry: tuple[int, str]) -> tuple[int, int, int, int, int]:
            idx, node_id = entry
            st = self._state[node_id]
            return (
                self.tree.depth(node_id),
                1 if st.eta > 0.0 else 0,
                1 if st.open else 0,
                self._stamps.get(node_id, 0),
                -idx,
            )

        for _, node_id in sorted(enumerate(visible), key=priority, reverse=True):
            if self._outline_contains(node_id, p):
                return node_id
        return None

    # -- state transitions ----------------------------------------------

    def _check_time(self, now: float) -> None:
        if self._last_t is not None and now < self._last_t:
            raise ValueError(f"time went backwards: {now} < {self._last_t}")

    def _expandable(self, node_id: str) -> bool:
        node = self.tree.node(node_id)
        return node.gamma > 0 and self.config.alpha > 0.0

    def _bump(self, node_id: str) -> None:
        self._stamp += 1
        self._stamps[node_id] = self._stamp

    def _close_subtree(self, node_id: str, now: float, events: list[MenuEvent]) -> None:
        """Close node_id and any open descendants, deepest first."""
        st = self._state[node_id]
        if not st.open:
            return
        for child in self.tree.node(node_id).children:
            self._close_subtree(child.id, now, events)
        st.open = False
        events.append(MenuEvent("closed", node_id, now))

    def _close_open_sibling(self, node_id: str, now: float, events: list[MenuEvent]) -> None:
        for sib in self.tree.siblings(node_id):
            if self._state[sib].open:
                self._close_subtree(sib, now, events)

    def _drop_hidden_hover(self) -> None:
        if self._hovered is not None and self._hovered not in set(self.visible_ids()):
            st = self._state[self._hovered]
            st.hovered = False
            st.hover_since = None
            st.eta = 0.0
            self._hovered = None

    def update_cursor(self, cursor: Point, now: float) -> list[MenuEvent]:
        """Feed one cursor position; returns the events it triggered."""
        self._check_time(now)
        self._last_t = now
        events: list[MenuEvent] = []

        hit = self.hit_test(cursor)
        if hit != self._hovered:
            if self._hovered is not None:
                prev = self._state[self._hovered]
                prev.hovered = False
                prev.hover_since = None
                if prev.eta != 0.0:
                    prev.eta = 0.0
                    if self._expandable(prev.node_id):
                        events.append(MenuEvent("expansion_changed", prev.node_id, now))
            self._hovered = hit
            if hit is not None:
                st = self._state[hit]
                st.hovered = True
                st.hover_since = now

        if hit is not None:
            st = self._state[hit]
            rect = self.tree.rect(hit)
            eta = compute_eta(cursor[0], rect.x, rect.w)
            if eta != st.eta:
                was_zero = st.eta == 0.0
                st.eta = eta
                if self._expandable(hit):
                    if was_zero and eta > 0.0:
                        self._bump(hit)
                    events.append(MenuEvent("expansion_changed", hit, now))
            node = self.tree.node(hit)
            assert st.hover_since is not None
            if (
                node.children
                and not st.open
                and st.eta > 0.0
                and now - st.hover_since >= self.config.hover_delay_tau
            ):
                self._close_open_sibling(hit, now, events)
                st.open = True
                self._bump(hit)
                events.append(MenuEvent("opened", hit, now))
                self._drop_hidden_hover()
        return events

    def select(self, cursor: Point, now: float) -> list[MenuEvent]:
        """Click at cursor: select a leaf, toggle a submenu, or dismiss."""
        self._check_time(now)
        self._last_t = now
        events: list[MenuEvent] = []
        hit = self.hit_test(cursor)

        if hit is None:
            self._close_all(now, events)
            return events

        node = self.tree.node(hit)
        if node.is_leaf:
            events.append(MenuEvent("selected", hit, now))
            self._close_all(now, events)
            return events

        st = self._state[hit]
        if st.open:
            self._close_subtree(hit, now, events)
        else:
            self._close_open_sibling(hit, now, events)
            st.open = True
            self._bump(hit)
            events.append(MenuEvent("opened", hit, now))
        self._drop_hidden_hover()
        return events

    def _close_all(self, now: float, events: list[MenuEvent]) -> None:
        for item in self.tree.items:
            self._close_subtree(item.id, now, events)
        for st in self._state.values():
            st.hovered = False
            st.hover_since = None
            st.eta = 0.0
        self._hovered = None

    # -- rendering support ------------------------------------------------

    def visible_outlines(self) -> list[tuple[str, ItemOutline, float, int]]:
        """Draw-ordered (node_id, outline, opacity, z) for every shown item.

        z grows with menu depth and expansion recency; an outline that spills
        into a sibling's base rectangle carries the overlap opacity so covered
        labels stay readable.
        """
        visible = self.visible_ids()
        order = sorted(
            enumerate(visible),
            key=lambda e: (self.tree.depth(e[1]), self._stamps.get(e[1], 0), e[0]),
        )
        out: list[tuple[str, ItemOutline, float, int]] = []
        for z, (_, node_id) in enumerate(order):
            outline = self.outline_for(node_id)
            opacity = 1.0
            if self._overlaps_sibling(node_id, outline):
                opacity = self.config.overlap_opacity
            out.append((node_id, outline, opacity, z))
        return out

    def _overlaps_sibling(self, node_id: str, outline: ItemOutline) -> bool:
        # Sibling rects share the item's x range, and the outline's vertical
        # reach is widest at the right edge, so a positive-length overlap of
        # [p2.y, p3.y] with a sibling row implies a positive-area overlap.
        rect = self.tree.rect(node_id)
        lo, hi = outline.p2.y, outline.p3.y
        for sib in self.tree.siblings(node_id):
            srect = self.tree.rect(sib)
            s1, s2 = srect.y - rect.y, srect.bottom - rect.y
            if min(hi, s2) - max(lo, s1) > 1e-9:
                return True
        return False


# -- menu definition files and event logs ---------------------------------


def _node_from_dict(spec: dict, path: str) -> MenuNode:
    label = str(spec.get("label", path))
    node_id = str(spec.get("id", path))
    children = tuple(
        _node_from_dict(child, f"{path}.{i + 1}")
        for i, child in enumerate(spec.get("children", ()))
    )
    return MenuNode(id=node_id, label=label, children=children)


def menu_from_dict(doc: dict) -> tuple[MenuTree, MenuConfig]:
    """Build a menu from its definition document.

    The document carries a ``config`` block and a nested ``items`` tree of
    labels; node ids default to their 1-based index path ("2.3.1").
    """
    cfg_doc = dict(doc.get("config", {}))
    config = MenuConfig(
        alpha=float(cfg_doc.get("alpha", 1.0)),
        epsilon=float(cfg_doc.get("epsilon", 0.0)),
        item_width=float(cfg_doc.get("item_width", 100.0)),
        item_height=float(cfg_doc.get("item_height", 20.0)),
        hover_delay_tau=float(cfg_doc.get("hover_delay_tau", 250.0)),
        overlap_opacity=float(cfg_doc.get("overlap_opacity", 0.75)),
        formula_mode=str(cfg_doc.get("formula_mode", "literal")),
    )
    items_doc = doc.get("items")
    if not items_doc:
        raise ValueError("menu definition has no items")
    items = tuple(_node_from_dict(item, str(i + 1)) for i, item in enumerate(items_doc))
    origin = tuple(doc.get("origin", (0.0, 0.0)))
    tree = MenuTree(items, config.item_width, config.item_height, origin=origin)
    return tree, config


def _node_to_dict(node: MenuNode) -> dict:
    out: dict = {"id": node.id, "label": node.label}
    if node.children:
        out["children"] = [_node_to_dict(c) for c in node.children]
    return out


def menu_to_dict(tree: MenuTree, config: MenuConfig) -> dict:
    return {
        "config": {
            "alpha": config.alpha,
            "epsilon": config.epsilon,
            "item_width": config.item_width,
            "item_height": config.item_height,
            "hover_delay_tau": config.hover_delay_tau,
            "overlap_opacity": config.overlap_opacity,
            "formula_mode": config.formula_mode,
        },
        "origin": list(tree.origin),
        "items": [_node_to_dict(n) for n in tree.items],
    }


def load_menu_file(path: str) -> tuple[MenuTree, MenuConfig]:
    with open(path, "r", encoding="utf-8") as fh:
        return menu_from_dict(json.load(fh))


def save_menu_file(path: str, tree: MenuTree, config: MenuConfig) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(menu_to_dict(tree, config), fh, indent=2)
        fh.write("\n")


def event_record(event: MenuEvent) -> dict:
    """Stable-order record for one event: t_ms, kind, node_id."""
    return {"t_ms": event.t_ms, "kind": event.kind, "node_id": event.node_id}


def format_event_line(event: MenuEvent) -> str:
    return json.dumps(event_record(event), separators=(",", ":"))


def replay_inputs(tree: MenuTree, config: MenuConfig, inputs: Iterable[dict]) -> list[MenuEvent]:
    """Drive a fresh model with raw input records.

    Each record is {"t_ms": float, "kind": "move"|"click", "x": px, "y": px}.
    Returns every emitted event in order.
    """
    model = MenuModel(tree, config)
    events: list[MenuEvent] = []
    for rec in inputs:
        p = Point(float(rec["x"]), float(rec["y"]))
        t = rec["t_ms"]  # keep int/float as recorded so logged lines round-trip
        kind = rec["kind"]
        if kind == "move":
            events.extend(model.update_cursor(p, t))
        elif kind == "click":
            events.extend(model.select(p, t))
        else:
            raise ValueError(f"unknown input kind {kind!r}")
    return events
