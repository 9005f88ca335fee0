"""HTTP boundary exposing the menu engine to the browser demo.

The frontend performs no geometry or menu logic of its own: it posts raw
input events (moves and clicks, with millisecond timestamps) and draws
whatever outlines come back.  Sessions are independent engine instances keyed
by id; inputs within a session must arrive with nondecreasing timestamps,
matching the engine's serialized-event contract.
"""

from __future__ import annotations

import itertools
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from pydantic import BaseModel

from wingmenu.geometry import Point, wing_edge_is_straight
from wingmenu.menu import MenuConfig, MenuModel, MenuTree, event_record, menu_from_dict
from wingmenu.svgout import render_snapshot

__all__ = ["create_app"]


class SessionRequest(BaseModel):
    menu: dict[str, Any]


class InputRequest(BaseModel):
    t_ms: float
    kind: str  # "move" | "click"
    x: float
    y: float


def _item_payload(tree: MenuTree, node_id: str) -> dict:
    node = tree.node(node_id)
    r = tree.rect(node_id)
    return {
        "id": node.id,
        "label": node.label,
        "rect": {"x": r.x, "y": r.y, "w": r.w, "h": r.h},
        "depth": tree.depth(node_id),
        "is_leaf": node.is_leaf,
    }


def _outline_payload(model: MenuModel) -> list[dict]:
    out = []
    for node_id, outline, opacity, z in model.visible_outlines():
        r = model.tree.rect(node_id)
        pts = {
            name: [getattr(outline, name).x + r.x, getattr(outline, name).y + r.y]
            for name in ("p1", "p2", "p3", "p4", "c1", "c2")
        }
        out.append({
            "node_id": node_id,
            "label": model.tree.node(node_id).label,
            "points": pts,
            "straight_edge": wing_edge_is_straight(outline),
            "opacity": opacity,
            "z": z,
            "hovered": node_id == model.hovered_id,
            "open": model.is_open(node_id),
        })
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="wingmenu engine")
    sessions: dict[str, tuple[MenuTree, MenuConfig, MenuModel]] = {}
    ids = itertools.count(1)

    def session(sid: str) -> tuple[MenuTree, MenuConfig, MenuModel]:
        try:
            return sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid}") from None

    @app.post("/sessions")
    def create_session(req: SessionRequest) -> dict:
        try:
            tree, config = menu_from_dict(req.menu)
        except (ValueError, KeyError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        sid = str(next(ids))
        model = MenuModel(tree, config)
        sessions[sid] = (tree, config, model)
        return {
            "session_id": sid,
            "config": {
                "alpha": config.alpha,
                "epsilon": config.epsilon,
                "item_width": config.item_width,
                "item_height": config.item_height,
                "hover_delay_tau": config.hover_delay_tau,
                "overlap_opacity": config.overlap_opacity,
                "formula_mode": config.formula_mode,
            },
            "items": [_item_payload(tree, n.id) for n in tree.walk()],
            "outlines": _outline_payload(model),
        }

    @app.post("/sessions/{sid}/input")
    def post_input(sid: str, req: InputRequest) -> dict:
        tree, config, model = session(sid)
        p = Point(req.x, req.y)
        try:
            if req.kind == "move":
                events = model.update_cursor(p, req.t_ms)
            elif req.kind == "click":
                events = model.select(p, req.t_ms)
            else:
                raise HTTPException(status_code=422, detail=f"unknown kind {req.kind!r}")
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {
            "events": [event_record(e) for e in events],
            "outlines": _outline_payload(model),
            "hovered": model.hovered_id,
            "open_path": model.open_path(),
        }

    @app.post("/sessions/{sid}/reset")
    def reset(sid: str) -> dict:
        tree, config, _ = session(sid)
        sessions[sid] = (tree, config, MenuModel(tree, config))
        return {"ok": True}

    @app.get("/sessions/{sid}/snapshot.svg")
    def snapshot(sid: str) -> Response:
        _, _, model = session(sid)
        return Response(content=render_snapshot(model), media_type="image/svg+xml")

    @app.delete("/sessions/{sid}")
    def close(sid: str) -> dict:
        sessions.pop(sid, None)
        return {"ok": True}

    return app
