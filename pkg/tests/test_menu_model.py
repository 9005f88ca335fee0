import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from wingmenu.geometry import Point, contains_point
from wingmenu.menu import (
    MenuConfig,
    MenuModel,
    MenuNode,
    MenuTree,
    compute_eta,
    format_event_line,
    load_menu_file,
    menu_from_dict,
    menu_to_dict,
    replay_inputs,
    save_menu_file,
)


def leaf(i):
    return MenuNode(id=i, label=i)


def fanout(prefix, n, depth):
    """Uniform subtree: ids are dotted index paths under prefix."""
    kids = []
    for i in range(1, n + 1):
        nid = f"{prefix}.{i}" if prefix else str(i)
        children = fanout(nid, n, depth - 1) if depth > 1 else ()
        kids.append(MenuNode(id=nid, label=nid, children=tuple(children)))
    return tuple(kids)


def demo_tree(config=None, n_children=11):
    """Six top-level items; item 1 carries a submenu of n_children leaves."""
    cfg = config or MenuConfig()
    items = [MenuNode("1", "1", tuple(leaf(f"1.{i}") for i in range(1, n_children + 1)))]
    items += [leaf(str(i)) for i in range(2, 7)]
    return MenuTree(items, cfg.item_width, cfg.item_height), cfg


class TestComputeEta:
    def test_far_left(self):
        assert compute_eta(50, 50, 100) == 0.0

    def test_far_right(self):
        assert compute_eta(150, 50, 100) == 1.0

    def test_interpolates(self):
        assert compute_eta(75, 50, 100) == 0.25

    def test_clamps(self):
        assert compute_eta(40, 50, 100) == 0.0
        assert compute_eta(500, 50, 100) == 1.0

    def test_rejects_zero_width(self):
        with pytest.raises(ValueError):
            compute_eta(0, 0, 0)


class TestLayout:
    def test_submenu_sits_at_right_edge_one_row_up(self):
        tree, _ = demo_tree()
        parent = tree.rect("1")
        first_child = tree.rect("1.1")
        assert first_child.x == parent.right
        assert first_child.y == parent.y - tree.item_height

    def test_children_stack_vertically(self):
        tree, _ = demo_tree()
        for i in range(1, 11):
            above = tree.rect(f"1.{i}")
            below = tree.rect(f"1.{i + 1}")
            assert below.y == above.bottom
            assert below.x == above.x

    def test_duplicate_ids_rejected(self):
        items = (leaf("a"), leaf("a"))
        with pytest.raises(ValueError):
            MenuTree(items, 100, 20)

    def test_path_and_depth(self):
        tree = MenuTree(fanout("", 3, 3), 100, 20)
        assert tree.path_to("2.3.1") == ["2", "2.3", "2.3.1"]
        assert tree.depth("2") == 1
        assert tree.depth("2.3.1") == 3


class TestHoverDelay:
    def test_no_open_below_tau(self):
        tree, cfg = demo_tree(MenuConfig(hover_delay_tau=250))
        model = MenuModel(tree, cfg)
        events = []
        for t in (0, 50, 100):
            events += model.update_cursor(Point(50, 10), t)
        assert not [e for e in events if e.kind == "opened"]
        assert not model.is_open("1")

    def test_opens_at_first_update_past_tau(self):
        tree, cfg = demo_tree(MenuConfig(hover_delay_tau=250))
        model = MenuModel(tree, cfg)
        events = []
        for t in (0, 100, 200, 300):
            events += model.update_cursor(Point(50, 10), t)
        opened = [e for e in events if e.kind == "opened"]
        assert [(e.node_id, e.t_ms) for e in opened] == [("1", 300)]

    def test_open_requires_positive_eta(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        for t in (0, 300, 600):
            model.update_cursor(Point(0.0, 10), t)  # far-left edge, eta = 0
        assert not model.is_open("1")

    def test_leaving_resets_hover_clock(self):
        tree, cfg = demo_tree(MenuConfig(hover_delay_tau=250))
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(50, 10), 0)
        # (10, 30) is outside item 1's wing at eta=0.5 and lands on item 2
        model.update_cursor(Point(10, 30), 200)
        assert model.hovered_id == "2"
        events = model.update_cursor(Point(50, 10), 260)  # back on item 1
        assert not model.is_open("1")
        events = model.update_cursor(Point(50, 10), 509)
        assert not model.is_open("1")
        events = model.update_cursor(Point(50, 10), 510)
        assert [e.kind for e in events] == ["opened"]

    def test_zero_tau_opens_immediately(self):
        tree, cfg = demo_tree(MenuConfig(hover_delay_tau=0))
        model = MenuModel(tree, cfg)
        events = model.update_cursor(Point(50, 10), 0)
        assert any(e.kind == "opened" and e.node_id == "1" for e in events)

    def test_time_going_backwards_rejected(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(50, 10), 100)
        with pytest.raises(ValueError):
            model.update_cursor(Point(50, 10), 99)
        with pytest.raises(ValueError):
            model.select(Point(50, 10), 99)


class TestZOrder:
    def test_wing_shadows_sibling_rect(self):
        tree, cfg = demo_tree(MenuConfig(epsilon=0.0, hover_delay_tau=250))
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(95, 10), 300)
        assert model.is_open("1")
        # (95, 90) lies in item 5's base rect but inside item 1's wing
        model.update_cursor(Point(95, 90), 320)
        assert model.hovered_id == "1"
        assert model.eta_of("1") == pytest.approx(0.95)

    def test_unhovered_sibling_regains_hit_after_collapse(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(10, 90), 100)  # left edge of item 5: outside wing
        assert model.hovered_id == "5"


class TestEtaLocality:
    def test_only_hovered_item_expands(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(60, 10), 0)
        assert model.eta_of("1") == pytest.approx(0.6)
        model.update_cursor(Point(10, 30), 50)  # item 2, clear of the wing
        assert model.hovered_id == "2"
        assert model.eta_of("1") == 0.0
        assert model.eta_of("2") == pytest.approx(0.1)

    def test_expansion_changed_events_fire_for_wing_items(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        ev = model.update_cursor(Point(60, 10), 0)
        assert [e.kind for e in ev] == ["expansion_changed"]
        ev = model.update_cursor(Point(30, 30), 10)  # leaf "2": no expansion event
        kinds = [e.kind for e in ev]
        assert kinds == ["expansion_changed"]  # only the reset of item 1
        assert ev[0].node_id == "1"


class TestSiblingSwitch:
    def test_opening_sibling_closes_previous_subtree_deepest_first(self):
        tree = MenuTree(fanout("", 3, 3), 100, 20)
        cfg = MenuConfig(hover_delay_tau=100)
        model = MenuModel(tree, cfg)
        # open 1, then 1.1 (children of "1" sit one row above its rect)
        model.update_cursor(Point(80, 10), 0)
        model.update_cursor(Point(80, 10), 100)
        assert model.is_open("1")
        r11 = tree.rect("1.1")
        p11 = Point(r11.x + 80, r11.cy)
        model.update_cursor(p11, 120)
        model.update_cursor(p11, 220)
        assert model.open_path() == ["1", "1.1"]
        # hover sibling "2" until its delay elapses
        r2 = tree.rect("2")
        p2 = Point(r2.x + 80, r2.cy)
        model.update_cursor(p2, 240)
        events = model.update_cursor(p2, 340)
        closed = [e.node_id for e in events if e.kind == "closed"]
        assert closed == ["1.1", "1"]
        assert any(e.kind == "opened" and e.node_id == "2" for e in events)
        assert model.open_path() == ["2"]

    def test_submenu_stays_open_when_cursor_leaves(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(95, 10), 300)
        assert model.is_open("1")
        # drift onto sibling 3 briefly, then away entirely
        model.update_cursor(Point(10, 50), 350)
        model.update_cursor(Point(-40, -40), 400)
        assert model.is_open("1")


class TestSelect:
    def test_click_leaf_selects_then_closes_all(self):
        tree = MenuTree(fanout("", 4, 3), 100, 20)
        cfg = MenuConfig(hover_delay_tau=50)
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(80, tree.rect("3").cy), 0)
        model.update_cursor(Point(80, tree.rect("3").cy), 60)
        r = tree.rect("3.1")
        model.update_cursor(Point(r.x + 80, r.cy), 80)
        model.update_cursor(Point(r.x + 80, r.cy), 140)
        assert model.open_path() == ["3", "3.1"]
        leaf_rect = tree.rect("3.1.4")
        events = model.select(Point(leaf_rect.x + 50, leaf_rect.cy), 150)
        assert [e.kind for e in events] == ["selected", "closed", "closed"]
        assert events[0].node_id == "3.1.4"
        assert [e.node_id for e in events[1:]] == ["3.1", "3"]
        assert model.open_path() == []

    def test_click_outside_closes_everything(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(95, 10), 300)
        events = model.select(Point(500, 500), 310)
        assert [e.kind for e in events] == ["closed"]
        assert model.open_path() == []

    def test_click_toggles_non_leaf(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        events = model.select(Point(50, 10), 0)
        assert [e.kind for e in events] == ["opened"]
        assert model.is_open("1")
        events = model.select(Point(50, 10), 10)
        assert [e.kind for e in events] == ["closed"]
        assert not model.is_open("1")


class TestVisibleOutlines:
    def test_plain_menu_document_order_full_opacity(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        rows = model.visible_outlines()
        assert [r[0] for r in rows] == ["1", "2", "3", "4", "5", "6"]
        assert all(r[2] == 1.0 for r in rows)
        assert [r[3] for r in rows] == list(range(6))

    def test_expanded_item_gets_overlap_opacity_and_top_z(self):
        tree, cfg = demo_tree(MenuConfig(overlap_opacity=0.75))
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        rows = {r[0]: r for r in model.visible_outlines()}
        assert rows["1"][2] == 0.75
        assert all(rows[str(i)][2] == 1.0 for i in range(2, 7))
        assert rows["1"][3] == max(r[3] for r in rows.values())

    def test_alpha_zero_never_translucent(self):
        tree, cfg = demo_tree(MenuConfig(alpha=0.0))
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(95, 10), 400)
        assert all(r[2] == 1.0 for r in model.visible_outlines())

    def test_deeper_items_draw_above(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        model.update_cursor(Point(95, 10), 0)
        model.update_cursor(Point(95, 10), 300)
        rows = model.visible_outlines()
        z = {r[0]: r[3] for r in rows}
        assert z["1.1"] > z["6"]


class TestExpansionReachability:
    @pytest.mark.parametrize("gamma", range(1, 13))
    def test_full_wing_covers_every_child_row(self, gamma):
        cfg = MenuConfig(alpha=1.0, epsilon=0.0)
        items = [MenuNode("p", "p", tuple(leaf(f"p.{i}") for i in range(gamma + 1)))]
        items += [leaf(str(i)) for i in range(2, 5)]
        tree = MenuTree(items, cfg.item_width, cfg.item_height)
        model = MenuModel(tree, cfg)
        prect = tree.rect("p")
        model.update_cursor(Point(prect.right - 1e-9, prect.cy), 0)
        outline = model.outline_for("p")
        for child in tree.node("p").children:
            crect = tree.rect(child.id)
            entry = Point(prect.w - 0.5, crect.cy - prect.y)
            assert contains_point(outline, entry), (gamma, child.id)


class TestDefinitionFilesAndReplay:
    def test_round_trip(self, tmp_path):
        doc = {
            "config": {"alpha": 0.8, "epsilon": 0.25, "item_width": 120,
                       "item_height": 24, "hover_delay_tau": 150,
                       "overlap_opacity": 0.6, "formula_mode": "single_alpha"},
            "items": [
                {"label": "File", "children": [{"label": "Open"}, {"label": "Save"}]},
                {"label": "Edit"},
            ],
        }
        tree, cfg = menu_from_dict(doc)
        assert cfg.alpha == 0.8
        assert tree.node("1").label == "File"
        assert tree.node("1.2").label == "Save"
        path = tmp_path / "menu.json"
        save_menu_file(path, tree, cfg)
        tree2, cfg2 = load_menu_file(path)
        assert cfg2 == cfg
        assert menu_to_dict(tree2, cfg2) == menu_to_dict(tree, cfg)

    def test_event_lines_have_stable_field_order(self):
        tree, cfg = demo_tree()
        model = MenuModel(tree, cfg)
        ev = model.update_cursor(Point(60, 10), 5)[0]
        line = format_event_line(ev)
        assert line == '{"t_ms":5,"kind":"expansion_changed","node_id":"1"}'
        assert list(json.loads(line)) == ["t_ms", "kind", "node_id"]

    def test_replay_reproduces_live_session(self):
        tree, cfg = demo_tree()
        inputs = [
            {"t_ms": 0, "kind": "move", "x": 95.0, "y": 10.0},
            {"t_ms": 300, "kind": "move", "x": 95.0, "y": 10.0},
            {"t_ms": 350, "kind": "move", "x": 110.0, "y": 35.0},
            {"t_ms": 700, "kind": "click", "x": 110.0, "y": 35.0},
        ]
        live = MenuModel(tree, cfg)
        expected = []
        for rec in inputs:
            p = Point(rec["x"], rec["y"])
            if rec["kind"] == "move":
                expected.extend(live.update_cursor(p, rec["t_ms"]))
            else:
                expected.extend(live.select(p, rec["t_ms"]))
        assert replay_inputs(tree, cfg, inputs) == expected


coords = st.tuples(
    st.floats(min_value=-30.0, max_value=360.0),
    st.floats(min_value=-60.0, max_value=320.0),
)
steps = st.lists(
    st.tuples(coords, st.integers(min_value=0, max_value=400), st.booleans()),
    min_size=1,
    max_size=40,
)


class TestTraceProperties:
    @given(steps)
    @settings(max_examples=120, deadline=None)
    def test_fuzzed_traces_hold_invariants(self, trace):
        tree = MenuTree(fanout("", 3, 3), 100, 20)
        cfg = MenuConfig(hover_delay_tau=120)
        model = MenuModel(tree, cfg)
        t = 0.0
        hover_started: dict[str, float] = {}
        events = []
        for (x, y), dt, click in trace:
            t += dt
            if click:
                got = model.select(Point(x, y), t)
            else:
                got = model.update_cursor(Point(x, y), t)
                if model.hovered_id is not None and model.hovered_id not in hover_started:
                    hover_started = {model.hovered_id: t}
                elif model.hovered_id is None:
                    hover_started = {}
                for e in got:
                    if e.kind == "opened":
                        assert e.t_ms - hover_started[e.node_id] >= cfg.hover_delay_tau
            events.extend(got)
            # single root-to-node chain
            open_ids = {n.id for n in tree.walk() if model.is_open(n.id)}
            assert open_ids == set(model.open_path())
            # eta locality
            for node in tree.walk():
                if node.id != model.hovered_id:
                    assert model.eta_of(node.id) == 0.0
        # timestamps never decrease
        assert all(a.t_ms <= b.t_ms for a, b in zip(events, events[1:]))

    @given(steps)
    @settings(max_examples=60, deadline=None)
    def test_replay_is_deterministic(self, trace):
        tree = MenuTree(fanout("", 3, 2), 100, 20)
        cfg = MenuConfig(hover_delay_tau=80)

        def run():
            model = MenuModel(tree, cfg)
            t = 0.0
            out = []
            for (x, y), dt, click in trace:
                t += dt
                fn = model.select if click else model.update_cursor
                out.extend(fn(Point(x, y), t))
            return [format_event_line(e) for e in out]

        assert run() == run()
