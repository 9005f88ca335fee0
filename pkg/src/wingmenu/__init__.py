"""Wing-expansion cascading menu engine.

Subpackages:

- ``geometry``: item outlines, flattening, hit tests, areas.
- ``menu``: menu tree, config, and the cursor-driven state machine.
- ``steering``: steering-law tunnels and index-of-difficulty prediction.
- ``simulate``: task generation, synthetic-cursor trials, A/B experiments.
- ``svgout``: SVG snapshots of menu states.
"""

from wingmenu.geometry import (
    FlatOutline,
    ItemOutline,
    Point,
    ShapeParams,
    bezier_point,
    compute_item_outline,
    contains_point,
    flatten_outline,
    outline_area,
)
from wingmenu.menu import MenuConfig, MenuEvent, MenuModel, MenuNode, MenuTree, compute_eta

__all__ = [
    "FlatOutline",
    "ItemOutline",
    "Point",
    "ShapeParams",
    "bezier_point",
    "compute_item_outline",
    "contains_point",
    "flatten_outline",
    "outline_area",
    "MenuConfig",
    "MenuEvent",
    "MenuModel",
    "MenuNode",
    "MenuTree",
    "compute_eta",
]
