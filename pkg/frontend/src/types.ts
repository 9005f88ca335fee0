/** Wire types shared with the engine's HTTP boundary. */

export interface RectDef {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface MenuConfigDef {
  alpha: number;
  epsilon: number;
  item_width: number;
  item_height: number;
  hover_delay_tau: number;
  overlap_opacity: number;
  formula_mode: string;
}

export interface MenuItemDef {
  label: string;
  id?: string;
  children?: MenuItemDef[];
}

export interface MenuDefinition {
  config: Partial<MenuConfigDef>;
  origin?: [number, number];
  items: MenuItemDef[];
}

export interface ItemInfo {
  id: string;
  label: string;
  rect: RectDef;
  depth: number;
  is_leaf: boolean;
}

export type OutlinePointName = "p1" | "p2" | "p3" | "p4" | "c1" | "c2";

/** One drawable activation outline, already in screen coordinates. */
export interface OutlinePayload {
  node_id: string;
  label: string;
  points: Record<OutlinePointName, [number, number]>;
  straight_edge: boolean;
  opacity: number;
  z: number;
  hovered: boolean;
  open: boolean;
}

export interface EngineEvent {
  t_ms: number;
  kind: "opened" | "closed" | "selected" | "expansion_changed";
  node_id: string;
}

export interface InputRecord {
  t_ms: number;
  kind: "move" | "click";
  x: number;
  y: number;
}

export interface SessionInfo {
  session_id: string;
  config: MenuConfigDef;
  items: ItemInfo[];
  outlines: OutlinePayload[];
}

export interface InputResponse {
  events: EngineEvent[];
  outlines: OutlinePayload[];
  hovered: string | null;
  open_path: string[];
}
