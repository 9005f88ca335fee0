/** Canvas drawing of engine-provided outlines.
 *
 * Strictly presentational: outlines arrive in draw order with opacity and
 * shape already decided by the engine; labels are painted in a second pass so
 * translucent wings never hide text.
 */

import type { ItemInfo, OutlinePayload } from "./types.js";

const FILL_PLAIN = "#f4f4f2";
const FILL_OPEN = "#e4eaf3";
const FILL_EXPANDED = "#cdddf2";
const STROKE = "#3a3a3a";
const TARGET_RING = "#d97706";

export interface RenderOptions {
  scale: number;
  offsetX: number;
  offsetY: number;
  highlightId?: string | null;
  debug?: boolean;
}

function outlinePath(o: OutlinePayload, opt: RenderOptions): Path2D {
  const X = (v: number) => (v + opt.offsetX) * opt.scale;
  const Y = (v: number) => (v + opt.offsetY) * opt.scale;
  const p = o.points;
  const path = new Path2D();
  path.moveTo(X(p.p1[0]), Y(p.p1[1]));
  path.lineTo(X(p.p2[0]), Y(p.p2[1]));
  path.lineTo(X(p.p3[0]), Y(p.p3[1]));
  if (o.straight_edge) {
    path.lineTo(X(p.p4[0]), Y(p.p4[1]));
  } else {
    path.bezierCurveTo(
      X(p.c1[0]), Y(p.c1[1]),
      X(p.c2[0]), Y(p.c2[1]),
      X(p.p4[0]), Y(p.p4[1]),
    );
  }
  path.closePath();
  return path;
}

export function drawMenu(
  ctx: CanvasRenderingContext2D,
  outlines: OutlinePayload[],
  items: Map<string, ItemInfo>,
  opt: RenderOptions,
): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  ctx.lineWidth = 1;
  for (const o of outlines) {
    const path = outlinePath(o, opt);
    ctx.globalAlpha = o.opacity;
    ctx.fillStyle = o.hovered ? FILL_EXPANDED : o.open ? FILL_OPEN : FILL_PLAIN;
    ctx.fill(path);
    ctx.globalAlpha = 1;
    ctx.strokeStyle = o.node_id === opt.highlightId ? TARGET_RING : STROKE;
    ctx.stroke(path);
  }
  ctx.fillStyle = "#111";
  for (const o of outlines) {
    const item = items.get(o.node_id);
    if (!item) continue;
    const h = item.rect.h;
    ctx.font = `${Math.max(8, 0.55 * h) * opt.scale}px sans-serif`;
    ctx.textBaseline = "middle";
    ctx.fillText(
      o.label,
      (item.rect.x + 6 + opt.offsetX) * opt.scale,
      (item.rect.y + h / 2 + opt.offsetY) * opt.scale,
    );
  }
  if (opt.debug) {
    for (const o of outlines) {
      if (o.hovered) drawDebugHandles(ctx, o, opt);
    }
  }
}

/** Control polygon of the hovered outline's lower edge, for tuning. */
function drawDebugHandles(
  ctx: CanvasRenderingContext2D,
  o: OutlinePayload,
  opt: RenderOptions,
): void {
  const X = (v: number) => (v + opt.offsetX) * opt.scale;
  const Y = (v: number) => (v + opt.offsetY) * opt.scale;
  const chain: [number, number][] = [o.points.p3, o.points.c1, o.points.c2, o.points.p4];
  ctx.strokeStyle = "#c2410c";
  ctx.setLineDash([3, 3]);
  ctx.beginPath();
  ctx.moveTo(X(chain[0]![0]), Y(chain[0]![1]));
  for (const [x, y] of chain.slice(1)) ctx.lineTo(X(x), Y(y));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#c2410c";
  for (const [x, y] of [o.points.c1, o.points.c2]) {
    ctx.beginPath();
    ctx.arc(X(x), Y(y), 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}
