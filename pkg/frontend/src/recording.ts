/** Line formats for raw-input traces and engine event logs.
 *
 * Both match the engine's own serialization (compact JSON, fixed key order),
 * so a recorded session can be replayed headlessly with `wingmenu replay` and
 * compared byte for byte against the events logged live.
 */

import type { EngineEvent, InputRecord } from "./types.js";

export function formatInputLine(rec: InputRecord): string {
  return JSON.stringify({ t_ms: rec.t_ms, kind: rec.kind, x: rec.x, y: rec.y });
}

export function formatEventLine(e: EngineEvent): string {
  return JSON.stringify({ t_ms: e.t_ms, kind: e.kind, node_id: e.node_id });
}

export function inputLog(records: InputRecord[]): string {
  return records.map(formatInputLine).join("\n") + (records.length ? "\n" : "");
}

export function eventLog(events: EngineEvent[]): string {
  return events.map(formatEventLine).join("\n") + (events.length ? "\n" : "");
}
