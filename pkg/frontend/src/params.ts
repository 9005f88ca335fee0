/** URL/query parameter presets for the demo and the study runner. */

export type StudyGroup = "A" | "B";
export type StudyFactor = "alpha" | "epsilon";

export interface DemoParams {
  alpha: number;
  epsilon: number;
  tau: number;
  opacity: number;
  group: StudyGroup;
  factor: StudyFactor;
  tasks: number;
  depth: number;
  branching: number;
  participant: string;
  seed: number;
  engine: string;
  scale: number;
  debug: boolean;
  menu: string | null;
}

export const DEFAULT_PARAMS: DemoParams = {
  alpha: 1.0,
  epsilon: 0.0,
  tau: 250,
  opacity: 0.75,
  group: "A",
  factor: "alpha",
  tasks: 16,
  depth: 3,
  branching: 6,
  participant: "anonymous",
  seed: 0,
  engine: "http://127.0.0.1:8787",
  scale: 1.6,
  debug: false,
  menu: null,
};

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}

function num(q: URLSearchParams, key: string, fallback: number): number {
  const raw = q.get(key);
  if (raw === null) return fallback;
  const v = Number(raw);
  return Number.isFinite(v) ? v : fallback;
}

export function parseParams(query: string | URLSearchParams): DemoParams {
  const q = typeof query === "string" ? new URLSearchParams(query) : query;
  const group = q.get("group") === "B" ? "B" : "A";
  const factor = q.get("factor") === "epsilon" ? "epsilon" : "alpha";
  return {
    alpha: clamp01(num(q, "alpha", DEFAULT_PARAMS.alpha)),
    epsilon: clamp01(num(q, "epsilon", DEFAULT_PARAMS.epsilon)),
    tau: Math.max(0, num(q, "tau", DEFAULT_PARAMS.tau)),
    opacity: clamp01(num(q, "opacity", DEFAULT_PARAMS.opacity)),
    group,
    factor,
    tasks: Math.max(2, Math.round(num(q, "tasks", DEFAULT_PARAMS.tasks))),
    depth: Math.max(1, Math.round(num(q, "depth", DEFAULT_PARAMS.depth))),
    branching: Math.max(2, Math.round(num(q, "branching", DEFAULT_PARAMS.branching))),
    participant: q.get("participant") ?? DEFAULT_PARAMS.participant,
    seed: Math.round(num(q, "seed", DEFAULT_PARAMS.seed)),
    engine: q.get("engine") ?? DEFAULT_PARAMS.engine,
    scale: Math.min(6, Math.max(0.5, num(q, "scale", DEFAULT_PARAMS.scale))),
    debug: q.get("debug") === "1" || q.get("debug") === "true",
    menu: q.get("menu"),
  };
}
