/** Study protocol: counterbalanced two-condition selection tasks.
 *
 * A session presents each target label, times from presentation to the
 * correct click, and exports rows in the simulator's CSV schema. Group A
 * runs the test-condition block (wing feature on) first and the base block
 * second; group B the other way around. Wrong clicks are counted but never
 * end a trial: it runs until the target leaf is selected.
 */

import { CSV_HEADER, TrialRow, trialsCsv } from "./csv.js";
import type { EngineEvent, MenuConfigDef } from "./types.js";
import type { StudyFactor, StudyGroup } from "./params.js";

export interface ConditionDef {
  label: string;
  patch: Partial<MenuConfigDef>;
}

export function conditionPair(factor: StudyFactor): { base: ConditionDef; test: ConditionDef } {
  if (factor === "alpha") {
    return {
      base: { label: "alpha=0", patch: { alpha: 0 } },
      test: { label: "alpha=1", patch: { alpha: 1 } },
    };
  }
  return {
    base: { label: "epsilon=1", patch: { epsilon: 1 } },
    test: { label: "epsilon=0", patch: { epsilon: 0 } },
  };
}

export interface PlannedTrial {
  index: number;
  targetId: string;
  targetLabel: string;
  condition: ConditionDef;
}

export interface TargetDef {
  id: string;
  label: string;
}

interface ActiveTrial {
  plan: PlannedTrial;
  shownAt: number;
  opens: Map<string, number>;
  errors: number;
}

export class StudySession {
  readonly participant: string;
  readonly group: StudyGroup;
  readonly factor: StudyFactor;
  readonly seed: number;
  readonly plan: PlannedTrial[];
  readonly rows: TrialRow[] = [];
  errorsTotal = 0;
  private active: ActiveTrial | null = null;

  constructor(opts: {
    participant: string;
    group: StudyGroup;
    factor: StudyFactor;
    targets: TargetDef[];
    seed?: number;
  }) {
    if (opts.targets.length < 2 || opts.targets.length % 2 !== 0) {
      throw new Error("a study needs an even number of at least two targets");
    }
    this.participant = opts.participant;
    this.group = opts.group;
    this.factor = opts.factor;
    this.seed = opts.seed ?? 0;
    const { base, test } = conditionPair(opts.factor);
    const blocks = this.group === "A" ? [test, base] : [base, test];
    const half = opts.targets.length / 2;
    this.plan = opts.targets.map((target, i) => ({
      index: i,
      targetId: target.id,
      targetLabel: target.label,
      condition: i < half ? blocks[0]! : blocks[1]!,
    }));
  }

  get completed(): number {
    return this.rows.length;
  }

  get done(): boolean {
    return this.rows.length === this.plan.length;
  }

  get current(): PlannedTrial | null {
    return this.active?.plan ?? null;
  }

  /** Start timing trial `index`: the moment its target label is shown. */
  begin(index: number, tMs: number): PlannedTrial {
    if (this.active !== null) throw new Error("a trial is already running");
    const plan = this.plan[index];
    if (!plan) throw new Error(`no trial ${index}`);
    this.active = { plan, shownAt: tMs, opens: new Map(), errors: 0 };
    return plan;
  }

  /** Feed engine events; returns the finished row on correct selection. */
  observe(events: EngineEvent[]): TrialRow | null {
    const trial = this.active;
    if (trial === null) return null;
    for (const e of events) {
      if (e.kind === "opened") {
        trial.opens.set(e.node_id, (trial.opens.get(e.node_id) ?? 0) + 1);
      } else if (e.kind === "selected") {
        if (e.node_id === trial.plan.targetId) {
          return this.finish(e.t_ms, true);
        }
        trial.errors += 1;
        this.errorsTotal += 1;
      }
    }
    return null;
  }

  /** Abort the running trial (e.g. participant gave up). */
  abort(tMs: number): TrialRow {
    return this.finish(tMs, false);
  }

  private finish(tMs: number, success: boolean): TrialRow {
    const trial = this.active;
    if (trial === null) throw new Error("no running trial");
    let reopened = 0;
    for (const count of trial.opens.values()) {
      if (count > 1) reopened += count - 1;
    }
    const row: TrialRow = {
      seed: this.seed,
      task: trial.plan.targetLabel,
      condition: trial.plan.condition.label,
      duration_ms: tMs - trial.shownAt,
      path_exits: 0, // the live UI has no tunnel model; column kept for schema parity
      reopened,
      success,
    };
    this.rows.push(row);
    this.active = null;
    return row;
  }

  csv(): string {
    return trialsCsv(this.rows);
  }

  static readonly header = CSV_HEADER;
}

/** Uniform task-menu definition with dotted number labels ("2.3.1"). */
export function numberMenu(depth: number, branching: number): { label: string; children?: unknown[] }[] {
  function build(prefix: string, level: number): { label: string; children?: unknown[] }[] {
    const out: { label: string; children?: unknown[] }[] = [];
    for (let i = 1; i <= branching; i++) {
      const label = prefix ? `${prefix}.${i}` : String(i);
      if (level < depth) {
        out.push({ label, children: build(label, level + 1) });
      } else {
        out.push({ label });
      }
    }
    return out;
  }
  return build("", 1);
}

/** Deterministic leaf sample used to pick study targets. */
export function pickTargets(leafIds: string[], n: number, seed: number): string[] {
  const pool = [...leafIds];
  // xorshift32: deterministic across platforms, good enough for shuffling
  let s = (seed >>> 0) || 0x9e3779b9;
  const rand = () => {
    s ^= s << 13;
    s >>>= 0;
    s ^= s >> 17;
    s ^= s << 5;
    s >>>= 0;
    return s / 0x1_0000_0000;
  };
  for (let i = pool.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [pool[i], pool[j]] = [pool[j]!, pool[i]!];
  }
  if (n > pool.length) {
    const out: string[] = [];
    for (let i = 0; i < n; i++) out.push(pool[i % pool.length]!);
    return out;
  }
  return pool.slice(0, n);
}
