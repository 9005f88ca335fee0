/** Trial CSV export, schema-identical to the simulator's trials.csv. */

export const CSV_HEADER = "seed,task,condition,duration_ms,path_exits,reopened,success";

export interface TrialRow {
  seed: number;
  task: string;
  condition: string;
  duration_ms: number;
  path_exits: number;
  reopened: number;
  success: boolean;
}

function num(v: number): string {
  return Number.isInteger(v) ? String(v) : String(v);
}

export function trialsCsv(rows: TrialRow[]): string {
  const lines = [CSV_HEADER];
  for (const r of rows) {
    lines.push(
      [
        String(r.seed),
        r.task,
        r.condition,
        num(r.duration_ms),
        String(r.path_exits),
        String(r.reopened),
        r.success ? "true" : "false",
      ].join(","),
    );
  }
  return lines.join("\n") + "\n";
}
