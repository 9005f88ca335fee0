/** Browser wiring: live menu steering, parameter sliders, study runner.
 *
 * Mouse events are sampled per animation frame, timestamped from a monotonic
 * clock, forwarded to the engine in order, and the returned outlines drawn.
 * The study runner presents number targets, logs trials through
 * StudySession, and offers the CSV plus the raw input/event logs for
 * download (the latter two replay headlessly via `wingmenu replay`).
 */

import { EngineClient } from "./engine-client.js";
import { DemoParams, parseParams } from "./params.js";
import { eventLog, inputLog } from "./recording.js";
import { drawMenu } from "./render.js";
import { numberMenu, pickTargets, StudySession } from "./study.js";
import type {
  EngineEvent,
  InputRecord,
  ItemInfo,
  MenuConfigDef,
  MenuDefinition,
  OutlinePayload,
} from "./types.js";

const OFFSET = { x: 30, y: 40 };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

class DemoApp {
  private params: DemoParams;
  private client: EngineClient;
  private items = new Map<string, ItemInfo>();
  private outlines: OutlinePayload[] = [];
  private leafIds: string[] = [];
  private ctx: CanvasRenderingContext2D;
  private origin = performance.now();
  private pendingMove: { x: number; y: number } | null = null;
  private inputs: InputRecord[] = [];
  private events: EngineEvent[] = [];
  private study: StudySession | null = null;
  private highlightId: string | null = null;
  private menuFile: MenuDefinition | null = null;

  constructor() {
    this.params = parseParams(window.location.search);
    this.client = new EngineClient(this.params.engine);
    const canvas = el<HTMLCanvasElement>("menu-canvas");
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
    this.bindControls();
    this.bindPointer(canvas);
    void this.restart();
    requestAnimationFrame(() => this.tick());
  }

  private now(): number {
    return Math.round((performance.now() - this.origin) * 1000) / 1000;
  }

  private config(): Partial<MenuConfigDef> {
    return {
      alpha: this.params.alpha,
      epsilon: this.params.epsilon,
      hover_delay_tau: this.params.tau,
      overlap_opacity: this.params.opacity,
      item_width: 100,
      item_height: 20,
    };
  }

  private menuDefinition(): MenuDefinition {
    if (this.menuFile) {
      // menu definition file (engine format): sliders override its config
      return {
        ...this.menuFile,
        config: { ...this.menuFile.config, ...this.config() },
      };
    }
    return {
      config: this.config(),
      items: numberMenu(this.params.depth, this.params.branching) as MenuDefinition["items"],
    };
  }

  private async loadMenuFile(): Promise<void> {
    if (this.menuFile !== null || !this.params.menu) return;
    const res = await fetch(this.params.menu);
    if (!res.ok) throw new Error(`failed to load menu file ${this.params.menu}`);
    this.menuFile = (await res.json()) as MenuDefinition;
  }

  async restart(patch: Partial<MenuConfigDef> = {}): Promise<void> {
    await this.loadMenuFile();
    const def = this.menuDefinition();
    def.config = { ...def.config, ...patch };
    const info = await this.client.createSession(def);
    this.items = new Map(info.items.map((i) => [i.id, i]));
    this.leafIds = info.items.filter((i) => i.is_leaf).map((i) => i.id);
    this.outlines = info.outlines;
    this.origin = performance.now();
    this.inputs = [];
    this.events = [];
    this.draw();
  }

  private bindControls(): void {
    const wire = (id: string, readout: string, set: (v: number) => void) => {
      const input = el<HTMLInputElement>(id);
      const label = el<HTMLSpanElement>(readout);
      const apply = () => {
        const v = Number(input.value);
        label.textContent = input.value;
        set(v);
        void this.restart();
      };
      input.addEventListener("change", apply);
      label.textContent = input.value;
    };
    el<HTMLInputElement>("alpha").value = String(this.params.alpha);
    el<HTMLInputElement>("epsilon").value = String(this.params.epsilon);
    el<HTMLInputElement>("tau").value = String(this.params.tau);
    el<HTMLInputElement>("opacity").value = String(this.params.opacity);
    wire("alpha", "alpha-value", (v) => (this.params.alpha = v));
    wire("epsilon", "epsilon-value", (v) => (this.params.epsilon = v));
    wire("tau", "tau-value", (v) => (this.params.tau = v));
    wire("opacity", "opacity-value", (v) => (this.params.opacity = v));

    el<HTMLButtonElement>("start-study").addEventListener("click", () => {
      void this.startStudy();
    });
    el<HTMLButtonElement>("export-csv").addEventListener("click", () => {
      if (this.study) download("trials.csv", this.study.csv());
    });
    el<HTMLButtonElement>("export-logs").addEventListener("click", () => {
      download("inputs.jsonl", inputLog(this.inputs));
      download("events.jsonl", eventLog(this.events));
    });
  }

  private bindPointer(canvas: HTMLCanvasElement): void {
    const toMenu = (ev: MouseEvent): { x: number; y: number } => {
      const rect = canvas.getBoundingClientRect();
      return {
        x: (ev.clientX - rect.left) / this.params.scale - OFFSET.x,
        y: (ev.clientY - rect.top) / this.params.scale - OFFSET.y,
      };
    };
    canvas.addEventListener("mousemove", (ev) => {
      this.pendingMove = toMenu(ev);
    });
    canvas.addEventListener("click", (ev) => {
      const p = toMenu(ev);
      void this.send({ t_ms: this.now(), kind: "click", x: p.x, y: p.y });
    });
  }

  /** One engine round trip; updates outlines, logs, and any running trial. */
  private async send(rec: InputRecord): Promise<void> {
    this.inputs.push(rec);
    const res = await this.client.input(rec);
    this.outlines = res.outlines;
    this.events.push(...res.events);
    if (this.study) {
      const row = this.study.observe(res.events);
      if (row) void this.nextTrial();
    }
    this.draw();
  }

  private tick(): void {
    if (this.pendingMove) {
      const p = this.pendingMove;
      this.pendingMove = null;
      void this.send({ t_ms: this.now(), kind: "move", x: p.x, y: p.y });
    }
    requestAnimationFrame(() => this.tick());
  }

  private draw(): void {
    drawMenu(this.ctx, this.outlines, this.items, {
      scale: this.params.scale,
      offsetX: OFFSET.x,
      offsetY: OFFSET.y,
      highlightId: this.highlightId,
      debug: this.params.debug,
    });
  }

  private async startStudy(): Promise<void> {
    const targets = pickTargets(this.leafIds, this.params.tasks, this.params.seed).map(
      (id) => ({ id, label: this.items.get(id)?.label ?? id }),
    );
    this.study = new StudySession({
      participant: this.params.participant,
      group: this.params.group,
      factor: this.params.factor,
      targets,
      seed: this.params.seed,
    });
    await this.nextTrial();
  }

  private async nextTrial(): Promise<void> {
    const study = this.study;
    if (!study) return;
    const status = el<HTMLDivElement>("study-status");
    if (study.done) {
      status.textContent =
        `done: ${study.completed} trials, ${study.errorsTotal} wrong clicks - export the CSV`;
      el<HTMLSpanElement>("target-label").textContent = "-";
      this.highlightId = null;
      return;
    }
    const index = study.completed;
    const plan = study.plan[index]!;
    await this.restart(plan.condition.patch);
    study.begin(index, this.now());
    el<HTMLSpanElement>("target-label").textContent = plan.targetLabel;
    status.textContent =
      `trial ${index + 1}/${study.plan.length} - condition ${plan.condition.label} ` +
      `(group ${study.group})`;
  }
}

function download(name: string, content: string): void {
  const blob = new Blob([content], { type: "text/plain" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

window.addEventListener("DOMContentLoaded", () => new DemoApp());
