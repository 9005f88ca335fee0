/** HTTP client for the menu engine boundary.
 *
 * The demo performs no menu geometry or state logic itself: every outline and
 * event shown comes back from these calls. Inputs are sent strictly in order
 * (one in flight at a time) because the engine requires nondecreasing
 * timestamps per session.
 */

import type {
  InputRecord,
  InputResponse,
  MenuDefinition,
  SessionInfo,
} from "./types.js";

export class EngineClient {
  private sessionId: string | null = null;
  private chain: Promise<unknown> = Promise.resolve();

  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      const text = await res.text();
      throw new Error(`${method} ${path} failed: ${res.status} ${text}`);
    }
    return (await res.json()) as T;
  }

  /** Serialize a call behind every previously queued one. */
  private enqueue<T>(fn: () => Promise<T>): Promise<T> {
    const next = this.chain.then(fn, fn);
    this.chain = next.catch(() => undefined);
    return next;
  }

  async createSession(menu: MenuDefinition): Promise<SessionInfo> {
    const info = await this.enqueue(() =>
      this.request<SessionInfo>("POST", "/sessions", { menu }),
    );
    this.sessionId = info.session_id;
    return info;
  }

  get session(): string {
    if (this.sessionId === null) throw new Error("no session open");
    return this.sessionId;
  }

  input(rec: InputRecord): Promise<InputResponse> {
    const sid = this.session;
    return this.enqueue(() =>
      this.request<InputResponse>("POST", `/sessions/${sid}/input`, rec),
    );
  }

  reset(): Promise<unknown> {
    const sid = this.session;
    return this.enqueue(() => this.request("POST", `/sessions/${sid}/reset`));
  }

  async close(): Promise<void> {
    if (this.sessionId === null) return;
    const sid = this.sessionId;
    this.sessionId = null;
    await this.enqueue(() => this.request("DELETE", `/sessions/${sid}`));
  }

  snapshotUrl(): string {
    return `${this.baseUrl}/sessions/${this.session}/snapshot.svg`;
  }
}
