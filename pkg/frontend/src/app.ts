// Application shell: owns the session state mirror and re-renders the
// page from it after every server response. Single event loop, at most
// one mutating request in flight; read-only queries are not gated.

import { ApiClient, ApiError, SessionState } from "./api.js";
import {
  ConsoleEntry,
  ConsoleFormState,
  renderConsole,
  renderHistory,
  renderPanels,
  renderQuiver,
  renderToasts,
} from "./render.js";

const FALLBACK_PRESETS = ["Z", "Q", "Q(zeta,4)", "Q(zeta,6)", "Q(zeta,12)"];

const EXAMPLE_SEED = `{"B": [[0, -1, 0, 4], [2, 0, 3, 6], [0, -3, 0, 0], [-4, -3, 0, 0]]}`;

export class App {
  state: SessionState | null = null;
  presets: string[] = FALLBACK_PRESETS;
  mutationInFlight = false;

  private log: ConsoleEntry[] = [];
  private toasts: string[] = [];
  private seedText = EXAMPLE_SEED;
  private seedField = "";
  private form: ConsoleFormState = {
    kind: "member",
    expr: "",
    direction: 1,
    path: "",
    method: "fast",
  };

  private pendingOps = 0;
  private idleWaiters: (() => void)[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {
    root.addEventListener("click", (e) => this.onClick(e));
    root.addEventListener("submit", (e) => this.onSubmit(e));
    root.addEventListener("change", (e) => this.onChange(e));
    root.addEventListener("input", (e) => this.onInput(e));
    this.render();
    this.track(
      this.client.fields().then(
        (resp) => {
          this.presets = resp.fields;
          this.render();
        },
        () => {
          // service unreachable until a session is created; keep fallbacks
        },
      ),
    );
  }

  /** Resolves once no request started through this app is outstanding. */
  whenIdle(): Promise<void> {
    if (this.pendingOps === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleWaiters.push(resolve));
  }

  private track<T>(p: Promise<T>): Promise<T> {
    this.pendingOps++;
    const settle = () => {
      this.pendingOps--;
      if (this.pendingOps === 0) this.idleWaiters.splice(0).forEach((w) => w());
    };
    p.then(settle, settle);
    return p;
  }

  loadSeed(text: string, field?: string): Promise<void> {
    let seed: unknown;
    try {
      seed = JSON.parse(text);
    } catch (err) {
      this.toast(`seed is not valid JSON: ${(err as Error).message}`);
      this.render();
      return Promise.resolve();
    }
    return this.track(
      this.client.createSession(seed, field || undefined).then(
        (state) => {
          this.state = state;
          this.log = [];
          this.render();
        },
        (err) => this.surface(err),
      ),
    );
  }

  mutate(k: number): Promise<void> {
    if (!this.state || this.mutationInFlight) return Promise.resolve();
    this.mutationInFlight = true;
    return this.track(
      this.client.mutate(this.state.id, k).then(
        (state) => {
          this.mutationInFlight = false;
          this.state = state;
          this.render();
        },
        (err) => {
          this.mutationInFlight = false;
          this.surface(err);
        },
      ),
    );
  }

  undo(): Promise<void> {
    if (!this.state || this.mutationInFlight) return Promise.resolve();
    this.mutationInFlight = true;
    return this.track(
      this.client.undo(this.state.id).then(
        (state) => {
          this.mutationInFlight = false;
          this.state = state;
          this.render();
        },
        (err) => {
          this.mutationInFlight = false;
          this.surface(err);
        },
      ),
    );
  }

  applyField(field: string): Promise<void> {
    if (!this.state) return Promise.resolve();
    return this.track(
      this.client.setField(this.state.id, field).then(
        (state) => {
          this.state = state;
          this.render();
        },
        (err) => this.surface(err),
      ),
    );
  }

  runQuery(): Promise<void> {
    if (!this.state) return Promise.resolve();
    const id = this.state.id;
    const names = this.state.names;
    const { kind, expr, direction, path, method } = this.form;
    let done: Promise<ConsoleEntry>;
    switch (kind) {
      case "member":
        done = this.client.member(id, expr).then((cert) => ({ kind, expr, cert }));
        break;
      case "member-path": {
        const steps = path
          .split(/[\s,]+/)
          .filter((s) => s.length > 0)
          .map(Number);
        done = this.client
          .memberAlongPath(id, expr, steps)
          .then((verdict) => ({ kind, expr, path: steps, verdict }));
        break;
      }
      case "pairing":
        done = this.client
          .pairing(id, expr, direction, method)
          .then((result) => ({ kind, expr, result }));
        break;
      case "local-factor":
        done = this.client
          .localFactor(id, expr)
          .then((result) => ({ kind, expr, result, names }));
        break;
    }
    return this.track(
      done.then(
        (entry) => {
          this.log.unshift(entry);
          this.render();
        },
        (err) => {
          if (err instanceof ApiError) {
            this.log.unshift({ kind: "error", expr, code: err.code, message: err.message });
            this.render();
          } else {
            this.surface(err);
          }
        },
      ),
    );
  }

  dismissToast(idx: number): void {
    this.toasts.splice(idx, 1);
    this.render();
  }

  private toast(message: string): void {
    this.toasts.push(message);
    if (this.toasts.length > 4) this.toasts.shift();
  }

  private surface(err: unknown): void {
    this.toast(err instanceof Error ? err.message : String(err));
    this.render();
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    const vertex = target.closest("[data-mutate]");
    if (vertex) {
      this.mutate(Number(vertex.getAttribute("data-mutate")));
      return;
    }
    if (target.closest("#undo-btn")) {
      this.undo();
      return;
    }
    if (target.closest("#apply-field")) {
      const select = this.root.querySelector<HTMLSelectElement>("#field-select");
      const custom = this.root.querySelector<HTMLInputElement>("#custom-n");
      if (!select) return;
      const field =
        select.value === "custom" ? `Q(zeta,${custom?.value ?? "1"})` : select.value;
      this.applyField(field);
      return;
    }
    const toastEl = target.closest("[data-toast]");
    if (toastEl) {
      this.dismissToast(Number(toastEl.getAttribute("data-toast")));
    }
  }

  private onSubmit(event: Event): void {
    event.preventDefault();
    const form = event.target as HTMLElement | null;
    if (!form) return;
    if (form.id === "seed-form") {
      this.loadSeed(this.seedText, this.seedField);
    } else if (form.id === "console-form") {
      this.runQuery();
    }
  }

  private onChange(event: Event): void {
    const el = event.target as HTMLElement | null;
    if (!el) return;
    if (el.id === "field-select") {
      const select = el as HTMLSelectElement;
      this.root
        .querySelector("#custom-n")
        ?.classList.toggle("hidden", select.value !== "custom");
    } else if (el.id === "query-kind") {
      this.form.kind = (el as HTMLSelectElement).value as ConsoleFormState["kind"];
      this.render();
    } else if (el.id === "query-method") {
      this.form.method = (el as HTMLSelectElement).value as "fast" | "iterative";
    } else if (el.id === "seed-field-select") {
      this.seedField = (el as HTMLSelectElement).value;
    }
  }

  private onInput(event: Event): void {
    const el = event.target as HTMLElement | null;
    if (!el) return;
    if (el.id === "seed-json") {
      this.seedText = (el as HTMLTextAreaElement).value;
    } else if (el.id === "query-expr") {
      this.form.expr = (el as HTMLInputElement).value;
    } else if (el.id === "query-direction") {
      this.form.direction = Number((el as HTMLInputElement).value);
    } else if (el.id === "query-path") {
      this.form.path = (el as HTMLInputElement).value;
    }
  }

  private renderSeedForm(): string {
    const options = ["", ...this.presets]
      .map((f) => {
        const label = f === "" ? "default (Z)" : f;
        const sel = f === this.seedField ? " selected" : "";
        return `<option value="${f}"${sel}>${label}</option>`;
      })
      .join("");
    return (
      '<section class="panel" id="seed-form-panel"><h3>seed</h3>' +
      '<form id="seed-form">' +
      `<textarea id="seed-json" rows="3" spellcheck="false">${this.seedText}</textarea>` +
      `<select id="seed-field-select">${options}</select>` +
      " <button>load</button></form></section>"
    );
  }

  render(): void {
    const sections: string[] = [this.renderSeedForm()];
    if (this.state) {
      sections.push(`<div id="quiver">${renderQuiver(this.state)}</div>`);
      sections.push(`<div id="panels">${renderPanels(this.state, this.presets)}</div>`);
      sections.push(renderHistory(this.state));
      sections.push(renderConsole(this.log, this.form));
    }
    sections.push(renderToasts(this.toasts));
    this.root.innerHTML = sections.join("");
  }
}
