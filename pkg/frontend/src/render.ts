// Pure string renderers. Every number shown here is read from an API
// payload; nothing is computed client side beyond formatting.

import {
  ExchangePolyInfo,
  Guarded,
  LocalFactorResult,
  MemberCertificate,
  PairingResult,
  PathVerdict,
  QuiverJson,
  SessionState,
  guardedResult,
} from "./api.js";
import { Point, forceLayout } from "./layout.js";

export const QUIVER_WIDTH = 460;
export const QUIVER_HEIGHT = 380;
const VERTEX_RADIUS = 17;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** "starfish-not-established" -> "starfish not established" */
export function humanizeStatus(code: string): string {
  return code.replace(/-/g, " ");
}

/** Format a cluster monomial from pairing exponents; formatting only. */
export function monomialText(exponents: number[], names: string[]): string {
  const parts: string[] = [];
  exponents.forEach((e, idx) => {
    if (e === 0) return;
    const name = names[idx] ?? `x${idx + 1}`;
    parts.push(e === 1 ? name : `${name}^${e}`);
  });
  return parts.length === 0 ? "1" : parts.join("*");
}

export function quiverPositions(vertexCount: number, quiver: QuiverJson | null): Point[] {
  const edges: [number, number][] = (quiver?.arrows ?? []).map(([s, t]) => [s - 1, t - 1]);
  return forceLayout(vertexCount, edges, QUIVER_WIDTH, QUIVER_HEIGHT);
}

function arrowSvg(
  from: Point,
  to: Point,
  mult: number,
  source: number,
  target: number,
): string {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const dist = Math.max(Math.hypot(dx, dy), 1);
  const ux = dx / dist;
  const uy = dy / dist;
  const px = -uy;
  const py = ux;
  const parallel = mult <= 3 ? mult : 1;
  const pieces: string[] = [];
  for (let idx = 0; idx < parallel; idx++) {
    const off = (idx - (parallel - 1) / 2) * 7;
    const x1 = round1(from.x + ux * (VERTEX_RADIUS + 2) + px * off);
    const y1 = round1(from.y + uy * (VERTEX_RADIUS + 2) + py * off);
    const x2 = round1(to.x - ux * (VERTEX_RADIUS + 9) + px * off);
    const y2 = round1(to.y - uy * (VERTEX_RADIUS + 9) + py * off);
    pieces.push(
      `<line class="arrow" x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" marker-end="url(#arrowhead)"/>`,
    );
  }
  if (mult > 3) {
    const lx = round1((from.x + to.x) / 2 + px * 13);
    const ly = round1((from.y + to.y) / 2 + py * 13);
    pieces.push(`<text class="mult-label" x="${lx}" y="${ly}">${mult}</text>`);
  }
  return `<g class="arrow-group" data-from="${source}" data-to="${target}">${pieces.join("")}</g>`;
}

/**
 * SVG view of the session's quiver. Exchangeable vertices are circles
 * carrying data-mutate; frozen vertices are squares and not clickable.
 * Arrows come from the quiver JSON verbatim; when the matrix is not
 * skew-symmetric the server sends no quiver and only vertices render.
 */
export function renderQuiver(state: SessionState, positions?: Point[]): string {
  const total = state.n + state.m;
  const pts = positions ?? quiverPositions(total, state.quiver);
  const body: string[] = [];
  body.push(
    '<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">' +
      '<path d="M0,0 L8,4 L0,8 z"/></marker></defs>',
  );
  for (const [s, t, mult] of state.quiver?.arrows ?? []) {
    body.push(arrowSvg(pts[s - 1], pts[t - 1], mult, s, t));
  }
  for (let i = 1; i <= total; i++) {
    const p = pts[i - 1];
    const name = escapeHtml(state.names[i - 1] ?? `x${i}`);
    if (i <= state.n) {
      body.push(
        `<g class="vertex exchangeable" data-mutate="${i}">` +
          `<circle cx="${p.x}" cy="${p.y}" r="${VERTEX_RADIUS}"/>` +
          `<text x="${p.x}" y="${round1(p.y + 4)}">${name}</text></g>`,
      );
    } else {
      body.push(
        `<g class="vertex frozen">` +
          `<rect x="${round1(p.x - VERTEX_RADIUS)}" y="${round1(p.y - VERTEX_RADIUS)}"` +
          ` width="${VERTEX_RADIUS * 2}" height="${VERTEX_RADIUS * 2}"/>` +
          `<text x="${p.x}" y="${round1(p.y + 4)}">${name}</text></g>`,
      );
    }
  }
  const note = state.quiver
    ? ""
    : '<p class="note">matrix is skew-symmetrizable but not skew-symmetric; no quiver to draw</p>';
  return (
    `<svg id="quiver-svg" viewBox="0 0 ${QUIVER_WIDTH} ${QUIVER_HEIGHT}" ` +
    `width="${QUIVER_WIDTH}" height="${QUIVER_HEIGHT}">${body.join("")}</svg>` +
    note
  );
}

function factorCountLabel(info: ExchangePolyInfo): string {
  if (info.isolated) return "isolated (unit over a field)";
  if (info.factorCount === 1) return "irreducible";
  return `${info.factorCount} factors`;
}

function renderGuardedWarning(guarded: Guarded<unknown>): string {
  const status = guarded.status;
  const message = "message" in guarded ? escapeHtml(guarded.message) : "";
  return (
    `<p class="warning" data-status="${escapeHtml(status)}">` +
    `${escapeHtml(humanizeStatus(status))}: ${message}</p>`
  );
}

export function renderFieldPanel(state: SessionState, presets: string[]): string {
  const options = presets.includes(state.field) ? presets : [...presets, state.field];
  const opts = options
    .map(
      (f) =>
        `<option value="${escapeHtml(f)}"${f === state.field ? " selected" : ""}>${escapeHtml(f)}</option>`,
    )
    .join("");
  return (
    '<section class="panel" id="field-panel"><h3>coefficients</h3>' +
    `<select id="field-select">${opts}<option value="custom">Q(zeta,N) for custom N</option></select>` +
    ' <input id="custom-n" type="number" min="1" step="1" value="8" class="hidden"/>' +
    ' <button id="apply-field" type="button">apply</button>' +
    ` <span class="field-now">current: ${escapeHtml(state.field)}</span></section>`
  );
}

export function renderPolyPanel(state: SessionState): string {
  const items = state.exchangePolys
    .map(
      (info) =>
        `<li data-direction="${info.direction}"><code>f${info.direction} = ${escapeHtml(info.text)}</code>` +
        ` <span class="count">${factorCountLabel(info)}</span></li>`,
    )
    .join("");
  const sharing = state.sharing
    .map(([a, b]) => `<p class="sharing">directions ${a} and ${b} share a factor</p>`)
    .join("");
  return (
    '<section class="panel" id="polys"><h3>exchange polynomials</h3>' +
    `<ul>${items}</ul>${sharing}</section>`
  );
}

export function renderClusterPanel(state: SessionState): string {
  const items = state.seed.cluster
    .map((text, idx) => {
      const frozen = idx >= state.n ? " (frozen)" : "";
      return `<li><code>${escapeHtml(text)}</code>${frozen}</li>`;
    })
    .join("");
  return `<section class="panel" id="cluster"><h3>cluster</h3><ol>${items}</ol></section>`;
}

export function renderClassGroupPanel(state: SessionState): string {
  const group = state.classGroup;
  let body: string;
  const result = guardedResult(group);
  if (result) {
    const per = result.perVariable
      .map((pv) => (pv.isolated ? `f${pv.i} isolated` : `l${pv.i} = ${pv.l}`))
      .join(", ");
    body =
      `<p>free of rank <span class="rank" data-rank="${result.rank}">${result.rank}</span>` +
      ` (t = <span data-t="${result.t}">${result.t}</span> primes)</p>` +
      `<p class="per-variable">${per}</p>`;
  } else {
    body = renderGuardedWarning(group);
  }
  return `<section class="panel" id="class-group"><h3>class group</h3>${body}</section>`;
}

export function renderUfdPanel(state: SessionState): string {
  const verdict = state.ufd;
  let body: string;
  const result = guardedResult(verdict);
  if (result) {
    if (result.ufd) {
      body = '<span class="badge ufd-yes">UFD</span>';
    } else {
      const reasons = result.nontrivial.map((nt) => `l${nt.i} = ${nt.l}`).join(", ");
      body = `<span class="badge ufd-no">not a UFD</span> <span class="reasons">${reasons}</span>`;
    }
  } else {
    body = renderGuardedWarning(verdict);
  }
  return `<section class="panel" id="ufd"><h3>factoriality</h3>${body}</section>`;
}

export function renderMatrixPanel(state: SessionState): string {
  const rows = state.seed.currentB
    .map((row, r) => {
      const cells = row.map((v) => `<td>${v}</td>`).join("");
      const label = escapeHtml(state.names[r] ?? `x${r + 1}`);
      return `<tr><th>${label}</th>${cells}</tr>`;
    })
    .join("");
  return (
    '<section class="panel" id="matrix"><h3>exchange matrix</h3>' +
    `<table class="matrix"><tbody>${rows}</tbody></table></section>`
  );
}

export function renderPanels(state: SessionState, presets: string[]): string {
  return (
    renderFieldPanel(state, presets) +
    renderClusterPanel(state) +
    renderPolyPanel(state) +
    renderClassGroupPanel(state) +
    renderUfdPanel(state) +
    renderMatrixPanel(state)
  );
}

/** Mirror of the server's undo stack: the mutation history plus the undo button. */
export function renderHistory(state: SessionState): string {
  const chips = state.seed.history.map((k) => `<span class="chip">&mu;${k}</span>`).join(" ");
  const undoAttr = state.canUndo ? "" : " disabled";
  return (
    '<section class="panel" id="history"><h3>mutations</h3>' +
    `<span class="chips">${chips || "initial seed"}</span>` +
    ` <button id="undo-btn"${undoAttr}>undo</button></section>`
  );
}

export type ConsoleEntry =
  | { kind: "member"; expr: string; cert: MemberCertificate }
  | { kind: "member-path"; expr: string; path: number[]; verdict: PathVerdict }
  | { kind: "pairing"; expr: string; result: PairingResult }
  | { kind: "local-factor"; expr: string; result: LocalFactorResult; names: string[] }
  | { kind: "error"; expr: string; code: string; message: string };

function renderMemberCert(cert: MemberCertificate): string {
  const caveat =
    cert.starfishBasis === "upper-bound-only"
      ? ' <span class="caveat">(star intersection is only an upper bound here)</span>'
      : "";
  const dirs = cert.directions
    .map((d) => {
      if (d.ok) return `<li class="ok">direction ${d.direction}: ok</li>`;
      return (
        `<li class="fail">direction ${d.direction}: fails` +
        (d.failingPower !== undefined ? ` at power ${d.failingPower}` : "") +
        "</li>"
      );
    })
    .join("");
  const head = cert.member
    ? "member of the upper algebra"
    : '<span class="fail">not a member</span>';
  return `${head}${caveat}<ul class="directions">${dirs}</ul>`;
}

function renderParseError(expr: string, message: string): string {
  const match = /\(at position (\d+)\)/.exec(message);
  let caret = "";
  if (match) {
    const pos = Number(match[1]);
    caret = `<pre class="caret">${escapeHtml(expr)}\n${" ".repeat(pos)}^</pre>`;
  }
  return `<span class="fail">${escapeHtml(message)}</span>${caret}`;
}

export function renderConsoleEntry(entry: ConsoleEntry): string {
  const expr = `<code>${escapeHtml(entry.expr)}</code>`;
  let body: string;
  switch (entry.kind) {
    case "member":
      body = `${expr}: ${renderMemberCert(entry.cert)}`;
      break;
    case "member-path":
      body =
        `${expr} along [${entry.path.join(", ")}]: ` +
        (entry.verdict.laurent_in_seed
          ? "Laurent in the target seed"
          : '<span class="fail">not Laurent in the target seed</span>');
      break;
    case "pairing":
      body = `(x${entry.result.direction} | ${expr}) = <strong>${entry.result.value}</strong> (${entry.result.method})`;
      break;
    case "local-factor": {
      const mono = monomialText(entry.result.exponents, entry.names);
      body = `${expr} = <code>${escapeHtml(mono)}</code> &middot; <code>${escapeHtml(entry.result.cofactor)}</code>`;
      break;
    }
    case "error":
      body =
        entry.code === "parse-error"
          ? `${expr}: ${renderParseError(entry.expr, entry.message)}`
          : `${expr}: <span class="fail">${escapeHtml(entry.code)}: ${escapeHtml(entry.message)}</span>`;
      break;
  }
  return `<li class="entry entry-${entry.kind}">${body}</li>`;
}

export function renderConsole(log: ConsoleEntry[], form: ConsoleFormState): string {
  const entries = log.map(renderConsoleEntry).join("");
  const kinds: [string, string][] = [
    ["member", "membership"],
    ["member-path", "Laurent along path"],
    ["pairing", "pairing"],
    ["local-factor", "local factorization"],
  ];
  const kindOpts = kinds
    .map(
      ([v, label]) =>
        `<option value="${v}"${v === form.kind ? " selected" : ""}>${label}</option>`,
    )
    .join("");
  const needsDirection = form.kind === "pairing";
  const needsPath = form.kind === "member-path";
  return (
    '<section class="panel" id="console"><h3>queries</h3>' +
    '<form id="console-form">' +
    `<select id="query-kind">${kindOpts}</select>` +
    ` <input id="query-expr" placeholder="(x1^2+x2^2+x3^2)/(x1*x2*x3)" value="${escapeHtml(form.expr)}"/>` +
    ` <input id="query-direction" type="number" min="1" value="${form.direction}" title="direction"` +
    `${needsDirection ? "" : ' class="hidden"'}/>` +
    ` <input id="query-path" placeholder="3,1" value="${escapeHtml(form.path)}"` +
    `${needsPath ? "" : ' class="hidden"'}/>` +
    ` <select id="query-method"${needsDirection ? "" : ' class="hidden"'}>` +
    `<option${form.method === "fast" ? " selected" : ""}>fast</option>` +
    `<option${form.method === "iterative" ? " selected" : ""}>iterative</option></select>` +
    " <button>run</button></form>" +
    `<ol id="console-log">${entries}</ol></section>`
  );
}

export interface ConsoleFormState {
  kind: "member" | "member-path" | "pairing" | "local-factor";
  expr: string;
  direction: number;
  path: string;
  method: "fast" | "iterative";
}

export function renderToasts(toasts: string[]): string {
  const items = toasts
    .map((t, idx) => `<div class="toast" data-toast="${idx}">${escapeHtml(t)}</div>`)
    .join("");
  return `<div id="toasts">${items}</div>`;
}

function round1(v: number): number {
  return Math.round(v * 10) / 10;
}
