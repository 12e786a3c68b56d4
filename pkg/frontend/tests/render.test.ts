import { expect, test } from "vitest";

import { SessionState } from "../src/api.js";
import {
  escapeHtml,
  humanizeStatus,
  monomialText,
  renderConsoleEntry,
  renderHistory,
  renderPanels,
  renderQuiver,
} from "../src/render.js";
import { fixtureJson } from "./helpers.js";

const PRESETS = fixtureJson<{ fields: string[] }>("fields").fields;

function dom(html: string): HTMLElement {
  const div = document.createElement("div");
  div.innerHTML = html;
  return div;
}

test("monomialText formats exponent vectors", () => {
  const names = ["x1", "x2"];
  expect(monomialText([3, 0], names)).toBe("x1^3");
  expect(monomialText([0, 0], names)).toBe("1");
  expect(monomialText([1, -2], names)).toBe("x1*x2^-2");
});

test("humanizeStatus replaces dashes with spaces", () => {
  expect(humanizeStatus("starfish-not-established")).toBe("starfish not established");
});

test("escapeHtml neutralizes markup", () => {
  expect(escapeHtml('<b a="c">&')).toBe("&lt;b a=&quot;c&quot;&gt;&amp;");
});

test("double arrows render as parallel lines without a count label", () => {
  const state = fixtureJson<SessionState>("markov_create");
  const root = dom(renderQuiver(state));
  expect(root.querySelectorAll("line.arrow")).toHaveLength(6);
  const groups = Array.from(root.querySelectorAll("g.arrow-group"));
  const pairs = groups.map((g) => [
    Number(g.getAttribute("data-from")),
    Number(g.getAttribute("data-to")),
  ]);
  expect(pairs).toEqual(state.quiver!.arrows.map(([s, t]) => [s, t]));
  expect(root.querySelector(".mult-label")).toBeNull();
  expect(root.querySelectorAll("[data-mutate]")).toHaveLength(3);
});

test("higher multiplicities collapse to one line with a count label", () => {
  const state = {
    n: 2,
    m: 0,
    names: ["a", "b"],
    quiver: { n: 2, m: 0, arrows: [[1, 2, 4]] },
  } as unknown as SessionState;
  const root = dom(renderQuiver(state));
  expect(root.querySelectorAll("line.arrow")).toHaveLength(1);
  expect(root.querySelector(".mult-label")!.textContent).toBe("4");
});

test("frozen vertices are squares and not clickable", () => {
  const state = fixtureJson<SessionState>("ex3_create");
  const root = dom(renderQuiver(state));
  expect(root.querySelectorAll("g.vertex")).toHaveLength(4);
  expect(root.querySelectorAll("[data-mutate]")).toHaveLength(3);
  const frozen = root.querySelector("g.vertex.frozen")!;
  expect(frozen.hasAttribute("data-mutate")).toBe(false);
  expect(frozen.querySelector("rect")).not.toBeNull();
  expect(frozen.textContent).toBe("y");
});

test("a seed without a quiver still shows clickable vertices and a note", () => {
  const state = fixtureJson<SessionState>("ex1_create");
  expect(state.quiver).toBeNull();
  const root = dom(renderQuiver(state));
  expect(root.querySelectorAll("line.arrow")).toHaveLength(0);
  expect(root.querySelectorAll("[data-mutate]")).toHaveLength(4);
  expect(root.querySelector("p.note")!.textContent).toContain("no quiver to draw");
});

test("panels show the numbers exactly as the API sent them", () => {
  const state = fixtureJson<SessionState>("ex1_create");
  const root = dom(renderPanels(state, PRESETS));

  const rank = root.querySelector("[data-rank]")!;
  expect(rank.getAttribute("data-rank")).toBe(String((state.classGroup as any).result.rank));
  expect(rank.textContent).toBe("4");
  expect(root.querySelector("[data-t]")!.textContent).toBe("8");
  expect(root.querySelector(".per-variable")!.textContent).toBe(
    "l1 = 2, l2 = 1, l3 = 3, l4 = 2",
  );

  const polyItems = Array.from(root.querySelectorAll("#polys li"));
  expect(polyItems).toHaveLength(4);
  expect(polyItems[0].textContent).toContain("f1 = x4^4 + x2^2");
  expect(polyItems[0].textContent).toContain("2 factors");
  expect(polyItems[1].textContent).toContain("irreducible");
  expect(polyItems[2].textContent).toContain("3 factors");

  expect(root.querySelector(".badge.ufd-no")).not.toBeNull();
  expect(root.querySelector(".reasons")!.textContent).toBe("l1 = 2, l3 = 3, l4 = 2");

  const select = root.querySelector("#field-select")!;
  const selected = select.querySelector("option[selected]")!;
  expect(selected.getAttribute("value")).toBe("Q(zeta,12)");

  const firstRow = root.querySelector(".matrix tr")!;
  expect(firstRow.textContent).toBe("x10-104");
});

test("a rank-deficient seed renders the refusal instead of numbers", () => {
  const state = fixtureJson<SessionState>("markov_create");
  const root = dom(renderPanels(state, PRESETS));
  expect(root.querySelector("[data-rank]")).toBeNull();
  const warnings = Array.from(root.querySelectorAll(".warning"));
  expect(warnings).toHaveLength(2);
  for (const w of warnings) {
    expect(w.getAttribute("data-status")).toBe("starfish-not-established");
    expect(w.textContent).toContain("starfish not established:");
    expect(w.textContent).toContain("does not have full rank");
  }
});

test("history mirrors the server's undo stack", () => {
  const initial = dom(renderHistory(fixtureJson<SessionState>("ex1_create")));
  expect(initial.textContent).toContain("initial seed");
  expect(initial.querySelector("#undo-btn")!.hasAttribute("disabled")).toBe(true);

  const afterOne = dom(renderHistory(fixtureJson<SessionState>("ex1_mut1")));
  const chips = Array.from(afterOne.querySelectorAll(".chip"));
  expect(chips.map((c) => c.textContent)).toEqual(["μ1"]);
  expect(afterOne.querySelector("#undo-btn")!.hasAttribute("disabled")).toBe(false);
});

test("parse errors draw a caret under the offending position", () => {
  const body = fixtureJson<{ message: string }>("a2_parse_error");
  const root = dom(
    renderConsoleEntry({
      kind: "error",
      expr: "x1 + * x2",
      code: "parse-error",
      message: body.message,
    }),
  );
  expect(root.querySelector("pre.caret")!.textContent).toBe("x1 + * x2\n     ^");
});

test("a failed membership check marks the failing direction", () => {
  const cert = fixtureJson("a2_member_fail");
  const root = dom(renderConsoleEntry({ kind: "member", expr: "1/x1", cert }));
  expect(root.textContent).toContain("not a member");
  const fail = root.querySelector("li.fail")!;
  expect(fail.textContent).toBe("direction 1: fails at power -1");
  expect(root.querySelector("li.ok")!.textContent).toBe("direction 2: ok");
});

test("an upper-bound-only membership verdict carries the caveat", () => {
  const cert = fixtureJson("markov_member");
  const root = dom(
    renderConsoleEntry({ kind: "member", expr: "(x1^2+x2^2+x3^2)/(x1*x2*x3)", cert }),
  );
  expect(root.textContent).toContain("member of the upper algebra");
  expect(root.querySelector(".caveat")!.textContent).toContain("upper bound");
  expect(root.querySelectorAll("li.ok")).toHaveLength(3);
});

test("pairing and local factorization entries show the recorded values", () => {
  const pairing = dom(
    renderConsoleEntry({
      kind: "pairing",
      expr: "x1^3*(1+x2)",
      result: fixtureJson("a2_pairing"),
    }),
  );
  expect(pairing.textContent).toContain("(x1 | x1^3*(1+x2)) = 4 (fast)");

  const local = dom(
    renderConsoleEntry({
      kind: "local-factor",
      expr: "x1^2*(1+x2)",
      result: fixtureJson("a2_localfactor"),
      names: ["x1", "x2"],
    }),
  );
  expect(local.textContent).toContain("x1^3");
  expect(local.textContent).toContain("x1^-1 + x1^-1*x2");
});

test("a negative path verdict is spelled out", () => {
  const root = dom(
    renderConsoleEntry({
      kind: "member-path",
      expr: "(1+x2)/(x1*x3)",
      path: [3, 1],
      verdict: fixtureJson("a3_member_path"),
    }),
  );
  expect(root.textContent).toContain("along [3, 1]");
  expect(root.textContent).toContain("not Laurent in the target seed");
});

test("console entries escape user-supplied text", () => {
  const html = renderConsoleEntry({
    kind: "error",
    expr: '<script>alert(1)</script>',
    code: "parse-error",
    message: "bad <input> (at position 0)",
  });
  expect(html).not.toContain("<script>");
  expect(html).toContain("&lt;script&gt;");
});
