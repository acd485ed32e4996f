// SVG + DOM rendering of a ViewState. Pure output: reads the state,
// writes the document, wires clicks back into the controller.

import type { Controller } from "./controller.js";
import { computeLayout } from "./layout.js";
import type { ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(tag: string, attrs: Record<string, string> = {}, text?: string): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function signBadge(sign: number): string {
  return sign > 0 ? "+" : sign < 0 ? "−" : "?";
}

export function render(root: HTMLElement, state: ViewState, ctl: Controller): void {
  root.innerHTML = "";

  const banner = document.createElement("div");
  banner.className = "banner" + (state.periodBanner ? " on" : "");
  banner.id = "period-banner";
  banner.textContent = state.periodBanner
    ? `seed period detected after ${state.history.length} mutations`
    : "";
  root.appendChild(banner);

  const strip = document.createElement("div");
  strip.className = "history";
  strip.id = "history-strip";
  strip.textContent = state.history.length
    ? "history: " + state.history.map((k) => state.labels[k - 1] ?? String(k)).join(" → ")
    : "history: (initial seed)";
  root.appendChild(strip);

  const undo = document.createElement("button");
  undo.id = "undo";
  undo.textContent = "undo";
  undo.disabled = state.history.length === 0;
  undo.onclick = () => void ctl.clickUndo();
  root.appendChild(undo);

  const checkBtn = document.createElement("button");
  checkBtn.id = "check-period";
  checkBtn.textContent = "check period (history)";
  checkBtn.disabled = state.history.length === 0;
  checkBtn.onclick = () => void ctl.runPeriodCheck();
  root.appendChild(checkBtn);

  const dilogBtn = document.createElement("button");
  dilogBtn.id = "run-dilog";
  dilogBtn.textContent = "dilogarithm panel";
  dilogBtn.disabled = !state.dilogEnabled;
  dilogBtn.onclick = () => void ctl.runDilogPanel({ trials: 5, rng_seed: 123 });
  root.appendChild(dilogBtn);

  const n = state.labels.length;
  const pts = computeLayout(n, state.arrows, state.layout);
  const xs = pts.map((p) => p.x);
  const ys = pts.map((p) => p.y);
  const pad = 60;
  const minX = Math.min(...xs) - pad;
  const minY = Math.min(...ys) - pad;
  const width = Math.max(...xs) - minX + pad;
  const height = Math.max(...ys) - minY + pad;

  const svg = el("svg", {
    viewBox: `${minX} ${minY} ${width} ${height}`,
    width: "760",
    id: "quiver",
  });

  const defs = el("defs");
  const marker = el("marker", {
    id: "arrowhead",
    markerWidth: "8",
    markerHeight: "8",
    refX: "7",
    refY: "3",
    orient: "auto",
  });
  marker.appendChild(el("path", { d: "M0,0 L7,3 L0,6 z", fill: "#555" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const [i, j, mult] of state.arrows) {
    const a = pts[i - 1];
    const b = pts[j - 1];
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.max(Math.hypot(dx, dy), 1);
    const trim = 16 / d;
    const line = el("line", {
      x1: String(a.x + dx * trim),
      y1: String(a.y + dy * trim),
      x2: String(b.x - dx * trim),
      y2: String(b.y - dy * trim),
      stroke: "#555",
      "stroke-width": mult > 3 ? "2.5" : String(Math.min(mult, 3)),
      "marker-end": "url(#arrowhead)",
    });
    svg.appendChild(line);
    if (mult > 3) {
      svg.appendChild(
        el(
          "text",
          { x: String((a.x + b.x) / 2), y: String((a.y + b.y) / 2 - 4), class: "mult" },
          String(mult),
        ),
      );
    }
  }

  pts.forEach((p, idx) => {
    const group = el("g", { class: "vertex", "data-k": String(idx + 1) });
    const circle = el("circle", {
      cx: String(p.x),
      cy: String(p.y),
      r: "13",
      class: state.signs[idx] > 0 ? "pos" : state.signs[idx] < 0 ? "neg" : "mixed",
    });
    group.appendChild(circle);
    group.appendChild(
      el("text", { x: String(p.x), y: String(p.y + 4), class: "label" }, state.labels[idx]),
    );
    group.appendChild(
      el(
        "text",
        { x: String(p.x + 16), y: String(p.y - 10), class: "badge" },
        signBadge(state.signs[idx]),
      ),
    );
    const gvec = state.gColumns.map((row) => row[idx]);
    group.appendChild(
      el(
        "title",
        {},
        `vertex ${state.labels[idx]}\ntropical sign ${signBadge(state.signs[idx])}\ng-vector (${gvec.join(", ")})`,
      ),
    );
    (group as unknown as HTMLElement).onclick = () => void ctl.clickVertex(idx + 1);
    svg.appendChild(group);
  });
  root.appendChild(svg as unknown as Node);

  const panels = document.createElement("div");
  panels.className = "panels";

  if (state.verdict) {
    const v = document.createElement("pre");
    v.id = "verdict-panel";
    v.textContent = JSON.stringify(state.verdict, null, 2);
    panels.appendChild(v);
  }
  if (state.dilog) {
    const d = document.createElement("div");
    d.id = "dilog-panel";
    const r = state.dilog.report;
    d.innerHTML =
      `<b>dilogarithm identities</b> (trials=${r.trials})<br>` +
      `N+ = ${r.n_plus}, N− = ${r.n_minus}, |S+| = ${r.n_plus + r.n_minus}<br>` +
      `sum− = ${r.sum_minus} (residual ${r.residual_minus.toExponential(2)})<br>` +
      `sum+ = ${r.sum_plus} (residual ${r.residual_plus.toExponential(2)})<br>` +
      `trial spread ${r.trial_spread.toExponential(2)}; ${r.ok ? "identities hold" : "VIOLATION"}`;
    panels.appendChild(d);
  }
  if (state.note) {
    const noteEl = document.createElement("div");
    noteEl.className = "note";
    noteEl.id = "note";
    noteEl.textContent = state.note;
    panels.appendChild(noteEl);
  }
  if (state.candidateNus) {
    const nus = document.createElement("div");
    nus.id = "nu-panel";
    const title = document.createElement("span");
    title.textContent = state.candidateNus.length
      ? "check the history against a relabeling: "
      : "no relabeling makes the history a matrix period";
    nus.appendChild(title);
    for (const nu of state.candidateNus) {
      const btn = document.createElement("button");
      btn.textContent = `[${nu.join(",")}]`;
      btn.onclick = () => void ctl.runPeriodCheck(nu);
      nus.appendChild(btn);
    }
    panels.appendChild(nus);
  }
  root.appendChild(panels);
}
