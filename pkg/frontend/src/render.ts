/**
 * DOM rendering. Every function rebuilds its container from the given
 * state, so the screen is a pure function of (grid, last run response).
 */

import { GridModel, Placement, footprint } from "./model.js";
import { RunResponse } from "./api.js";

/** q_0-first basis label for amplitude index `i`. */
export function basisLabel(i: number, qubits: number): string {
  let label = "";
  for (let q = 0; q < qubits; q++) label += (i >> q) & 1 ? "1" : "0";
  return label;
}

const GLYPHS: Record<string, string> = {
  i: "I", x: "X", y: "Y", z: "Z", h: "H", s: "S", sdg: "S†",
  t: "T", tdg: "T†", p: "P", rx: "Rx", ry: "Ry", rz: "Rz", u2x2: "U",
};

export interface GridHandlers {
  onCellClick(col: number, row: number): void;
  onClassicalClick(col: number, cbit: number): void;
}

function cellContent(item: Placement | undefined, row: number): { text: string; cls: string } {
  if (!item) return { text: "", cls: "empty" };
  if (item.kind === "measure") {
    return item.qubit === row ? { text: "M", cls: "measure" } : { text: "", cls: "link" };
  }
  const controls = item.controls.includes(row);
  const anticontrols = item.anticontrols.includes(row);
  if (controls) return { text: "●", cls: "control" };
  if (anticontrols) return { text: "○", cls: "anticontrol" };
  if (item.kind === "swap") {
    return item.qa === row || item.qb === row
      ? { text: "✕", cls: "swap" }
      : { text: "", cls: "link" };
  }
  return item.target === row ? { text: GLYPHS[item.name] ?? item.name, cls: "gate" } : { text: "", cls: "link" };
}

function itemAt(grid: GridModel, col: number, row: number): Placement | undefined {
  const column = grid.columns[col];
  if (!column) return undefined;
  return column.items.find((item) => {
    const [lo, hi] = footprint(item);
    return lo <= row && row <= hi;
  });
}

export function renderGrid(root: HTMLElement, grid: GridModel, handlers: GridHandlers): void {
  root.textContent = "";
  const table = root.ownerDocument.createElement("table");
  table.className = "wires";
  const columns = grid.columns.length + 1; // trailing drop column

  const header = table.insertRow();
  header.insertCell().textContent = "";
  for (let c = 0; c < columns; c++) {
    const cell = header.insertCell();
    const block = grid.blocks.find((b) => b.start <= c && c <= b.end);
    if (block) {
      cell.textContent = c === block.start ? `↻×${block.count}` : "─";
      cell.className = "block-badge";
    }
  }

  for (let row = 0; row < grid.qubits; row++) {
    const tr = table.insertRow();
    const label = tr.insertCell();
    label.textContent = `q${row}`;
    label.className = "wire-label";
    for (let col = 0; col < columns; col++) {
      const cell = tr.insertCell();
      const item = itemAt(grid, col, row);
      const { text, cls } = cellContent(item, row);
      cell.textContent = text;
      cell.className = `cell ${cls}`;
      cell.dataset.col = String(col);
      cell.dataset.row = String(row);
      cell.addEventListener("click", () => handlers.onCellClick(col, row));
    }
  }

  for (let cbit = 0; cbit < grid.cbits; cbit++) {
    const tr = table.insertRow();
    tr.className = "classical";
    const label = tr.insertCell();
    label.textContent = `c${cbit}`;
    label.className = "wire-label";
    for (let col = 0; col < columns; col++) {
      const cell = tr.insertCell();
      const column = grid.columns[col];
      let text = "";
      if (column) {
        const measured = column.items.some(
          (item) => item.kind === "measure" && item.cbit === cbit,
        );
        if (measured) text = "⤓";
        if (column.condition && column.condition.cbit === cbit) {
          text = `=${column.condition.value}`;
        }
      }
      cell.textContent = text;
      cell.className = "cell classical-cell";
      cell.dataset.col = String(col);
      cell.dataset.cbit = String(cbit);
      cell.addEventListener("click", () => handlers.onClassicalClick(col, cbit));
    }
  }

  root.appendChild(table);
}

export function renderHistogram(root: HTMLElement, response: RunResponse | null, qubits: number): void {
  root.textContent = "";
  if (!response) return;
  const doc = root.ownerDocument;
  for (const [i, p] of response.distribution.entries()) {
    const rowEl = doc.createElement("div");
    rowEl.className = "bar-row";
    const label = doc.createElement("span");
    label.className = "bar-label";
    label.textContent = basisLabel(i, qubits);
    const bar = doc.createElement("div");
    bar.className = "bar";
    bar.style.width = `${(p * 100).toFixed(2)}%`;
    const value = doc.createElement("span");
    value.className = "bar-value";
    value.textContent = p.toFixed(4);
    rowEl.append(label, bar, value);
    root.appendChild(rowEl);
  }
}

const PROJECTIONS: [string, number, number][] = [
  // axis pairs drawn as 2D orthographic projections
  ["xy", 0, 1],
  ["xz", 0, 2],
  ["yz", 1, 2],
];

export function renderBloch(root: HTMLElement, response: RunResponse | null): void {
  root.textContent = "";
  if (!response) return;
  const doc = root.ownerDocument;
  const svgNS = "http://www.w3.org/2000/svg";
  for (const [q, vector] of response.bloch.entries()) {
    const panel = doc.createElement("div");
    panel.className = "bloch-panel";
    const title = doc.createElement("div");
    title.textContent = `q${q}`;
    panel.appendChild(title);
    for (const [name, ax, ay] of PROJECTIONS) {
      const svg = doc.createElementNS(svgNS, "svg");
      svg.setAttribute("viewBox", "-1.2 -1.2 2.4 2.4");
      svg.setAttribute("class", `bloch bloch-${name}`);
      const circle = doc.createElementNS(svgNS, "circle");
      circle.setAttribute("r", "1");
      circle.setAttribute("class", "bloch-rim");
      const line = doc.createElementNS(svgNS, "line");
      line.setAttribute("x1", "0");
      line.setAttribute("y1", "0");
      line.setAttribute("x2", String(vector[ax]));
      line.setAttribute("y2", String(-vector[ay]));
      const dot = doc.createElementNS(svgNS, "circle");
      dot.setAttribute("cx", String(vector[ax]));
      dot.setAttribute("cy", String(-vector[ay]));
      dot.setAttribute("r", "0.08");
      dot.setAttribute("class", "bloch-dot");
      svg.append(circle, line, dot);
      panel.appendChild(svg);
    }
    root.appendChild(panel);
  }
}
