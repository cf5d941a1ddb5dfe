/**
 * Controller: wires the grid model, service client and renderers together.
 *
 * Edits flow one way: tool click -> model edit -> (rejected? inline notice,
 * grid untouched : new grid) -> re-render -> debounced run request ->
 * response re-renders histogram and Bloch panels. A newer edit supersedes
 * any pending request; if the service is unreachable a banner appears and
 * the last good results stay on screen.
 */

import { GateEntry, RunResponse, ServiceError, SimClient, isAbort } from "./api.js";
import {
  Condition,
  EditResult,
  GATE_ARITY,
  GridModel,
  addControl,
  deleteAt,
  emptyGrid,
  placeGate,
  placeMeasure,
  placeSwap,
  resizeRegisters,
  setCondition,
  wrapRepeat,
} from "./model.js";
import { renderBloch, renderGrid, renderHistogram } from "./render.js";
import { CircuitDocument, documentToGrid, gridToDocument } from "./serialize.js";
import { groverTemplate, teleportationTemplate } from "./templates.js";

export type Tool =
  | { kind: "gate"; name: string; params: number[] }
  | { kind: "control"; anti: boolean }
  | { kind: "swap" }
  | { kind: "measure" }
  | { kind: "condition"; value: 0 | 1 }
  | { kind: "delete" };

export interface AppState {
  grid: GridModel;
  lastResponse: RunResponse | null;
  banner: string | null;
  notice: string | null;
  tool: Tool;
  seed: number;
  shots: number;
  pendingWire: number | null; // first endpoint for control/swap tools
}

interface ClientLike {
  run(circuit: CircuitDocument, seed?: number, shots?: number): Promise<RunResponse>;
  gates(): Promise<GateEntry[]>;
}

export interface AppOptions {
  client?: ClientLike;
  debounceMs?: number;
}

export class App {
  state: AppState;
  readonly client: ClientLike;
  readonly debounceMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly els: Record<string, HTMLElement>;
  runsInFlight = 0;

  constructor(readonly root: HTMLElement, options: AppOptions = {}) {
    this.client = options.client ?? new SimClient("");
    this.debounceMs = options.debounceMs ?? 150;
    this.state = {
      grid: emptyGrid(1, 0),
      lastResponse: null,
      banner: null,
      notice: null,
      tool: { kind: "gate", name: "h", params: [] },
      seed: 0,
      shots: 1,
      pendingWire: null,
    };
    this.els = this.buildLayout();
    this.renderAll();
    this.scheduleRun();
  }

  private buildLayout(): Record<string, HTMLElement> {
    const doc = this.root.ownerDocument;
    const make = (tag: string, cls: string, parent: HTMLElement) => {
      const el = doc.createElement(tag);
      el.className = cls;
      parent.appendChild(el);
      return el as HTMLElement;
    };
    this.root.textContent = "";
    const palette = make("div", "palette", this.root);
    const notice = make("div", "notice", this.root);
    const banner = make("div", "banner", this.root);
    const gridEl = make("div", "grid", this.root);
    const results = make("div", "results", this.root);
    const histogram = make("div", "histogram", results);
    const bloch = make("div", "bloch-wall", results);
    return { palette, notice, banner, grid: gridEl, histogram, bloch };
  }

  /** Fill the gate palette from the service catalog (or a built-in list). */
  async loadPalette(): Promise<void> {
    let entries: GateEntry[];
    try {
      entries = await this.client.gates();
    } catch {
      entries = Object.keys(GATE_ARITY).map((name) => ({
        name, params: GATE_ARITY[name], display: name,
      }));
    }
    const doc = this.root.ownerDocument;
    const palette = this.els.palette;
    palette.textContent = "";
    for (const entry of entries) {
      if (entry.name === "u2x2") continue; // parameters need the file route
      const button = doc.createElement("button");
      button.textContent = entry.display;
      button.dataset.gate = entry.name;
      button.addEventListener("click", () => {
        const params = entry.params > 0
          ? [Number(this.promptAngle() ?? 0)]
          : [];
        this.setTool({ kind: "gate", name: entry.name, params });
      });
      palette.appendChild(button);
    }
    for (const [label, tool] of [
      ["● ctrl", { kind: "control", anti: false }],
      ["○ anti", { kind: "control", anti: true }],
      ["swap", { kind: "swap" }],
      ["measure", { kind: "measure" }],
      ["if=1", { kind: "condition", value: 1 }],
      ["if=0", { kind: "condition", value: 0 }],
      ["delete", { kind: "delete" }],
    ] as [string, Tool][]) {
      const button = doc.createElement("button");
      button.textContent = label;
      button.addEventListener("click", () => this.setTool(tool));
      palette.appendChild(button);
    }
  }

  promptAngle(): string | null {
    const win = this.root.ownerDocument.defaultView;
    return win && typeof win.prompt === "function" ? win.prompt("angle (radians)") : "0";
  }

  setTool(tool: Tool): void {
    this.state.tool = tool;
    this.state.pendingWire = null;
    this.setNotice(null);
  }

  setNotice(text: string | null): void {
    this.state.notice = text;
    this.els.notice.textContent = text ?? "";
  }

  /** Apply a model edit; rejected edits surface inline and change nothing. */
  applyEdit(result: EditResult): boolean {
    if (!result.ok) {
      this.setNotice(`rejected: ${result.reason}`);
      return false;
    }
    this.state.grid = result.grid;
    this.setNotice(null);
    this.renderAll();
    this.scheduleRun();
    return true;
  }

  handleCellClick(col: number, row: number): void {
    const { tool, grid, pendingWire } = this.state;
    switch (tool.kind) {
      case "gate":
        this.applyEdit(placeGate(grid, col, row, tool.name, tool.params));
        break;
      case "control":
        if (pendingWire === null) {
          this.state.pendingWire = row;
          this.setNotice("now pick the wire to condition on");
        } else {
          this.state.pendingWire = null;
          this.applyEdit(addControl(grid, col, pendingWire, row, tool.anti));
        }
        break;
      case "swap":
        if (pendingWire === null) {
          this.state.pendingWire = row;
          this.setNotice("now pick the second wire to swap");
        } else {
          this.state.pendingWire = null;
          this.applyEdit(placeSwap(grid, col, pendingWire, row));
        }
        break;
      case "measure":
        this.applyEdit(placeMeasure(grid, col, row, this.nextCbit(row)));
        break;
      case "delete":
        this.applyEdit(deleteAt(grid, col, row));
        break;
      case "condition":
        this.setNotice("conditions attach in the classical region below the wires");
        break;
    }
  }

  private nextCbit(row: number): number {
    return this.state.grid.cbits > row ? row : Math.max(0, this.state.grid.cbits - 1);
  }

  handleClassicalClick(col: number, cbit: number): void {
    const { tool, grid } = this.state;
    if (tool.kind === "condition") {
      const current = grid.columns[col]?.condition;
      const next: Condition | null =
        current && current.cbit === cbit && current.value === tool.value
          ? null // clicking again clears it
          : { cbit, value: tool.value };
      this.applyEdit(setCondition(grid, col, next));
    } else if (tool.kind === "delete") {
      this.applyEdit(setCondition(grid, col, null));
    }
  }

  wrapColumnsInRepeat(start: number, end: number, count: number): void {
    this.applyEdit(wrapRepeat(this.state.grid, start, end, count));
  }

  resize(qubits: number, cbits: number): void {
    this.applyEdit(resizeRegisters(this.state.grid, qubits, cbits));
  }

  loadTemplate(name: "empty" | "grover" | "teleportation"): void {
    const grid =
      name === "grover" ? groverTemplate() :
      name === "teleportation" ? teleportationTemplate() :
      emptyGrid(1, 0);
    this.applyEdit({ ok: true, grid });
  }

  exportDocument(): CircuitDocument {
    return gridToDocument(this.state.grid);
  }

  loadDocument(doc: unknown): void {
    try {
      const grid = documentToGrid(doc);
      this.applyEdit({ ok: true, grid });
    } catch (err) {
      this.setNotice(`load failed: ${(err as Error).message}`);
    }
  }

  scheduleRun(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.runNow();
    }, this.debounceMs);
  }

  async runNow(): Promise<void> {
    this.runsInFlight += 1;
    try {
      const response = await this.client.run(
        this.exportDocument(), this.state.seed, this.state.shots,
      );
      this.state.lastResponse = response;
      this.state.banner = null;
    } catch (err) {
      if (isAbort(err)) return;
      if (err instanceof ServiceError) {
        this.setNotice(`service rejected the circuit: ${err.message}`);
      } else {
        // network trouble: keep the last good results, show the banner
        this.state.banner = "simulator service unreachable — showing last results";
      }
    } finally {
      this.runsInFlight -= 1;
      this.renderResults();
    }
  }

  renderAll(): void {
    renderGrid(this.els.grid, this.state.grid, {
      onCellClick: (col, row) => this.handleCellClick(col, row),
      onClassicalClick: (col, cbit) => this.handleClassicalClick(col, cbit),
    });
    this.renderResults();
  }

  renderResults(): void {
    this.els.banner.textContent = this.state.banner ?? "";
    this.els.banner.style.display = this.state.banner ? "block" : "none";
    renderHistogram(this.els.histogram, this.state.lastResponse, this.state.grid.qubits);
    renderBloch(this.els.bloch, this.state.lastResponse);
  }
}
