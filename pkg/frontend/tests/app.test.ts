// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/app.js";
import { GateEntry, RunResponse } from "../src/api.js";
import { CircuitDocument } from "../src/serialize.js";

/** Offline stand-in for the service: H on one qubit -> 50/50, else |0...0>. */
class FakeClient {
  calls: CircuitDocument[] = [];
  failNext = false;

  async run(circuit: CircuitDocument): Promise<RunResponse> {
    if (this.failNext) {
      this.failNext = false;
      throw new TypeError("fetch failed");
    }
    this.calls.push(circuit);
    const dim = 1 << circuit.qubits;
    const distribution = new Array<number>(dim).fill(0);
    const hadamards = circuit.ops.filter(
      (op) => op.type === "gate" && (op as { name: string }).name === "h",
    ).length;
    if (hadamards > 0 && circuit.qubits === 1) {
      distribution[0] = 0.5;
      distribution[1] = 0.5;
    } else {
      distribution[0] = 1;
    }
    return {
      distribution,
      bloch: Array.from({ length: circuit.qubits }, () =>
        hadamards ? [1, 0, 0] : [0, 0, 1]) as [number, number, number][],
      shot_histogram: {},
      cbits: [],
      seed: 0,
      rng_id: "fake",
    };
  }

  async gates(): Promise<GateEntry[]> {
    return [
      { name: "h", params: 0, display: "Hadamard" },
      { name: "x", params: 0, display: "Pauli-X" },
    ];
  }
}

function barValues(root: HTMLElement): string[] {
  return [...root.querySelectorAll(".histogram .bar-value")].map((el) => el.textContent ?? "");
}

function cell(root: HTMLElement, col: number, row: number): HTMLElement {
  const found = root.querySelector(`td.cell[data-col="${col}"][data-row="${row}"]`);
  if (!found) throw new Error(`no cell (${col}, ${row})`);
  return found as HTMLElement;
}

describe("live feedback", () => {
  let root: HTMLElement;
  let client: FakeClient;
  let app: App;

  beforeEach(() => {
    vi.useFakeTimers();
    root = document.createElement("div");
    document.body.appendChild(root);
    client = new FakeClient();
    app = new App(root, { client, debounceMs: 150 });
  });

  afterEach(() => {
    vi.useRealTimers();
    document.body.textContent = "";
  });

  async function settle(): Promise<void> {
    await vi.advanceTimersByTimeAsync(200);
    while (app.runsInFlight > 0) await vi.advanceTimersByTimeAsync(10);
  }

  it("placing H updates the histogram without a reload", async () => {
    await settle(); // initial empty-grid run
    expect(barValues(root)).toEqual(["1.0000", "0.0000"]);

    cell(root, 0, 0).click(); // default tool is the H gate
    await settle();
    expect(barValues(root)).toEqual(["0.5000", "0.5000"]);

    app.setTool({ kind: "delete" });
    cell(root, 0, 0).click();
    await settle();
    expect(barValues(root)).toEqual(["1.0000", "0.0000"]); // single bar at |0>
  });

  it("rejects a control on the target wire inline, grid unchanged", async () => {
    await settle();
    cell(root, 0, 0).click(); // H on q_0
    await settle();
    const before = JSON.stringify(app.state.grid);

    app.setTool({ kind: "control", anti: false });
    cell(root, 0, 0).click(); // pick the gate...
    cell(root, 0, 0).click(); // ...and its own wire as control
    await settle();

    expect(root.querySelector(".notice")?.textContent).toMatch(/target's own wire/);
    expect(JSON.stringify(app.state.grid)).toBe(before);
  });

  it("debounces rapid edits into one request", async () => {
    await settle();
    const requestsBefore = client.calls.length;
    app.resize(3, 0);
    cell(root, 0, 0).click();
    cell(root, 0, 1).click();
    cell(root, 0, 2).click();
    await settle();
    expect(client.calls.length).toBe(requestsBefore + 1);
  });

  it("keeps last-good results and shows a banner when the service drops", async () => {
    await settle();
    cell(root, 0, 0).click();
    await settle();
    const goodBars = barValues(root);

    client.failNext = true;
    app.setTool({ kind: "delete" });
    cell(root, 0, 0).click();
    await settle();

    const banner = root.querySelector(".banner") as HTMLElement;
    expect(banner.textContent).toMatch(/unreachable/);
    expect(barValues(root)).toEqual(goodBars); // last-good retained

    app.setTool({ kind: "gate", name: "h", params: [] });
    cell(root, 0, 0).click(); // service back: next edit clears the banner
    await settle();
    expect(banner.textContent).toBe("");
  });

  it("rejects a malformed loaded document with a toast, grid unchanged", async () => {
    await settle();
    cell(root, 0, 0).click();
    await settle();
    const before = JSON.stringify(app.state.grid);

    app.loadDocument({ version: 9, qubits: "many" });
    expect(root.querySelector(".notice")?.textContent).toMatch(/load failed/);
    expect(JSON.stringify(app.state.grid)).toBe(before);
  });

  it("renders a histogram that sums to one within display rounding", async () => {
    await settle();
    cell(root, 0, 0).click();
    await settle();
    const total = barValues(root).reduce((s, v) => s + Number(v), 0);
    expect(Math.abs(total - 1)).toBeLessThan(1e-3);
  });

  it("derives the screen purely from state: replaying edits reproduces it", async () => {
    await settle();
    cell(root, 0, 0).click();
    await settle();
    const snapshot = root.querySelector(".grid")!.innerHTML;

    const root2 = document.createElement("div");
    document.body.appendChild(root2);
    const app2 = new App(root2, { client: new FakeClient(), debounceMs: 150 });
    await settle();
    const cell2 = root2.querySelector('td.cell[data-col="0"][data-row="0"]') as HTMLElement;
    cell2.click();
    await settle();
    while (app2.runsInFlight > 0) await vi.advanceTimersByTimeAsync(10);
    expect(root2.querySelector(".grid")!.innerHTML).toBe(snapshot);
  });
});
