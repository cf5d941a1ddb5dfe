import { describe, expect, it } from "vitest";

import {
  EditResult,
  GridModel,
  addControl,
  deleteAt,
  emptyGrid,
  normalize,
  placeGate,
  placeMeasure,
  placeSwap,
  resizeRegisters,
  setCondition,
  validateGrid,
  wrapRepeat,
} from "../src/model.js";

function ok(result: EditResult): GridModel {
  expect(result.ok, result.ok ? "" : result.reason).toBe(true);
  return (result as { ok: true; grid: GridModel }).grid;
}

function reject(result: EditResult): string {
  expect(result.ok).toBe(false);
  return (result as { ok: false; reason: string }).reason;
}

describe("placement", () => {
  it("places a gate on an empty grid", () => {
    const grid = ok(placeGate(emptyGrid(1, 0), 0, 0, "h"));
    expect(grid.columns).toHaveLength(1);
    expect(grid.columns[0].items[0]).toMatchObject({ kind: "gate", name: "h", target: 0 });
  });

  it("packs same-column drops onto distinct wires", () => {
    let grid = emptyGrid(4, 0);
    for (let q = 0; q < 4; q++) grid = ok(placeGate(grid, 0, q, "h"));
    expect(grid.columns).toHaveLength(1);
    expect(grid.columns[0].items).toHaveLength(4);
  });

  it("slides a drop on an occupied cell into the next column", () => {
    let grid = ok(placeGate(emptyGrid(2, 0), 0, 0, "h"));
    grid = ok(placeGate(grid, 0, 0, "x"));
    expect(grid.columns).toHaveLength(2);
    expect(grid.columns[1].items[0]).toMatchObject({ name: "x" });
  });

  it("rejects a control on the target's own wire", () => {
    const grid = ok(placeGate(emptyGrid(2, 0), 0, 1, "x"));
    const reason = reject(addControl(grid, 0, 1, 1, false));
    expect(reason).toMatch(/target's own wire/);
  });

  it("adds controls and anticontrols on other wires", () => {
    let grid = ok(placeGate(emptyGrid(3, 0), 0, 2, "x"));
    grid = ok(addControl(grid, 0, 2, 0, false));
    grid = ok(addControl(grid, 0, 2, 1, true));
    expect(grid.columns[0].items[0]).toMatchObject({ controls: [0], anticontrols: [1] });
  });

  it("rejects out-of-range wires", () => {
    expect(reject(placeGate(emptyGrid(2, 0), 0, 5, "h"))).toMatch(/out of range/);
  });

  it("rejects unknown gates and bad arity", () => {
    expect(reject(placeGate(emptyGrid(1, 0), 0, 0, "warp"))).toMatch(/unknown gate/);
    expect(reject(placeGate(emptyGrid(1, 0), 0, 0, "rz"))).toMatch(/parameter/);
  });

  it("rejects a measure without classical bits", () => {
    expect(reject(placeMeasure(emptyGrid(1, 0), 0, 0, 0))).toMatch(/classical/);
  });

  it("keeps measures apart from gates in a column", () => {
    let grid = ok(placeMeasure(emptyGrid(2, 1), 0, 0, 0));
    grid = ok(placeGate(grid, 0, 1, "x"));
    expect(grid.columns).toHaveLength(2);
  });

  it("places swaps across wires", () => {
    const grid = ok(placeSwap(emptyGrid(3, 0), 0, 0, 2));
    expect(grid.columns[0].items[0]).toMatchObject({ kind: "swap", qa: 0, qb: 2 });
    expect(reject(placeSwap(emptyGrid(3, 0), 0, 1, 1))).toMatch(/differ/);
  });
});

describe("normalization", () => {
  it("is idempotent on every edit result", () => {
    let grid = emptyGrid(4, 1);
    grid = ok(placeGate(grid, 0, 3, "h"));
    grid = ok(placeGate(grid, 1, 3, "x"));
    grid = ok(placeGate(grid, 1, 0, "x"));
    grid = ok(placeMeasure(grid, 5, 2, 0));
    grid = ok(placeGate(grid, 9, 1, "z"));
    expect(normalize(grid)).toEqual(grid);
  });

  it("does not reorder across conditions", () => {
    let grid = ok(placeMeasure(emptyGrid(2, 1), 0, 0, 0));
    grid = ok(placeGate(grid, 1, 1, "x"));
    grid = ok(setCondition(grid, 1, { cbit: 0, value: 1 }));
    grid = ok(placeGate(grid, 2, 0, "z"));
    expect(grid.columns).toHaveLength(3);
    expect(grid.columns[1].condition).toEqual({ cbit: 0, value: 1 });
    expect(grid.columns[2].condition).toBeNull();
  });
});

describe("repeat blocks", () => {
  it("wraps a column range", () => {
    let grid = ok(placeGate(emptyGrid(2, 0), 0, 0, "h"));
    grid = ok(placeGate(grid, 1, 0, "x"));
    grid = ok(placeGate(grid, 2, 0, "h"));
    grid = ok(wrapRepeat(grid, 1, 2, 3));
    expect(grid.blocks).toEqual([{ start: 1, end: 2, count: 3 }]);
  });

  it("rejects overlapping blocks and zero counts", () => {
    let grid = ok(placeGate(emptyGrid(2, 0), 0, 0, "h"));
    grid = ok(placeGate(grid, 1, 0, "x"));
    grid = ok(wrapRepeat(grid, 0, 1, 2));
    expect(reject(wrapRepeat(grid, 1, 1, 2))).toMatch(/overlap/);
    expect(reject(wrapRepeat(ok(placeGate(emptyGrid(1, 0), 0, 0, "h")), 0, 0, 0)))
      .toMatch(/count/);
  });

  it("keeps block ranges in step when a column is deleted", () => {
    let grid = ok(placeGate(emptyGrid(1, 0), 0, 0, "h"));
    grid = ok(placeGate(grid, 1, 0, "x"));
    grid = ok(placeGate(grid, 2, 0, "h"));
    grid = ok(wrapRepeat(grid, 1, 2, 2));
    grid = ok(deleteAt(grid, 0, 0));
    expect(grid.blocks).toEqual([{ start: 0, end: 1, count: 2 }]);
    expect(validateGrid(grid)).toBeNull();
  });
});

describe("registers", () => {
  it("rejects shrinking below occupied wires", () => {
    const grid = ok(placeGate(emptyGrid(3, 0), 0, 2, "h"));
    expect(reject(resizeRegisters(grid, 2, 0))).toMatch(/out of range/);
  });

  it("grows freely", () => {
    const grid = ok(placeGate(emptyGrid(1, 0), 0, 0, "h"));
    expect(ok(resizeRegisters(grid, 5, 3)).qubits).toBe(5);
  });
});
