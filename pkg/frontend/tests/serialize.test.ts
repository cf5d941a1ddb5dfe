import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { documentToGrid, gridToDocument } from "../src/serialize.js";
import { groverTemplate, teleportationTemplate } from "../src/templates.js";
import { EditResult, GridModel, emptyGrid, placeGate, placeMeasure, setCondition, wrapRepeat } from "../src/model.js";

const repoFile = (rel: string) =>
  fileURLToPath(new URL(`../../${rel}`, import.meta.url));

function ok(result: EditResult): GridModel {
  if (!result.ok) throw new Error(result.reason);
  return result.grid;
}

describe("grid -> document", () => {
  it("serializes columns top to bottom", () => {
    let grid = ok(placeGate(emptyGrid(3, 0), 0, 2, "x"));
    grid = ok(placeGate(grid, 1, 0, "h"));
    grid = ok(placeGate(grid, 1, 1, "z"));
    const doc = gridToDocument(grid);
    expect(doc.ops.map((op) => [op.type, (op as { target: number }).target])).toEqual([
      ["gate", 2],
      ["gate", 0],
      ["gate", 1],
    ]);
  });

  it("wraps conditional columns in if ops", () => {
    let grid = ok(placeMeasure(emptyGrid(2, 1), 0, 0, 0));
    grid = ok(placeGate(grid, 1, 1, "x"));
    grid = ok(setCondition(grid, 1, { cbit: 0, value: 1 }));
    const doc = gridToDocument(grid);
    expect(doc.ops[1]).toMatchObject({ type: "if", cbit: 0, value: 1 });
  });

  it("emits repeat ops for blocks", () => {
    let grid = ok(placeGate(emptyGrid(1, 0), 0, 0, "h"));
    grid = ok(placeGate(grid, 1, 0, "x"));
    grid = ok(wrapRepeat(grid, 1, 1, 4));
    const doc = gridToDocument(grid);
    expect(doc.ops[1]).toMatchObject({ type: "repeat", count: 4 });
  });
});

describe("round trips", () => {
  const cases: [string, () => GridModel][] = [
    ["grover template", () => groverTemplate()],
    ["teleportation template", () => teleportationTemplate()],
    ["single-target grover", () => groverTemplate(2, "11", 1)],
    ["conditional grid", () => {
      let grid = ok(placeMeasure(emptyGrid(3, 2), 0, 0, 0));
      grid = ok(placeMeasure(grid, 0, 1, 1));
      grid = ok(placeGate(grid, 1, 2, "x"));
      grid = ok(setCondition(grid, 1, { cbit: 1, value: 0 }));
      grid = ok(placeGate(grid, 2, 2, "rz", [0.5]));
      return grid;
    }],
  ];

  for (const [label, build] of cases) {
    it(`grid -> document -> grid is lossless for the ${label}`, () => {
      const grid = build();
      expect(documentToGrid(gridToDocument(grid))).toEqual(grid);
    });
  }

  it("loading a saved document twice is stable", () => {
    const doc = gridToDocument(groverTemplate());
    const once = documentToGrid(doc);
    expect(gridToDocument(once)).toEqual(doc);
  });
});

describe("loading shipped circuits", () => {
  it("renders teleportation with 3 wires and 2 cbits", () => {
    const doc = JSON.parse(readFileSync(repoFile("examples/teleportation.json"), "utf-8"));
    const grid = documentToGrid(doc);
    expect(grid.qubits).toBe(3);
    expect(grid.cbits).toBe(2);
    expect(grid.columns.length).toBeGreaterThan(4);
  });

  it("renders grover with one repeat block of count 3", () => {
    const doc = JSON.parse(readFileSync(repoFile("examples/grover_0110.json"), "utf-8"));
    const grid = documentToGrid(doc);
    expect(grid.blocks).toHaveLength(1);
    expect(grid.blocks[0].count).toBe(3);
  });

  it("the grover template exports the same ops as the shipped file", () => {
    const shipped = JSON.parse(readFileSync(repoFile("examples/grover_0110.json"), "utf-8"));
    const exported = gridToDocument(groverTemplate());
    expect(exported.ops).toEqual(shipped.ops);
  });
});

describe("rejected documents", () => {
  it("rejects nested repeats", () => {
    const doc = {
      version: 1, qubits: 1, cbits: 0,
      ops: [{ type: "repeat", count: 2, body: [{ type: "repeat", count: 2, body: [] }] }],
    };
    expect(() => documentToGrid(doc)).toThrow(/nested repeat/);
  });

  it("rejects unknown gate names", () => {
    const doc = { version: 1, qubits: 1, cbits: 0,
                  ops: [{ type: "gate", name: "warp", target: 0, params: [] }] };
    expect(() => documentToGrid(doc)).toThrow(/unknown gate/);
  });

  it("rejects wrong versions and malformed shapes", () => {
    expect(() => documentToGrid({ version: 2, qubits: 1, ops: [] })).toThrow(/version/);
    expect(() => documentToGrid([1, 2, 3])).toThrow(/object/);
  });
});
