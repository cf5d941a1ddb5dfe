/**
 * Grid <-> circuit document conversion.
 *
 * One column serializes to one or more sequential ops, top to bottom; a
 * conditional column becomes a single `if` op wrapping its items; a repeat
 * block becomes one `repeat` op whose body concatenates its columns.
 * Loading accepts every document the grid can produce (flat `if` bodies,
 * optionally inside one level of `repeat`) and rejects deeper nesting,
 * which the wire grid cannot display.
 */

import {
  Column,
  Condition,
  GridModel,
  GATE_ARITY,
  Placement,
  footprint,
  normalize,
  validateGrid,
} from "./model.js";

export interface CircuitDocument {
  version: 1;
  name?: string;
  qubits: number;
  cbits: number;
  ops: OpDocument[];
}

export type OpDocument = Record<string, unknown> & { type: string };

function placementToOp(item: Placement): OpDocument {
  switch (item.kind) {
    case "gate":
      return {
        type: "gate",
        name: item.name,
        target: item.target,
        controls: [...item.controls].sort((a, b) => a - b),
        anticontrols: [...item.anticontrols].sort((a, b) => a - b),
        params: item.params,
      };
    case "swap":
      return {
        type: "swap",
        qa: item.qa,
        qb: item.qb,
        controls: [...item.controls].sort((a, b) => a - b),
        anticontrols: [...item.anticontrols].sort((a, b) => a - b),
      };
    case "measure":
      return { type: "measure", qubit: item.qubit, cbit: item.cbit };
  }
}

function columnToOps(column: Column): OpDocument[] {
  const ordered = [...column.items].sort((a, b) => footprint(a)[0] - footprint(b)[0]);
  const ops = ordered.map(placementToOp);
  if (column.condition) {
    return [{
      type: "if",
      cbit: column.condition.cbit,
      value: column.condition.value,
      body: ops,
    }];
  }
  return ops;
}

export function gridToDocument(grid: GridModel): CircuitDocument {
  const ops: OpDocument[] = [];
  const blocks = [...grid.blocks].sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const block of blocks) {
    for (; cursor < block.start; cursor++) ops.push(...columnToOps(grid.columns[cursor]));
    const body: OpDocument[] = [];
    for (; cursor <= block.end; cursor++) body.push(...columnToOps(grid.columns[cursor]));
    ops.push({ type: "repeat", count: block.count, body });
  }
  for (; cursor < grid.columns.length; cursor++) ops.push(...columnToOps(grid.columns[cursor]));

  const doc: CircuitDocument = {
    version: 1,
    qubits: grid.qubits,
    cbits: grid.cbits,
    ops,
  };
  if (grid.name !== null) doc.name = grid.name;
  return doc;
}

class LoadError extends Error {}

function expectInt(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new LoadError(`${what} must be an integer`);
  }
  return value;
}

function intList(value: unknown, what: string): number[] {
  if (value === undefined) return [];
  if (!Array.isArray(value)) throw new LoadError(`${what} must be a list`);
  return value.map((v) => expectInt(v, what));
}

function opToPlacement(op: OpDocument): Placement {
  if (op.type === "gate") {
    const name = op.name;
    if (typeof name !== "string" || GATE_ARITY[name] === undefined) {
      throw new LoadError(`unknown gate name ${JSON.stringify(name)}`);
    }
    const params = (op.params ?? []) as Array<number | [number, number]>;
    if (!Array.isArray(params)) throw new LoadError("gate params must be a list");
    return {
      kind: "gate",
      name,
      params,
      target: expectInt(op.target, "gate target"),
      controls: intList(op.controls, "controls"),
      anticontrols: intList(op.anticontrols, "anticontrols"),
    };
  }
  if (op.type === "swap") {
    return {
      kind: "swap",
      qa: expectInt(op.qa, "swap qa"),
      qb: expectInt(op.qb, "swap qb"),
      controls: intList(op.controls, "controls"),
      anticontrols: intList(op.anticontrols, "anticontrols"),
    };
  }
  if (op.type === "measure") {
    return {
      kind: "measure",
      qubit: expectInt(op.qubit, "measured qubit"),
      cbit: expectInt(op.cbit, "classical bit"),
    };
  }
  throw new LoadError(`op type ${JSON.stringify(op.type)} cannot be placed on the grid`);
}

function conditionOf(op: OpDocument): Condition {
  const value = expectInt(op.value, "condition value");
  if (value !== 0 && value !== 1) throw new LoadError("condition value must be 0 or 1");
  return { cbit: expectInt(op.cbit, "condition cbit"), value };
}

function opsToColumns(ops: unknown, depth: "top" | "repeat" | "if"): Column[] {
  if (!Array.isArray(ops)) throw new LoadError("ops must be a list");
  const columns: Column[] = [];
  for (const raw of ops) {
    const op = raw as OpDocument;
    if (op.type === "if") {
      if (depth === "if") throw new LoadError("nested conditionals cannot be displayed");
      const condition = conditionOf(op);
      for (const inner of opsToColumns(op.body, "if")) {
        columns.push({ condition, items: inner.items });
      }
    } else if (op.type === "repeat") {
      throw new LoadError("nested repeat blocks cannot be displayed");
    } else {
      columns.push({ condition: null, items: [opToPlacement(op)] });
    }
  }
  return columns;
}

export function documentToGrid(doc: unknown): GridModel {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new LoadError("circuit document must be an object");
  }
  const d = doc as Record<string, unknown>;
  if (d.version !== 1) throw new LoadError("unsupported document version");
  const qubits = expectInt(d.qubits, "qubits");
  const cbits = d.cbits === undefined ? 0 : expectInt(d.cbits, "cbits");
  const name = typeof d.name === "string" ? d.name : null;
  if (!Array.isArray(d.ops)) throw new LoadError("ops must be a list");

  const grid: GridModel = { qubits, cbits, name, columns: [], blocks: [] };
  for (const raw of d.ops) {
    const op = raw as OpDocument;
    if (op.type === "repeat") {
      const count = expectInt(op.count, "repeat count");
      const body = opsToColumns(op.body, "repeat");
      if (body.length > 0) {
        const start = grid.columns.length;
        grid.columns.push(...body);
        grid.blocks.push({ start, end: grid.columns.length - 1, count });
      }
    } else {
      grid.columns.push(...opsToColumns([op], "top"));
    }
  }

  const packed = normalize(grid);
  const problem = validateGrid(packed);
  if (problem) throw new LoadError(problem);
  return packed;
}
