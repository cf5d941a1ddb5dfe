/**
 * The composer's grid model.
 *
 * Rows are qubit wires (row 0, the top wire, is q_0); columns are time
 * steps executed left to right, items within a column top to bottom. A
 * column may carry a classical condition (rendered in the classical
 * region); a contiguous range of columns may be wrapped in a repeat block.
 *
 * Grids are kept canonical: after every edit the columns re-pack greedily
 * (an item joins the previous column when conditions match, no wire spans
 * collide and no block boundary intervenes). Canonical grids round-trip
 * losslessly through the circuit document format.
 */

export type ParamValue = number | [number, number];

export interface GatePlacement {
  kind: "gate";
  name: string;
  params: ParamValue[];
  target: number;
  controls: number[];
  anticontrols: number[];
}

export interface SwapPlacement {
  kind: "swap";
  qa: number;
  qb: number;
  controls: number[];
  anticontrols: number[];
}

export interface MeasurePlacement {
  kind: "measure";
  qubit: number;
  cbit: number;
}

export type Placement = GatePlacement | SwapPlacement | MeasurePlacement;

export interface Condition {
  cbit: number;
  value: 0 | 1;
}

export interface Column {
  condition: Condition | null;
  items: Placement[];
}

/** Inclusive column range repeated `count` times. */
export interface RepeatBlock {
  start: number;
  end: number;
  count: number;
}

export interface GridModel {
  qubits: number;
  cbits: number;
  name: string | null;
  columns: Column[];
  blocks: RepeatBlock[];
}

export type EditResult =
  | { ok: true; grid: GridModel }
  | { ok: false; reason: string };

/** Parameter count per gate name; mirrors the service catalog. */
export const GATE_ARITY: Record<string, number> = {
  i: 0, x: 0, y: 0, z: 0, h: 0, s: 0, sdg: 0, t: 0, tdg: 0,
  p: 1, rx: 1, ry: 1, rz: 1, u2x2: 4,
};

export function emptyGrid(qubits: number, cbits: number): GridModel {
  return { qubits, cbits, name: null, columns: [], blocks: [] };
}

function placementRows(item: Placement): number[] {
  switch (item.kind) {
    case "gate":
      return [item.target, ...item.controls, ...item.anticontrols];
    case "swap":
      return [item.qa, item.qb, ...item.controls, ...item.anticontrols];
    case "measure":
      return [item.qubit];
  }
}

/** Inclusive wire interval occupied by a placement, control links included. */
export function footprint(item: Placement): [number, number] {
  const rows = placementRows(item);
  return [Math.min(...rows), Math.max(...rows)];
}

function spansOverlap(a: [number, number], b: [number, number]): boolean {
  return a[0] <= b[1] && b[0] <= a[1];
}

function sameCondition(a: Condition | null, b: Condition | null): boolean {
  if (a === null || b === null) return a === b;
  return a.cbit === b.cbit && a.value === b.value;
}

/** Measurements live in their own columns, apart from gates and swaps. */
function isMeasureColumn(column: Column): boolean {
  return column.items.some((item) => item.kind === "measure");
}

function validatePlacement(item: Placement, qubits: number, cbits: number): string | null {
  const rows = placementRows(item);
  for (const row of rows) {
    if (!Number.isInteger(row) || row < 0 || row >= qubits) {
      return `wire index ${row} out of range (qubits: ${qubits})`;
    }
  }
  if (item.kind === "gate" || item.kind === "swap") {
    const seen = new Set<number>();
    for (const q of [...item.controls, ...item.anticontrols]) {
      if (seen.has(q)) return `wire ${q} marked as control twice`;
      seen.add(q);
    }
    const actors = item.kind === "gate" ? [item.target] : [item.qa, item.qb];
    for (const a of actors) {
      if (seen.has(a)) return `control on the target's own wire (q_${a})`;
    }
  }
  if (item.kind === "gate") {
    const arity = GATE_ARITY[item.name];
    if (arity === undefined) return `unknown gate "${item.name}"`;
    if (item.params.length !== arity) {
      return `gate "${item.name}" takes ${arity} parameter(s)`;
    }
  }
  if (item.kind === "swap" && item.qa === item.qb) {
    return "swap endpoints must differ";
  }
  if (item.kind === "measure") {
    if (!Number.isInteger(item.cbit) || item.cbit < 0 || item.cbit >= cbits) {
      return `classical bit ${item.cbit} out of range (cbits: ${cbits})`;
    }
  }
  return null;
}

export function validateGrid(grid: GridModel): string | null {
  if (!Number.isInteger(grid.qubits) || grid.qubits < 1) return "at least one qubit required";
  if (!Number.isInteger(grid.cbits) || grid.cbits < 0) return "negative classical register";
  for (const [c, column] of grid.columns.entries()) {
    if (column.condition) {
      const { cbit, value } = column.condition;
      if (!Number.isInteger(cbit) || cbit < 0 || cbit >= grid.cbits) {
        return `column ${c}: condition cbit ${cbit} out of range`;
      }
      if (value !== 0 && value !== 1) return `column ${c}: condition value must be 0 or 1`;
    }
    const kinds = new Set(column.items.map((item) => item.kind === "measure"));
    if (kinds.size > 1) {
      return `column ${c}: measurements cannot share a column with gates`;
    }
    for (const [i, item] of column.items.entries()) {
      const problem = validatePlacement(item, grid.qubits, grid.cbits);
      if (problem) return `column ${c}: ${problem}`;
      for (const other of column.items.slice(0, i)) {
        if (spansOverlap(footprint(item), footprint(other))) {
          return `column ${c}: placements overlap on the wire grid`;
        }
      }
    }
  }
  return blockProblem(grid);
}

/** Structural soundness of the repeat blocks; safe to call pre-normalize. */
function blockProblem(grid: GridModel): string | null {
  let lastEnd = -1;
  for (const block of [...grid.blocks].sort((a, b) => a.start - b.start)) {
    if (!Number.isInteger(block.count) || block.count < 1) return "repeat count must be >= 1";
    if (block.start < 0 || block.end >= grid.columns.length || block.start > block.end) {
      return "repeat block range out of bounds";
    }
    if (block.start <= lastEnd) return "repeat blocks overlap";
    lastEnd = block.end;
  }
  return null;
}

interface Segment {
  count: number | null; // repeat count, or null outside any block
  columns: Column[];
}

function toSegments(grid: GridModel): Segment[] {
  const blocks = [...grid.blocks].sort((a, b) => a.start - b.start);
  const segments: Segment[] = [];
  let cursor = 0;
  for (const block of blocks) {
    if (cursor < block.start) {
      segments.push({ count: null, columns: grid.columns.slice(cursor, block.start) });
    }
    segments.push({ count: block.count, columns: grid.columns.slice(block.start, block.end + 1) });
    cursor = block.end + 1;
  }
  if (cursor < grid.columns.length) {
    segments.push({ count: null, columns: grid.columns.slice(cursor) });
  }
  return segments;
}

function fromSegments(grid: GridModel, segments: Segment[]): GridModel {
  const columns: Column[] = [];
  const blocks: RepeatBlock[] = [];
  for (const segment of segments) {
    if (segment.columns.length === 0) continue;
    const start = columns.length;
    columns.push(...segment.columns);
    if (segment.count !== null) {
      blocks.push({ start, end: columns.length - 1, count: segment.count });
    }
  }
  return { ...grid, columns, blocks };
}

function packColumns(columns: Column[]): Column[] {
  // Items flatten to (column, top-to-bottom) order — exactly the order the
  // document serializer emits. An item joins the previous column only when
  // it sits strictly below everything already there (and conditions
  // match), which preserves that order and makes packing idempotent.
  const packed: Column[] = [];
  for (const column of columns) {
    const ordered = [...column.items].sort((a, b) => footprint(a)[0] - footprint(b)[0]);
    for (const item of ordered) {
      const last = packed[packed.length - 1];
      const bottom = last ? Math.max(...last.items.map((o) => footprint(o)[1])) : Infinity;
      if (
        last &&
        sameCondition(last.condition, column.condition) &&
        isMeasureColumn(last) === (item.kind === "measure") &&
        footprint(item)[0] > bottom
      ) {
        last.items.push(item);
      } else {
        packed.push({ condition: column.condition, items: [item] });
      }
    }
    // an intentionally empty conditional column carries no information; drop
  }
  return packed;
}

/** Re-pack every segment; canonical grids are fixed points of this. */
export function normalize(grid: GridModel): GridModel {
  const segments = toSegments(grid).map((segment) => ({
    count: segment.count,
    columns: packColumns(segment.columns),
  }));
  return fromSegments(grid, segments);
}

function clone(grid: GridModel): GridModel {
  return JSON.parse(JSON.stringify(grid)) as GridModel;
}

function finishEdit(candidate: GridModel): EditResult {
  // Sound blocks are a precondition of normalize, so check them first.
  // Then normalize: packing slides a drop onto an occupied cell into the
  // next column instead of failing. Violations of circuit invariants
  // (control on the target's wire, bad indices, ...) still reject.
  const blocks = blockProblem(candidate);
  if (blocks) return { ok: false, reason: blocks };
  const grid = normalize(candidate);
  const problem = validateGrid(grid);
  if (problem) return { ok: false, reason: problem };
  return { ok: true, grid };
}

/** Column index beyond the end appends a fresh column. */
function columnAt(grid: GridModel, col: number): Column {
  while (grid.columns.length <= col) grid.columns.push({ condition: null, items: [] });
  return grid.columns[col];
}

export function placeGate(
  grid: GridModel,
  col: number,
  row: number,
  name: string,
  params: ParamValue[] = [],
  controls: number[] = [],
  anticontrols: number[] = [],
): EditResult {
  const candidate = clone(grid);
  columnAt(candidate, col).items.push({
    kind: "gate", name, params, target: row,
    controls: [...controls].sort((a, b) => a - b),
    anticontrols: [...anticontrols].sort((a, b) => a - b),
  });
  return finishEdit(candidate);
}

export function placeSwap(grid: GridModel, col: number, qa: number, qb: number): EditResult {
  const candidate = clone(grid);
  columnAt(candidate, col).items.push({
    kind: "swap", qa, qb, controls: [], anticontrols: [],
  });
  return finishEdit(candidate);
}

export function placeMeasure(grid: GridModel, col: number, qubit: number, cbit: number): EditResult {
  const candidate = clone(grid);
  columnAt(candidate, col).items.push({ kind: "measure", qubit, cbit });
  return finishEdit(candidate);
}

function findByRow(column: Column, row: number): Placement | undefined {
  return column.items.find((item) => {
    const [lo, hi] = footprint(item);
    return lo <= row && row <= hi;
  });
}

export function addControl(
  grid: GridModel,
  col: number,
  targetRow: number,
  controlRow: number,
  anti = false,
): EditResult {
  const candidate = clone(grid);
  const column = candidate.columns[col];
  const item = column ? findByRow(column, targetRow) : undefined;
  if (!item || item.kind === "measure") {
    return { ok: false, reason: "no gate here to attach a control to" };
  }
  (anti ? item.anticontrols : item.controls).push(controlRow);
  item.controls.sort((a, b) => a - b);
  item.anticontrols.sort((a, b) => a - b);
  return finishEdit(candidate);
}

export function deleteAt(grid: GridModel, col: number, row: number): EditResult {
  const candidate = clone(grid);
  const column = candidate.columns[col];
  const item = column ? findByRow(column, row) : undefined;
  if (!item) return { ok: false, reason: "nothing to delete here" };
  column.items = column.items.filter((o) => o !== item);
  if (column.items.length === 0) {
    const gone = candidate.columns.indexOf(column);
    candidate.columns.splice(gone, 1);
    candidate.blocks = candidate.blocks
      .map((b) => ({
        start: b.start - (b.start > gone ? 1 : 0),
        end: b.end - (b.end >= gone ? 1 : 0),
        count: b.count,
      }))
      .filter((b) => b.start <= b.end);
  }
  return finishEdit(candidate);
}

export function setCondition(
  grid: GridModel,
  col: number,
  condition: Condition | null,
): EditResult {
  const candidate = clone(grid);
  if (!candidate.columns[col]) return { ok: false, reason: "no such column" };
  candidate.columns[col].condition = condition;
  return finishEdit(candidate);
}

export function wrapRepeat(grid: GridModel, start: number, end: number, count: number): EditResult {
  const candidate = clone(grid);
  candidate.blocks.push({ start, end, count });
  return finishEdit(candidate);
}

export function setBlockCount(grid: GridModel, index: number, count: number): EditResult {
  const candidate = clone(grid);
  if (!candidate.blocks[index]) return { ok: false, reason: "no such repeat block" };
  candidate.blocks[index].count = count;
  return finishEdit(candidate);
}

export function unwrapBlock(grid: GridModel, index: number): EditResult {
  const candidate = clone(grid);
  if (!candidate.blocks[index]) return { ok: false, reason: "no such repeat block" };
  candidate.blocks.splice(index, 1);
  return finishEdit(candidate);
}

export function resizeRegisters(grid: GridModel, qubits: number, cbits: number): EditResult {
  const candidate = clone(grid);
  candidate.qubits = qubits;
  candidate.cbits = cbits;
  return finishEdit(candidate);
}
