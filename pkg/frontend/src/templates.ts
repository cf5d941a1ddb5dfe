/**
 * Bundled circuit templates, built through the same edit actions a user
 * would perform on the grid.
 */

import {
  EditResult,
  GridModel,
  emptyGrid,
  placeGate,
  placeMeasure,
  setCondition,
  wrapRepeat,
} from "./model.js";

function must(result: EditResult): GridModel {
  if (!result.ok) throw new Error(`template construction failed: ${result.reason}`);
  return result.grid;
}

/** Grover search over n wires marking `target` (q_0-first), `rounds` iterations. */
export function groverTemplate(n = 4, target = "0110", rounds = 3): GridModel {
  let grid = emptyGrid(n, 0);
  grid.name = `grover-${target}`;

  for (let q = 0; q < n; q++) grid = must(placeGate(grid, 0, q, "h"));
  const blockStart = grid.columns.length;

  // oracle: phase-flip the target basis state
  const controls: number[] = [];
  const anticontrols: number[] = [];
  for (let q = 0; q < n - 1; q++) (target[q] === "1" ? controls : anticontrols).push(q);
  const flip = target[n - 1] === "0";
  if (flip) grid = must(placeGate(grid, grid.columns.length, n - 1, "x"));
  grid = must(placeGate(grid, grid.columns.length, n - 1, "z", [], controls, anticontrols));
  if (flip) grid = must(placeGate(grid, grid.columns.length, n - 1, "x"));

  // diffusion: H^n X^n (n-1)-controlled Z X^n H^n
  for (const layer of ["h", "x"]) {
    const col = grid.columns.length;
    for (let q = 0; q < n; q++) grid = must(placeGate(grid, col, q, layer));
  }
  const everyOther = Array.from({ length: n - 1 }, (_, q) => q);
  grid = must(placeGate(grid, grid.columns.length, n - 1, "z", [], everyOther, []));
  for (const layer of ["x", "h"]) {
    const col = grid.columns.length;
    for (let q = 0; q < n; q++) grid = must(placeGate(grid, col, q, layer));
  }

  return must(wrapRepeat(grid, blockStart, grid.columns.length - 1, rounds));
}

/** Teleport alpha|0> + beta|1> from q_0 to q_2 with feed-forward corrections. */
export function teleportationTemplate(
  alpha: [number, number] = [0.6, 0.0],
  beta: [number, number] = [0.0, 0.8],
): GridModel {
  const conj = ([re, im]: [number, number]): [number, number] => [re, -im];
  const neg = ([re, im]: [number, number]): [number, number] => [-re, -im];

  let grid = emptyGrid(3, 2);
  grid.name = "teleportation";
  grid = must(placeGate(grid, 0, 0, "u2x2", [alpha, neg(conj(beta)), beta, conj(alpha)]));
  grid = must(placeGate(grid, 0, 1, "h"));
  grid = must(placeGate(grid, 1, 2, "x", [], [1]));
  grid = must(placeGate(grid, 2, 1, "x", [], [0]));
  grid = must(placeGate(grid, 3, 0, "h"));
  grid = must(placeMeasure(grid, 4, 0, 0));
  grid = must(placeMeasure(grid, 4, 1, 1));
  grid = must(placeGate(grid, 5, 2, "x"));
  grid = must(setCondition(grid, 5, { cbit: 1, value: 1 }));
  grid = must(placeGate(grid, 6, 2, "z"));
  grid = must(setCondition(grid, 6, { cbit: 0, value: 1 }));
  return grid;
}
