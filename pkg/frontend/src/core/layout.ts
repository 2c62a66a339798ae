// Two-stage layout for in-process mode: radial tidy tree plus a compact
// force refinement with the same dynamics as the engine (degree-weighted
// repulsion, distance attraction, constant gravity, swing-damped speed,
// traction-gated auto-stop). Exact pairwise repulsion only: in-browser
// graphs are filtered to desk scale before layout matters.

import type { EntityGraph } from "./model.js";

export interface ForceSettings {
  repulsionScale: number;
  gravity: number;
  tractionThreshold: number;
  maxIterations: number;
  seed: number;
}

export const DEFAULT_FORCE: ForceSettings = {
  repulsionScale: 10,
  gravity: 1,
  tractionThreshold: 1,
  maxIterations: 500,
  seed: 0,
};

export type Positions = Map<string, [number, number]>;

export function tidyTreeLayout(
  graph: EntityGraph,
  visible: Set<string>,
  ringGap = 120,
): Positions {
  const positions: Positions = new Map();
  if (!visible.size) return positions;

  const children = new Map<string, string[]>();
  const roots: string[] = [];
  for (const id of [...visible].sort()) {
    children.set(id, []);
  }
  for (const id of [...visible].sort()) {
    const parent = graph.parent(id);
    if (parent === undefined) roots.push(id);
    else if (visible.has(parent)) children.get(parent)!.push(id);
    else throw new Error(`visible node ${id} has a hidden parent ${parent}`);
  }

  const leaves = new Map<string, number>();
  const count = (node: string): number => {
    const kids = children.get(node)!;
    const total = kids.length ? kids.reduce((acc, k) => acc + count(k), 0) : 1;
    leaves.set(node, total);
    return total;
  };
  roots.forEach(count);

  const multiRoot = roots.length > 1;
  const totalLeaves = roots.reduce((acc, r) => acc + leaves.get(r)!, 0);
  const assign = (node: string, depth: number, start: number, end: number) => {
    const radius = ringGap * (depth + (multiRoot ? 1 : 0));
    const angle = (start + end) / 2;
    positions.set(
      node,
      radius === 0 ? [0, 0] : [radius * Math.cos(angle), radius * Math.sin(angle)],
    );
    let cursor = start;
    for (const kid of children.get(node)!) {
      const width = ((end - start) * leaves.get(kid)!) / leaves.get(node)!;
      assign(kid, depth + 1, cursor, cursor + width);
      cursor += width;
    }
  };
  let cursor = 0;
  for (const root of roots) {
    const width = (2 * Math.PI * leaves.get(root)!) / totalLeaves;
    assign(root, 0, cursor, cursor + width);
    cursor += width;
  }
  return positions;
}

export interface SimState {
  ids: string[];
  x: Float64Array;
  y: Float64Array;
  fx: Float64Array;
  fy: Float64Array;
  pinned: Set<string>;
  converged: boolean;
  iteration: number;
}

export function simFromPositions(positions: Positions, pinned: Iterable<string> = []): SimState {
  const ids = [...positions.keys()].sort();
  const n = ids.length;
  const state: SimState = {
    ids,
    x: new Float64Array(n),
    y: new Float64Array(n),
    fx: new Float64Array(n),
    fy: new Float64Array(n),
    pinned: new Set([...pinned].filter((p) => positions.has(p))),
    converged: false,
    iteration: 0,
  };
  ids.forEach((id, i) => {
    const [px, py] = positions.get(id)!;
    state.x[i] = px;
    state.y[i] = py;
  });
  return state;
}

export function simStep(
  state: SimState,
  edges: Array<[string, string]>,
  settings: ForceSettings,
): number {
  const n = state.ids.length;
  if (!n) {
    state.converged = true;
    state.iteration++;
    return 0;
  }
  const index = new Map(state.ids.map((id, i) => [id, i]));
  const pairs: Array<[number, number]> = [];
  const seen = new Set<string>();
  for (const [s, t] of edges) {
    const a = index.get(s);
    const b = index.get(t);
    if (a === undefined || b === undefined || a === b) continue;
    const key = a < b ? `${a}:${b}` : `${b}:${a}`;
    if (!seen.has(key)) {
      seen.add(key);
      pairs.push(a < b ? [a, b] : [b, a]);
    }
  }
  const mass = new Float64Array(n).fill(1);
  for (const [a, b] of pairs) {
    mass[a]++;
    mass[b]++;
  }

  const forceX = new Float64Array(n);
  const forceY = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const dx = state.x[i] - state.x[j];
      const dy = state.y[i] - state.y[j];
      const d2 = Math.max(dx * dx + dy * dy, 1e-12);
      const strength = (settings.repulsionScale * mass[i] * mass[j]) / d2;
      forceX[i] += strength * dx;
      forceY[i] += strength * dy;
      forceX[j] -= strength * dx;
      forceY[j] -= strength * dy;
    }
  }
  for (const [a, b] of pairs) {
    const dx = state.x[b] - state.x[a];
    const dy = state.y[b] - state.y[a];
    forceX[a] += dx;
    forceY[a] += dy;
    forceX[b] -= dx;
    forceY[b] -= dy;
  }
  if (settings.gravity > 0) {
    for (let i = 0; i < n; i++) {
      const dist = Math.hypot(state.x[i], state.y[i]);
      if (dist > 0) {
        const pull = (settings.gravity * mass[i]) / dist;
        forceX[i] -= pull * state.x[i];
        forceY[i] -= pull * state.y[i];
      }
    }
  }

  let totalSwing = 0;
  let totalTraction = 0;
  let tractionSum = 0;
  const swing = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    const sx = forceX[i] - state.fx[i];
    const sy = forceY[i] - state.fy[i];
    swing[i] = Math.hypot(sx, sy);
    const traction = 0.5 * Math.hypot(forceX[i] + state.fx[i], forceY[i] + state.fy[i]);
    totalSwing += mass[i] * swing[i];
    totalTraction += mass[i] * traction;
    tractionSum += traction;
  }
  const globalSpeed =
    totalSwing > 0 ? Math.min(totalTraction / totalSwing, 10) : 1;

  for (let i = 0; i < n; i++) {
    if (state.pinned.has(state.ids[i])) continue;
    const speed = globalSpeed / (1 + globalSpeed * Math.sqrt(swing[i]));
    let dx = forceX[i] * speed;
    let dy = forceY[i] * speed;
    const magnitude = Math.hypot(dx, dy);
    if (magnitude > 50) {
      dx *= 50 / magnitude;
      dy *= 50 / magnitude;
    }
    state.x[i] += dx;
    state.y[i] += dy;
  }
  state.fx = forceX;
  state.fy = forceY;
  state.iteration++;
  return tractionSum / n;
}

export function runAutoLayout(
  state: SimState,
  edges: Array<[string, string]>,
  settings: ForceSettings,
  onSnapshot?: (state: SimState) => void,
): SimState {
  for (let i = 0; i < settings.maxIterations; i++) {
    const meanTraction = simStep(state, edges, settings);
    onSnapshot?.(state);
    if (meanTraction < settings.tractionThreshold) {
      state.converged = true;
      return state;
    }
  }
  state.converged = false;
  return state;
}

export function simPositions(state: SimState): Positions {
  const out: Positions = new Map();
  state.ids.forEach((id, i) => out.set(id, [state.x[i], state.y[i]]));
  return out;
}
