// Exploration state machine for in-process mode; mirrors the engine's
// session semantics and wire shapes.

import type { Entity, EntityGraph } from "./model.js";
import { computeGlyph, PRESETS, type ColorPreset, type GlyphSpec, type ScalingMode } from "./glyphs.js";
import {
  evaluateQuery,
  parseQuery,
  type FilterModeName,
  type FilterQuery,
} from "./filters.js";
import {
  DEFAULT_FORCE,
  runAutoLayout,
  simFromPositions,
  simPositions,
  tidyTreeLayout,
  type ForceSettings,
  type Positions,
  type SimState,
} from "./layout.js";

export const PRESET_NAMES = [
  "default",
  "allTypes",
  "projectDependencies",
  "birdsEye",
] as const;

export interface RelationStyle {
  color: string;
  thickness: number;
  visible: boolean;
}

export const DEFAULT_RELATION_STYLES: Record<string, RelationStyle> = {
  declares: { color: "#9aa0a6", thickness: 1.0, visible: true },
  inheritsFrom: { color: "#12b886", thickness: 1.5, visible: true },
  typeOf: { color: "#9c36b5", thickness: 1.0, visible: false },
  returns: { color: "#7950f2", thickness: 1.0, visible: false },
  dependsOn: { color: "#e8590c", thickness: 1.5, visible: true },
  references: { color: "#adb5bd", thickness: 0.75, visible: false },
};

export interface SessionConfig {
  colorPreset: string;
  scalingMode: ScalingMode;
  ringGap: number;
  relations: Record<string, RelationStyle>;
  force: ForceSettings;
}

export function defaultConfig(): SessionConfig {
  return {
    colorPreset: "Universal",
    scalingMode: "sqrt",
    ringGap: 120,
    relations: structuredClone(DEFAULT_RELATION_STYLES),
    force: { ...DEFAULT_FORCE },
  };
}

export interface Snapshot {
  positions: Record<string, [number, number]>;
  converged: boolean;
  iteration: number;
}

export interface StateSummary {
  visible: string[];
  expanded: string[];
  removed: string[];
  dimmed: string[];
  selection: string | null;
  activePreset: string;
  relationVisibility: Record<string, boolean>;
  converged: boolean;
  iteration: number;
  positions?: Record<string, [number, number]>;
}

const ACCESS_KEYWORDS: Record<string, string> = {
  public: "public",
  internal: "internal",
  protected: "protected",
  protectedInternal: "protected internal",
  privateProtected: "private protected",
  private: "private",
};

export function declarationString(graph: EntityGraph, id: string): string {
  const entity = graph.entity(id);
  if (["solution", "project", "package"].includes(entity.kind)) return entity.name;
  if (entity.kind === "namespace") return `namespace ${entity.name}`;
  const parts: string[] = [];
  if (entity.accessibility) parts.push(ACCESS_KEYWORDS[entity.accessibility]);
  if (entity.isStatic) parts.push("static");
  if (entity.isAbstract) parts.push("abstract");
  if (entity.isSealed) parts.push("sealed");
  if (entity.kind === "type") {
    if (entity.isRecord) parts.push("record");
    parts.push(entity.typeKind ?? "class");
  } else {
    parts.push(entity.kind);
  }
  parts.push(entity.name);
  let declaration = parts.join(" ");
  if (entity.kind === "type") {
    const bases = (graph.relations.get("inheritsFrom") ?? [])
      .filter(([source]) => source === id)
      .map(([, target]) => graph.entity(target).name)
      .sort();
    if (bases.length) declaration += ` : ${bases.join(", ")}`;
  }
  return declaration;
}

export class Session {
  readonly graph: EntityGraph;
  config: SessionConfig;
  expanded = new Set<string>();
  removed = new Set<string>();
  dimmed = new Set<string>();
  selection: string | null = null;
  activePreset = "default";
  relationVisibility: Record<string, boolean> = {};
  sim: SimState;
  snapshotListeners: Array<(snap: Snapshot) => void> = [];
  private visibleCache?: Set<string>;

  constructor(graph: EntityGraph, config?: Partial<SessionConfig>) {
    this.graph = graph;
    this.config = { ...defaultConfig(), ...config };
    this.applyPresetSets("default");
    this.sim = simFromPositions(new Map());
    this.reseed();
  }

  // -- visibility ----------------------------------------------------

  visibleIds(): Set<string> {
    if (this.visibleCache) return this.visibleCache;
    const visible = new Set<string>();
    const stack = this.graph.roots.filter((r) => !this.removed.has(r));
    stack.forEach((r) => visible.add(r));
    while (stack.length) {
      const node = stack.pop()!;
      if (!this.expanded.has(node)) continue;
      for (const child of this.graph.children(node)) {
        if (!this.removed.has(child)) {
          visible.add(child);
          stack.push(child);
        }
      }
    }
    this.visibleCache = visible;
    return visible;
  }

  private invalidate() {
    this.visibleCache = undefined;
  }

  private enforceInvariants() {
    const visible = this.visibleIds();
    for (const id of [...this.dimmed]) if (!visible.has(id)) this.dimmed.delete(id);
    if (this.selection !== null && !visible.has(this.selection)) this.selection = null;
  }

  // -- layout --------------------------------------------------------

  private visibleEdges(): Array<[string, string]> {
    const visible = this.visibleIds();
    const edges: Array<[string, string]> = [];
    for (const name of Object.keys(this.relationVisibility).sort()) {
      if (!this.relationVisibility[name]) continue;
      for (const [s, t] of this.graph.relations.get(name) ?? []) {
        if (visible.has(s) && visible.has(t)) edges.push([s, t]);
      }
    }
    return edges;
  }

  private jitter(id: string): [number, number] {
    let hash = 2166136261 ^ this.config.force.seed;
    for (const ch of id) {
      hash = Math.imul(hash ^ ch.charCodeAt(0), 16777619);
    }
    const angle = ((hash >>> 0) % 3600) / 3600 * 2 * Math.PI;
    const radius = this.config.ringGap / 8 + ((hash >>> 16) % 8);
    return [radius * Math.cos(angle), radius * Math.sin(angle)];
  }

  private autoRun() {
    const callback = this.snapshotListeners.length
      ? () => this.publish()
      : undefined;
    runAutoLayout(this.sim, this.visibleEdges(), this.config.force, callback);
    this.publish();
  }

  private publish() {
    if (!this.snapshotListeners.length) return;
    const snap = this.snapshot();
    for (const listener of this.snapshotListeners) listener(snap);
  }

  private reseed() {
    const positions = tidyTreeLayout(this.graph, this.visibleIds(), this.config.ringGap);
    this.sim = simFromPositions(positions);
    this.autoRun();
  }

  private syncLayout() {
    const visible = this.visibleIds();
    const old = simPositions(this.sim);
    const positions: Positions = new Map();
    for (const id of [...visible].sort()) {
      if (old.has(id)) positions.set(id, old.get(id)!);
    }
    for (const id of [...visible].sort()) {
      if (positions.has(id)) continue;
      const parent = this.graph.parent(id);
      const base = (parent && (positions.get(parent) ?? old.get(parent))) || [0, 0];
      const [jx, jy] = this.jitter(id);
      positions.set(id, [base[0] + jx, base[1] + jy]);
    }
    const pinned = [...this.sim.pinned].filter((p) => visible.has(p));
    this.sim = simFromPositions(positions, pinned);
    this.autoRun();
  }

  snapshot(): Snapshot {
    const positions: Record<string, [number, number]> = {};
    this.sim.ids.forEach((id, i) => {
      positions[id] = [this.sim.x[i], this.sim.y[i]];
    });
    return {
      positions,
      converged: this.sim.converged,
      iteration: this.sim.iteration,
    };
  }

  // -- operations ----------------------------------------------------

  expand(id: string): void {
    this.graph.entity(id);
    if (!this.visibleIds().has(id)) throw new Error(`${id} is not visible`);
    if (!this.graph.children(id).length) throw new Error(`${id} has no children`);
    this.expanded.add(id);
    this.invalidate();
    this.enforceInvariants();
    this.syncLayout();
  }

  collapse(id: string): void {
    this.graph.entity(id);
    if (!this.expanded.has(id)) throw new Error(`${id} is not expanded`);
    this.expanded.delete(id);
    this.invalidate();
    this.enforceInvariants();
    this.syncLayout();
  }

  removeSubtree(id: string): void {
    this.graph.entity(id);
    if (!this.visibleIds().has(id)) throw new Error(`${id} is not visible`);
    this.removed.add(id);
    for (const node of this.graph.descendants(id)) this.removed.add(node);
    this.invalidate();
    this.enforceInvariants();
    this.syncLayout();
  }

  refresh(): void {
    this.removed.clear();
    this.dimmed.clear();
    this.invalidate();
    this.enforceInvariants();
    this.reseed();
  }

  private applyPresetSets(name: string) {
    const byKind = (kinds: string[]) =>
      new Set(
        [...this.graph.entities.values()]
          .filter((e) => kinds.includes(e.kind))
          .map((e) => e.id),
      );
    const visibility: Record<string, boolean> = {};
    for (const [rel, style] of Object.entries(this.config.relations)) {
      visibility[rel] = style.visible;
    }
    if (name === "default") {
      this.expanded = byKind(["solution"]);
    } else if (name === "allTypes") {
      this.expanded = byKind(["solution", "project", "namespace"]);
    } else if (name === "projectDependencies") {
      this.expanded = byKind(["solution"]);
      for (const rel of Object.keys(visibility)) visibility[rel] = rel === "dependsOn";
    } else if (name === "birdsEye") {
      this.expanded = new Set(
        [...this.graph.entities.values()]
          .filter((e) => e.kind !== "method")
          .map((e) => e.id),
      );
    } else {
      throw new Error(`unknown preset '${name}'`);
    }
    this.removed.clear();
    this.dimmed.clear();
    this.relationVisibility = visibility;
    this.activePreset = name;
    this.invalidate();
    this.enforceInvariants();
  }

  applyPreset(name: string): void {
    this.applyPresetSets(name);
    this.reseed();
  }

  select(id: string | null): void {
    if (id !== null) {
      this.graph.entity(id);
      if (!this.visibleIds().has(id)) throw new Error(`${id} is not visible`);
    }
    this.selection = id;
  }

  moveNode(id: string, x: number, y: number, pin: boolean): void {
    const index = this.sim.ids.indexOf(id);
    if (index < 0) throw new Error(`${id} is not visible`);
    this.sim.x[index] = x;
    this.sim.y[index] = y;
    if (pin) this.sim.pinned.add(id);
    else this.sim.pinned.delete(id);
    this.sim.converged = false;
    this.autoRun();
  }

  highlight(matched: Set<string>): void {
    const visible = this.visibleIds();
    this.dimmed = new Set([...visible].filter((id) => !matched.has(id)));
  }

  isolate(matched: Set<string>): void {
    const visible = this.visibleIds();
    const keep = new Set<string>();
    for (const id of matched) {
      if (!visible.has(id)) continue;
      keep.add(id);
      for (const ancestor of this.graph.ancestors(id)) keep.add(ancestor);
    }
    const doomed = [...visible].filter((id) => !keep.has(id));
    if (!doomed.length) return;
    for (const id of doomed) {
      if (this.removed.has(id)) continue;
      this.removed.add(id);
      for (const node of this.graph.descendants(id)) this.removed.add(node);
    }
    this.invalidate();
    this.enforceInvariants();
    this.syncLayout();
  }

  applyFilter(query: FilterQuery, mode: "highlight" | "isolate"): Set<string> {
    const matched = evaluateQuery(this.graph, this.visibleIds(), query);
    if (mode === "highlight") this.highlight(matched);
    else this.isolate(matched);
    return matched;
  }

  // -- read models ---------------------------------------------------

  private preset(): ColorPreset {
    return PRESETS[this.config.colorPreset] ?? PRESETS.Universal;
  }

  glyph(id: string): GlyphSpec {
    const entity = this.graph.entity(id);
    const isCollapsed =
      !this.expanded.has(id) && this.graph.children(id).length > 0;
    return computeGlyph(
      entity,
      this.graph,
      this.preset(),
      this.config.scalingMode,
      isCollapsed,
    );
  }

  glyphs(ids?: string[]): Record<string, GlyphSpec> {
    const targets = ids ?? [...this.visibleIds()].sort();
    const out: Record<string, GlyphSpec> = {};
    for (const id of targets) out[id] = this.glyph(id);
    return out;
  }

  inspect(id: string): Record<string, unknown> {
    const entity: Entity = this.graph.entity(id);
    const relations: Record<string, { out: unknown[]; in: unknown[] }> = {};
    const brief = (nodeId: string) => {
      const node = this.graph.entity(nodeId);
      return { id: node.id, name: node.name, kind: node.kind };
    };
    for (const [name, pairs] of [...this.graph.relations.entries()].sort()) {
      const outgoing = pairs.filter(([s]) => s === id).map(([, t]) => t).sort();
      const incoming = pairs.filter(([, t]) => t === id).map(([s]) => s).sort();
      if (outgoing.length || incoming.length) {
        relations[name] = { out: outgoing.map(brief), in: incoming.map(brief) };
      }
    }
    const payload: Record<string, unknown> = {
      id: entity.id,
      name: entity.name,
      kind: entity.kind,
      modifiers: {
        isStatic: entity.isStatic,
        isAbstract: entity.isAbstract,
        isSealed: entity.isSealed,
      },
      declarationString: declarationString(this.graph, id),
      glyph: this.glyph(id),
      diagnostics: entity.diagnostics,
      relations,
    };
    if (entity.typeKind) {
      payload.typeKind = entity.typeKind;
      payload.isRecord = entity.isRecord;
    }
    if (entity.methodKind) payload.methodKind = entity.methodKind;
    if (entity.accessibility) payload.accessibility = entity.accessibility;
    if (entity.comment) payload.comment = entity.comment;
    return payload;
  }

  stateSummary(): StateSummary {
    return {
      visible: [...this.visibleIds()].sort(),
      expanded: [...this.expanded].sort(),
      removed: [...this.removed].sort(),
      dimmed: [...this.dimmed].sort(),
      selection: this.selection,
      activePreset: this.activePreset,
      relationVisibility: Object.fromEntries(
        Object.entries(this.relationVisibility).sort(([a], [b]) =>
          a.localeCompare(b),
        ),
      ),
      converged: this.sim.converged,
      iteration: this.sim.iteration,
    };
  }
}

export { parseQuery, type FilterModeName, type FilterQuery };
