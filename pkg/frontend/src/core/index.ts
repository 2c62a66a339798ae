// Portable core: everything needed to run the diagram engine in-process
// inside an exported bundle.

export * from "./model.js";
export * from "./glyphs.js";
export * from "./filters.js";
export * from "./layout.js";
export {
  Session,
  declarationString,
  defaultConfig,
  DEFAULT_RELATION_STYLES,
  PRESET_NAMES,
  type RelationStyle,
  type SessionConfig,
  type Snapshot,
  type StateSummary,
} from "./session.js";
export * from "./backend.js";

export interface BootstrapData {
  document: import("./model.js").InterchangeDocument;
  config: Record<string, unknown>;
  initial: {
    summary: Record<string, unknown>;
    positions: Record<string, [number, number]>;
    glyphs: Record<string, unknown>;
    edges: Array<Record<string, unknown>>;
    names: Record<string, string>;
  };
}

/** Reads the bootstrap payload inlined by `helgraph export`, if present. */
export function readBootstrapData(root: Document): BootstrapData | null {
  const script = root.getElementById("helgraph-data");
  if (!script || !script.textContent) return null;
  const parsed = JSON.parse(script.textContent);
  return parsed && typeof parsed === "object" ? (parsed as BootstrapData) : null;
}
