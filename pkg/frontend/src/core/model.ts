// Entity graph mirror of the engine's data model, built from an
// interchange document. Indexes are precomputed once; the graph is
// treated as immutable afterwards.

export type EntityKind =
  | "solution"
  | "project"
  | "package"
  | "namespace"
  | "type"
  | "field"
  | "method"
  | "property"
  | "event"
  | "parameter";

export type TypeKind = "class" | "struct" | "enum" | "interface" | "delegate";
export type MethodKind = "ordinary" | "constructor" | "getter" | "setter" | "operator";
export type Accessibility =
  | "public"
  | "internal"
  | "protected"
  | "protectedInternal"
  | "privateProtected"
  | "private";
export type Severity = "error" | "warning" | "info";

export const MEMBER_KINDS: ReadonlySet<string> = new Set([
  "field",
  "method",
  "property",
  "event",
]);

export const RELATION_NAMES = [
  "declares",
  "inheritsFrom",
  "typeOf",
  "returns",
  "dependsOn",
  "references",
] as const;
export type RelationName = (typeof RELATION_NAMES)[number];

export interface Diagnostic {
  severity: Severity;
  code: string;
  message: string;
}

export interface Entity {
  id: string;
  name: string;
  kind: EntityKind;
  typeKind?: TypeKind;
  isRecord: boolean;
  methodKind?: MethodKind;
  accessibility?: Accessibility;
  isStatic: boolean;
  isAbstract: boolean;
  isSealed: boolean;
  comment?: { summary: string; remarks?: string };
  diagnostics: Diagnostic[];
}

export interface InterchangeDocument {
  formatVersion: string;
  metadata?: { label?: string };
  entities: Array<Record<string, unknown>>;
  relations?: Record<string, Array<[string, string]>>;
}

export class EntityGraph {
  readonly entities = new Map<string, Entity>();
  readonly relations = new Map<string, Array<[string, string]>>();
  readonly label: string;
  private readonly childIndex = new Map<string, string[]>();
  private readonly parentIndex = new Map<string, string>();
  readonly roots: string[] = [];
  private heights?: Map<string, number>;
  private rollups?: Map<string, [boolean, boolean]>;

  constructor(doc: InterchangeDocument) {
    if (doc.formatVersion !== "1.0") {
      throw new Error(`unsupported interchange version ${doc.formatVersion}`);
    }
    this.label = doc.metadata?.label ?? "";
    for (const raw of doc.entities) {
      const modifiers = (raw.modifiers ?? {}) as Record<string, boolean>;
      const entity: Entity = {
        id: String(raw.id),
        name: String(raw.name),
        kind: raw.kind as EntityKind,
        typeKind: raw.typeKind as TypeKind | undefined,
        isRecord: Boolean(raw.isRecord),
        methodKind: raw.methodKind as MethodKind | undefined,
        accessibility: raw.accessibility as Accessibility | undefined,
        isStatic: Boolean(modifiers.isStatic),
        isAbstract: Boolean(modifiers.isAbstract),
        isSealed: Boolean(modifiers.isSealed),
        comment: raw.comment as Entity["comment"],
        diagnostics: (raw.diagnostics as Diagnostic[] | undefined) ?? [],
      };
      if (this.entities.has(entity.id)) {
        throw new Error(`duplicate entity id ${entity.id}`);
      }
      this.entities.set(entity.id, entity);
      this.childIndex.set(entity.id, []);
    }
    for (const name of RELATION_NAMES) {
      this.relations.set(name, []);
    }
    for (const [name, pairs] of Object.entries(doc.relations ?? {})) {
      this.relations.set(
        name,
        pairs.map(([s, t]) => [s, t] as [string, string]),
      );
    }
    for (const [source, target] of this.relations.get("declares") ?? []) {
      this.childIndex.get(source)?.push(target);
      this.parentIndex.set(target, source);
    }
    for (const kids of this.childIndex.values()) kids.sort();
    for (const id of [...this.entities.keys()].sort()) {
      if (!this.parentIndex.has(id)) this.roots.push(id);
    }
  }

  entity(id: string): Entity {
    const found = this.entities.get(id);
    if (!found) throw new Error(`unknown entity id ${id}`);
    return found;
  }

  children(id: string): string[] {
    return this.childIndex.get(id) ?? [];
  }

  parent(id: string): string | undefined {
    return this.parentIndex.get(id);
  }

  ancestors(id: string): string[] {
    const chain: string[] = [];
    let current = this.parentIndex.get(id);
    while (current !== undefined) {
      chain.push(current);
      current = this.parentIndex.get(current);
    }
    return chain;
  }

  descendants(id: string): string[] {
    const out: string[] = [];
    const stack = [...this.children(id)].reverse();
    while (stack.length) {
      const node = stack.pop()!;
      out.push(node);
      const kids = this.children(node);
      for (let i = kids.length - 1; i >= 0; i--) stack.push(kids[i]);
    }
    return out;
  }

  subtreeHeight(id: string): number {
    if (!this.heights) {
      const heights = new Map<string, number>();
      for (const root of this.roots) {
        const stack: Array<[string, boolean]> = [[root, false]];
        while (stack.length) {
          const [node, expanded] = stack.pop()!;
          const kids = this.children(node);
          if (!kids.length) heights.set(node, 0);
          else if (expanded) {
            heights.set(node, 1 + Math.max(...kids.map((k) => heights.get(k)!)));
          } else {
            stack.push([node, true]);
            for (const kid of kids) stack.push([kid, false]);
          }
        }
      }
      this.heights = heights;
    }
    const value = this.heights.get(id);
    if (value === undefined) throw new Error(`unknown entity id ${id}`);
    return value;
  }

  memberCounts(id: string): [number, number] {
    const entity = this.entity(id);
    if (entity.kind !== "type") throw new Error(`${id} is not a type`);
    let staticCount = 0;
    let instanceCount = 0;
    for (const child of this.children(id)) {
      const node = this.entity(child);
      if (!MEMBER_KINDS.has(node.kind)) continue;
      if (node.isStatic) staticCount++;
      else instanceCount++;
    }
    return [staticCount, instanceCount];
  }

  diagnosticRollup(id: string): [boolean, boolean] {
    if (!this.rollups) {
      const rollups = new Map<string, [boolean, boolean]>();
      for (const root of this.roots) {
        const stack: Array<[string, boolean]> = [[root, false]];
        while (stack.length) {
          const [node, expanded] = stack.pop()!;
          const kids = this.children(node);
          if (!kids.length) rollups.set(node, [false, false]);
          else if (expanded) {
            let err = false;
            let warn = false;
            for (const kid of kids) {
              const entity = this.entity(kid);
              const [kidErr, kidWarn] = rollups.get(kid)!;
              err =
                err || kidErr || entity.diagnostics.some((d) => d.severity === "error");
              warn =
                warn ||
                kidWarn ||
                entity.diagnostics.some((d) => d.severity === "warning");
            }
            rollups.set(node, [err, warn]);
          } else {
            stack.push([node, true]);
            for (const kid of kids) stack.push([kid, false]);
          }
        }
      }
      this.rollups = rollups;
    }
    const value = this.rollups.get(id);
    if (!value) throw new Error(`unknown entity id ${id}`);
    return value;
  }
}

export function parseDocument(doc: InterchangeDocument): EntityGraph {
  return new EntityGraph(doc);
}
