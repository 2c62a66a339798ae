// Glyph rulebook, mirroring the engine's constants and wire format.

import type { Entity, EntityGraph, EntityKind, TypeKind } from "./model.js";

export const ICON_IDS = [
  "solution",
  "project",
  "package",
  "namespace",
  "class",
  "recordClass",
  "struct",
  "recordStruct",
  "enum",
  "interface",
  "delegate",
  "field",
  "method",
  "property",
  "event",
  "parameter",
] as const;
export type IconId = (typeof ICON_IDS)[number];

export type ScalingMode = "linear" | "sqrt" | "log";

export interface GlyphSpec {
  radius: number;
  iconId: IconId;
  iconStyle: "stroked" | "filled";
  methodBadge?: string;
  accessibilityBadge?: string;
  contour: "none" | "octagonSolid" | "hexagonDashed";
  donut?: {
    staticFraction: number;
    instanceFraction: number;
    width: number;
    hatchInstanceSector: boolean;
  };
  effect: "none" | "smoke" | "fire";
  indicators: string[];
  fillColor: string;
}

const BASE_RADIUS: Record<EntityKind, number> = {
  solution: 14,
  project: 12,
  package: 10,
  namespace: 10,
  type: 8,
  field: 5,
  method: 5,
  property: 5,
  event: 5,
  parameter: 4,
};

const STRUCTURAL = new Set(["solution", "project", "namespace"]);

const UNIVERSAL_KINDS: Record<EntityKind, string> = {
  solution: "#5f3dc4",
  project: "#e8590c",
  package: "#99621e",
  namespace: "#1c7ed6",
  type: "#e6b800",
  field: "#4263eb",
  method: "#7950f2",
  property: "#2f9e44",
  event: "#e03131",
  parameter: "#74b816",
};
const UNIVERSAL_TYPES: Record<TypeKind, string> = {
  class: "#e6b800",
  struct: "#0ca678",
  enum: "#d6336c",
  interface: "#22b8cf",
  delegate: "#ae3ec9",
};
const TYPE_FOCUS_KINDS: Record<EntityKind, string> = {
  solution: "#2f2f2f",
  project: "#454545",
  package: "#525252",
  namespace: "#5f5f5f",
  type: "#e6b800",
  field: "#787878",
  method: "#6b6b6b",
  property: "#858585",
  event: "#929292",
  parameter: "#a6a6a6",
};
const VS_KINDS: Record<EntityKind, string> = {
  solution: "#68217a",
  project: "#00539c",
  package: "#8b6c42",
  namespace: "#6d6d6d",
  type: "#d7ba00",
  field: "#2e86c1",
  method: "#6f42c1",
  property: "#388a34",
  event: "#c50b0b",
  parameter: "#808080",
};
const VS_TYPES: Record<TypeKind, string> = {
  class: "#d7ba00",
  struct: "#00838f",
  enum: "#dd6b20",
  interface: "#007acc",
  delegate: "#b180d7",
};

export interface ColorPreset {
  name: string;
  kinds: Record<EntityKind, string>;
  types: Partial<Record<TypeKind, string>>;
  overrides: Record<string, string>; // "kind" or "kind/typeKind"
}

export const PRESETS: Record<string, ColorPreset> = {
  Universal: { name: "Universal", kinds: UNIVERSAL_KINDS, types: UNIVERSAL_TYPES, overrides: {} },
  TypeFocus: { name: "TypeFocus", kinds: TYPE_FOCUS_KINDS, types: UNIVERSAL_TYPES, overrides: {} },
  VS: { name: "VS", kinds: VS_KINDS, types: VS_TYPES, overrides: {} },
};

export function resolveColor(entity: Entity, preset: ColorPreset): string {
  if (entity.typeKind && preset.overrides[`${entity.kind}/${entity.typeKind}`]) {
    return preset.overrides[`${entity.kind}/${entity.typeKind}`];
  }
  if (preset.overrides[entity.kind]) return preset.overrides[entity.kind];
  if (entity.kind === "type" && entity.typeKind && preset.types[entity.typeKind]) {
    return preset.types[entity.typeKind]!;
  }
  return preset.kinds[entity.kind];
}

export function resolveIcon(entity: Entity): [IconId, string | undefined] {
  if (entity.kind === "type") {
    if (entity.isRecord && entity.typeKind === "class") return ["recordClass", undefined];
    if (entity.isRecord && entity.typeKind === "struct") return ["recordStruct", undefined];
    return [(entity.typeKind ?? "class") as IconId, undefined];
  }
  if (entity.kind === "method") {
    const badge =
      entity.methodKind && entity.methodKind !== "ordinary"
        ? entity.methodKind
        : undefined;
    return ["method", badge];
  }
  return [entity.kind as IconId, undefined];
}

export function computeRadius(
  entity: Entity,
  graph: EntityGraph,
  mode: ScalingMode = "sqrt",
): number {
  let radius = BASE_RADIUS[entity.kind];
  if (STRUCTURAL.has(entity.kind)) {
    radius += 2 * graph.subtreeHeight(entity.id);
  }
  if (entity.kind === "type") {
    const [staticCount, instanceCount] = graph.memberCounts(entity.id);
    const total = staticCount + instanceCount;
    if (mode === "linear") radius += 0.25 * total;
    else if (mode === "sqrt") radius += 1.5 * Math.sqrt(total);
    else radius += 3 * Math.log(1 + total);
  }
  return radius;
}

export function computeGlyph(
  entity: Entity,
  graph: EntityGraph,
  preset: ColorPreset = PRESETS.Universal,
  mode: ScalingMode = "sqrt",
  isCollapsed = false,
): GlyphSpec {
  const [iconId, methodBadge] = resolveIcon(entity);

  let donut: GlyphSpec["donut"];
  if (entity.kind === "type") {
    const [staticCount, instanceCount] = graph.memberCounts(entity.id);
    const total = staticCount + instanceCount;
    if (total > 0) {
      const staticFraction = staticCount / total;
      donut = {
        staticFraction,
        instanceFraction: 1 - staticFraction,
        width: Math.min(2 + 0.25 * total, 12),
        hatchInstanceSector: true,
      };
    }
  }

  const indicators: string[] = [];
  if (isCollapsed && graph.children(entity.id).length) indicators.push("collapsedShadow");
  const [subErr, subWarn] = graph.diagnosticRollup(entity.id);
  if (subErr) indicators.push("subtreeError");
  if (subWarn) indicators.push("subtreeWarning");
  indicators.sort();

  const hasError = entity.diagnostics.some((d) => d.severity === "error");
  const hasWarning = entity.diagnostics.some((d) => d.severity === "warning");

  const spec: GlyphSpec = {
    radius: computeRadius(entity, graph, mode),
    iconId,
    iconStyle: entity.isStatic ? "filled" : "stroked",
    contour: entity.isSealed
      ? "octagonSolid"
      : entity.isAbstract
        ? "hexagonDashed"
        : "none",
    donut,
    effect: hasError ? "fire" : hasWarning ? "smoke" : "none",
    indicators,
    fillColor: resolveColor(entity, preset),
  };
  if (methodBadge) spec.methodBadge = methodBadge;
  if (entity.accessibility && entity.accessibility !== "public") {
    spec.accessibilityBadge = entity.accessibility;
  }
  return spec;
}
