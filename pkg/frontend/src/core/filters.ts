// Query parsing and evaluation, including the canonical builder clause text.

import type { Entity, EntityGraph } from "./model.js";

export type FilterModeName = "fullText" | "regex" | "builder";

export const PROPERTY_TYPES: Record<string, "string" | "integer" | "boolean" | "enumeration"> = {
  name: "string",
  kind: "enumeration",
  typeKind: "enumeration",
  methodKind: "enumeration",
  accessibility: "enumeration",
  isStatic: "boolean",
  isAbstract: "boolean",
  isSealed: "boolean",
  isRecord: "boolean",
  memberCount: "integer",
  subtreeHeight: "integer",
  hasOwnError: "boolean",
  hasOwnWarning: "boolean",
  hasSubtreeError: "boolean",
  hasSubtreeWarning: "boolean",
  commentText: "string",
  projectName: "string",
  namespacePath: "string",
};

export const ENUM_DOMAINS: Record<string, string[]> = {
  kind: [
    "solution", "project", "package", "namespace", "type",
    "field", "method", "property", "event", "parameter",
  ],
  typeKind: ["class", "struct", "enum", "interface", "delegate"],
  methodKind: ["ordinary", "constructor", "getter", "setter", "operator"],
  accessibility: [
    "public", "internal", "protected", "protectedInternal",
    "privateProtected", "private",
  ],
};

export const OPERATORS_BY_TYPE: Record<string, string[]> = {
  string: ["equals", "contains", "startsWith", "matchesRegex"],
  integer: ["=", "!=", "<", "<=", ">", ">="],
  boolean: ["is"],
  enumeration: ["equals", "oneOf"],
};

export type ClauseValue = string | number | boolean | string[];

export interface Clause {
  property: string;
  operator: string;
  value: ClauseValue;
}

export interface FilterQuery {
  mode: FilterModeName;
  text: string;
  clauses: Clause[];
}

export function valueDomain(property: string): string[] | undefined {
  if (ENUM_DOMAINS[property]) return ENUM_DOMAINS[property];
  if (PROPERTY_TYPES[property] === "boolean") return ["true", "false"];
  return undefined;
}

export function checkClause(clause: Clause): void {
  const valueType = PROPERTY_TYPES[clause.property];
  if (!valueType) throw new Error(`unknown property '${clause.property}'`);
  if (!OPERATORS_BY_TYPE[valueType].includes(clause.operator)) {
    throw new Error(
      `operator '${clause.operator}' does not apply to ${valueType} property '${clause.property}'`,
    );
  }
  const items =
    clause.operator === "oneOf" ? (clause.value as string[]) : [clause.value];
  if (clause.operator === "oneOf" && (!Array.isArray(clause.value) || !clause.value.length)) {
    throw new Error("oneOf needs a non-empty value list");
  }
  for (const item of items) {
    if (valueType === "string") {
      if (typeof item !== "string") throw new Error(`${clause.property} expects a string`);
      if (clause.operator === "matchesRegex") new RegExp(item);
    } else if (valueType === "integer") {
      if (typeof item !== "number" || !Number.isInteger(item)) {
        throw new Error(`${clause.property} expects an integer`);
      }
    } else if (valueType === "boolean") {
      if (typeof item !== "boolean") throw new Error(`${clause.property} expects a boolean`);
    } else if (typeof item !== "string" || !ENUM_DOMAINS[clause.property].includes(item)) {
      throw new Error(`'${item}' is not one of ${clause.property}'s values`);
    }
  }
}

function serializeValue(value: ClauseValue, valueType: string): string {
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") return String(value);
  if (Array.isArray(value)) {
    return `[${value.map((v) => serializeValue(v, valueType)).join(", ")}]`;
  }
  if (valueType === "enumeration") return value;
  return JSON.stringify(value);
}

export function serializeClauses(clauses: Clause[]): string {
  return clauses
    .map(
      (c) =>
        `${c.property} ${c.operator} ${serializeValue(c.value, PROPERTY_TYPES[c.property])}`,
    )
    .join(" AND ");
}

function splitClauses(text: string): string[] {
  const parts: string[] = [];
  let depth = 0;
  let inString = false;
  let escaped = false;
  let start = 0;
  const upper = text.toUpperCase();
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (inString) {
      if (escaped) escaped = false;
      else if (ch === "\\") escaped = true;
      else if (ch === '"') inString = false;
    } else if (ch === '"') inString = true;
    else if (ch === "[") depth++;
    else if (ch === "]") depth = Math.max(0, depth - 1);
    else if (
      depth === 0 &&
      upper.startsWith("AND", i) &&
      (i === 0 || /\s/.test(text[i - 1])) &&
      (i + 3 === text.length || /\s/.test(text[i + 3]))
    ) {
      parts.push(text.slice(start, i));
      i += 3;
      start = i;
      continue;
    }
    i++;
  }
  parts.push(text.slice(start));
  return parts.map((p) => p.trim());
}

function parseValue(token: string): ClauseValue {
  token = token.trim();
  if (!token) throw new Error("missing value");
  if (token.startsWith("[")) {
    if (!token.endsWith("]")) throw new Error(`unterminated list ${token}`);
    const inner = token.slice(1, -1).trim();
    if (!inner) return [];
    return inner.split(",").map((part) => {
      const item = part.trim();
      return item.startsWith('"') ? (JSON.parse(item) as string) : item;
    });
  }
  if (token.startsWith('"')) return JSON.parse(token) as string;
  if (token === "true") return true;
  if (token === "false") return false;
  if (/^-?\d+$/.test(token)) return parseInt(token, 10);
  return token;
}

export function parseBuilderText(text: string): Clause[] {
  if (!text.trim()) throw new Error("builder query is empty");
  const clauses: Clause[] = [];
  for (const raw of splitClauses(text)) {
    if (!raw) throw new Error("empty clause in builder query");
    const match = raw.match(
      /^(\w+)\s+(equals|contains|startsWith|matchesRegex|is|oneOf|=|!=|<=|>=|<|>)\s+([\s\S]+)$/,
    );
    if (!match) throw new Error(`cannot parse clause '${raw}'`);
    const clause: Clause = {
      property: match[1],
      operator: match[2],
      value: parseValue(match[3]),
    };
    checkClause(clause);
    clauses.push(clause);
  }
  return clauses;
}

export function parseQuery(mode: FilterModeName, text: string): FilterQuery {
  if (mode === "regex") new RegExp(text);
  if (mode === "builder") {
    const clauses = parseBuilderText(text);
    return { mode, text: serializeClauses(clauses), clauses };
  }
  return { mode, text, clauses: [] };
}

function propertyValue(
  entity: Entity,
  graph: EntityGraph,
  property: string,
): ClauseValue | undefined {
  switch (property) {
    case "name":
      return entity.name;
    case "kind":
      return entity.kind;
    case "typeKind":
      return entity.typeKind;
    case "methodKind":
      return entity.methodKind;
    case "accessibility":
      return entity.accessibility;
    case "isStatic":
      return entity.isStatic;
    case "isAbstract":
      return entity.isAbstract;
    case "isSealed":
      return entity.isSealed;
    case "isRecord":
      return entity.isRecord;
    case "memberCount": {
      if (entity.kind !== "type") return undefined;
      const [s, i] = graph.memberCounts(entity.id);
      return s + i;
    }
    case "subtreeHeight":
      return graph.subtreeHeight(entity.id);
    case "hasOwnError":
      return entity.diagnostics.some((d) => d.severity === "error");
    case "hasOwnWarning":
      return entity.diagnostics.some((d) => d.severity === "warning");
    case "hasSubtreeError":
      return graph.diagnosticRollup(entity.id)[0];
    case "hasSubtreeWarning":
      return graph.diagnosticRollup(entity.id)[1];
    case "commentText":
      if (!entity.comment) return undefined;
      return entity.comment.remarks
        ? `${entity.comment.summary}\n${entity.comment.remarks}`
        : entity.comment.summary;
    case "projectName": {
      for (const id of [entity.id, ...graph.ancestors(entity.id)]) {
        const node = graph.entity(id);
        if (node.kind === "project") return node.name;
      }
      return undefined;
    }
    case "namespacePath": {
      const names = [entity.id, ...graph.ancestors(entity.id)]
        .map((id) => graph.entity(id))
        .filter((node) => node.kind === "namespace")
        .map((node) => node.name)
        .reverse();
      return names.length ? names.join(".") : undefined;
    }
    default:
      throw new Error(`unknown property '${property}'`);
  }
}

function clauseMatches(entity: Entity, graph: EntityGraph, clause: Clause): boolean {
  const actual = propertyValue(entity, graph, clause.property);
  if (actual === undefined) return false;
  const value = clause.value;
  switch (clause.operator) {
    case "equals":
      return actual === value;
    case "contains":
      return typeof actual === "string" && actual.includes(value as string);
    case "startsWith":
      return typeof actual === "string" && actual.startsWith(value as string);
    case "matchesRegex":
      return typeof actual === "string" && new RegExp(value as string).test(actual);
    case "is":
      return actual === value;
    case "oneOf":
      return (value as string[]).includes(actual as string);
    case "=":
      return actual === value;
    case "!=":
      return actual !== value;
    case "<":
      return (actual as number) < (value as number);
    case "<=":
      return (actual as number) <= (value as number);
    case ">":
      return (actual as number) > (value as number);
    case ">=":
      return (actual as number) >= (value as number);
    default:
      throw new Error(`unknown operator '${clause.operator}'`);
  }
}

export function evaluateQuery(
  graph: EntityGraph,
  eligible: Iterable<string>,
  query: FilterQuery,
): Set<string> {
  const matched = new Set<string>();
  const pattern = query.mode === "regex" ? new RegExp(query.text) : undefined;
  const needle = query.text.toLowerCase();
  for (const id of eligible) {
    const entity = graph.entity(id);
    let ok: boolean;
    if (query.mode === "fullText") ok = entity.name.toLowerCase().includes(needle);
    else if (query.mode === "regex") ok = pattern!.test(entity.name);
    else ok = query.clauses.every((c) => clauseMatches(entity, graph, c));
    if (ok) matched.add(id);
  }
  return matched;
}
