import { readFileSync } from "node:fs";
import { join } from "node:path";
import type { InterchangeDocument } from "../src/core/model.js";

export function fixtureDocument(): InterchangeDocument {
  const raw = readFileSync(
    join(__dirname, "fixtures", "graph.helgraph.json"),
    "utf-8",
  );
  return JSON.parse(raw) as InterchangeDocument;
}

export function bundleBootstrapData(): Record<string, unknown> {
  const page = readFileSync(
    join(__dirname, "fixtures", "bundle-index.html"),
    "utf-8",
  );
  const marker = 'id="helgraph-data" type="application/json">';
  const start = page.indexOf(marker) + marker.length;
  const end = page.indexOf("</script>", start);
  const blob = page.slice(start, end).replace(/<\\\//g, "</");
  return JSON.parse(blob) as Record<string, unknown>;
}

/** A tiny hand-built document exercising every glyph feature. */
export function miniDocument(): InterchangeDocument {
  return {
    formatVersion: "1.0",
    metadata: { label: "mini" },
    entities: [
      { id: "S", name: "Sol", kind: "solution" },
      { id: "S/P", name: "Proj", kind: "project" },
      { id: "S/P/N", name: "Ns", kind: "namespace" },
      {
        id: "S/P/N/T",
        name: "Widget",
        kind: "type",
        typeKind: "class",
        accessibility: "public",
        modifiers: { isSealed: true },
      },
      {
        id: "S/P/N/T/m1",
        name: "Run",
        kind: "method",
        methodKind: "constructor",
        accessibility: "private",
        modifiers: { isStatic: true },
        diagnostics: [{ severity: "warning", code: "W1", message: "hm" }],
      },
      {
        id: "S/P/N/T/m2",
        name: "Count",
        kind: "property",
        accessibility: "public",
      },
      {
        id: "S/P/N/U",
        name: "Base",
        kind: "type",
        typeKind: "class",
        accessibility: "public",
        modifiers: { isAbstract: true },
      },
    ],
    relations: {
      declares: [
        ["S", "S/P"],
        ["S/P", "S/P/N"],
        ["S/P/N", "S/P/N/T"],
        ["S/P/N", "S/P/N/U"],
        ["S/P/N/T", "S/P/N/T/m1"],
        ["S/P/N/T", "S/P/N/T/m2"],
      ],
      inheritsFrom: [["S/P/N/T", "S/P/N/U"]],
    },
  };
}
