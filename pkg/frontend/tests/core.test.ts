// The in-process core must honor the same contracts as the engine: frozen
// values here come straight from the documented rulebook.

import { describe, expect, it } from "vitest";
import { InProcessBackend } from "../src/core/backend.js";
import { computeGlyph, computeRadius, PRESETS } from "../src/core/glyphs.js";
import {
  evaluateQuery,
  parseBuilderText,
  parseQuery,
  serializeClauses,
} from "../src/core/filters.js";
import { parseDocument } from "../src/core/model.js";
import { declarationString, Session } from "../src/core/session.js";
import { tidyTreeLayout } from "../src/core/layout.js";
import { fixtureDocument, miniDocument } from "./helpers.js";

describe("graph model", () => {
  const graph = parseDocument(miniDocument());

  it("indexes the declares hierarchy", () => {
    expect(graph.roots).toEqual(["S"]);
    expect(graph.children("S/P/N")).toEqual(["S/P/N/T", "S/P/N/U"]);
    expect(graph.parent("S/P/N/T")).toBe("S/P/N");
    expect(graph.ancestors("S/P/N/T/m1")).toEqual(["S/P/N/T", "S/P/N", "S/P", "S"]);
  });

  it("computes subtree heights and member counts", () => {
    expect(graph.subtreeHeight("S")).toBe(4);
    expect(graph.subtreeHeight("S/P/N/T/m2")).toBe(0);
    expect(graph.memberCounts("S/P/N/T")).toEqual([1, 1]);
  });

  it("rolls up strict-descendant diagnostics only", () => {
    expect(graph.diagnosticRollup("S")).toEqual([false, true]);
    expect(graph.diagnosticRollup("S/P/N/T/m1")).toEqual([false, false]);
  });
});

describe("glyph rulebook", () => {
  const graph = parseDocument(miniDocument());

  it("radius follows base + bonus + member scaling", () => {
    expect(computeRadius(graph.entity("S/P/N/T"), graph, "sqrt")).toBeCloseTo(
      8 + 1.5 * Math.sqrt(2),
    );
    expect(computeRadius(graph.entity("S/P/N"), graph, "sqrt")).toBe(10 + 2 * 2);
    expect(computeRadius(graph.entity("S/P/N/T/m2"), graph, "linear")).toBe(5);
  });

  it("assembles the documented glyph for a sealed class", () => {
    const glyph = computeGlyph(graph.entity("S/P/N/T"), graph);
    expect(glyph.iconId).toBe("class");
    expect(glyph.iconStyle).toBe("stroked");
    expect(glyph.contour).toBe("octagonSolid");
    expect(glyph.donut).toBeDefined();
    expect(glyph.donut!.staticFraction).toBe(0.5);
    expect(glyph.donut!.width).toBe(2.5);
    expect(glyph.indicators).toContain("subtreeWarning");
  });

  it("fire and smoke mirror own diagnostics", () => {
    const method = computeGlyph(graph.entity("S/P/N/T/m1"), graph);
    expect(method.effect).toBe("smoke");
    expect(method.iconStyle).toBe("filled");
    expect(method.methodBadge).toBe("constructor");
    expect(method.accessibilityBadge).toBe("private");
  });

  it("TypeFocus grays non-types", () => {
    const glyph = computeGlyph(graph.entity("S/P/N"), graph, PRESETS.TypeFocus);
    const [r, g, b] = [
      glyph.fillColor.slice(1, 3),
      glyph.fillColor.slice(3, 5),
      glyph.fillColor.slice(5, 7),
    ];
    expect(r).toBe(g);
    expect(g).toBe(b);
  });
});

describe("filters", () => {
  const graph = parseDocument(miniDocument());
  const everything = new Set([...graph.entities.keys()]);

  it("fullText is a case-insensitive name substring", () => {
    const query = parseQuery("fullText", "widget");
    expect([...evaluateQuery(graph, everything, query)]).toEqual(["S/P/N/T"]);
  });

  it("builder text round-trips", () => {
    const text = 'name contains "Wid" AND memberCount >= 2 AND isSealed is true';
    const clauses = parseBuilderText(text);
    expect(serializeClauses(clauses)).toBe(text);
    const query = parseQuery("builder", text);
    expect([...evaluateQuery(graph, everything, query)]).toEqual(["S/P/N/T"]);
  });

  it("rejects type mismatches and bad regexes", () => {
    expect(() => parseBuilderText("memberCount contains 5")).toThrow();
    expect(() => parseQuery("regex", "(")).toThrow();
    expect(() => parseBuilderText("")).toThrow();
  });
});

describe("session", () => {
  it("default view shows solutions and their children", () => {
    const session = new Session(parseDocument(miniDocument()));
    expect([...session.visibleIds()].sort()).toEqual(["S", "S/P"]);
  });

  it("expand, collapse, remove, refresh behave like the engine", () => {
    const session = new Session(parseDocument(miniDocument()));
    session.expand("S/P");
    session.expand("S/P/N");
    expect(session.visibleIds().has("S/P/N/T")).toBe(true);
    session.collapse("S/P");
    expect(session.visibleIds().has("S/P/N/T")).toBe(false);
    session.expand("S/P");
    expect(session.visibleIds().has("S/P/N/T")).toBe(true); // flags retained
    session.removeSubtree("S/P/N/T");
    expect(session.visibleIds().has("S/P/N/T")).toBe(false);
    session.refresh();
    expect(session.visibleIds().has("S/P/N/T")).toBe(true);
  });

  it("declaration strings follow the canonical grammar", () => {
    const graph = parseDocument(miniDocument());
    expect(declarationString(graph, "S/P/N/T")).toBe(
      "public sealed class Widget : Base",
    );
    expect(declarationString(graph, "S/P/N/T/m1")).toBe(
      "private static method Run",
    );
    expect(declarationString(graph, "S")).toBe("Sol");
  });

  it("presets match their definitions", () => {
    const session = new Session(parseDocument(fixtureDocument()));
    session.applyPreset("allTypes");
    const visible = session.visibleIds();
    for (const id of visible) {
      expect(["solution", "project", "namespace", "type"]).toContain(
        session.graph.entity(id).kind,
      );
    }
    session.applyPreset("projectDependencies");
    expect(session.relationVisibility.dependsOn).toBe(true);
    expect(session.relationVisibility.declares).toBe(false);
  });
});

describe("tidy tree", () => {
  it("places a single root at the origin and children on rings", () => {
    const graph = parseDocument(miniDocument());
    const positions = tidyTreeLayout(graph, new Set(["S", "S/P"]), 100);
    expect(positions.get("S")).toEqual([0, 0]);
    const [x, y] = positions.get("S/P")!;
    expect(Math.hypot(x, y)).toBeCloseTo(100);
  });
});

describe("in-process backend", () => {
  it("mirrors the wire format of the HTTP API", async () => {
    const backend = new InProcessBackend(miniDocument());
    const meta = await backend.meta();
    expect(meta.kindCounts.type).toBe(2);
    expect(meta.session.activePreset).toBe("default");
    expect(meta.relations.declares.edges.length).toBe(6);

    const summary = await backend.action("expand", { id: "S/P" });
    expect(summary.expanded).toContain("S/P");
    expect(Object.keys(summary.positions!)).toEqual(summary.visible);

    const payload = await backend.node("S/P/N/T");
    expect(payload.declarationString).toBe("public sealed class Widget : Base");

    const filtered = await backend.filter({
      query: { mode: "fullText", text: "proj" },
      mode: "highlight",
    });
    expect(filtered.matched).toEqual(["S/P"]);
    expect(filtered.dimmed.length).toBeGreaterThan(0);
  });

  it("streams layout snapshots on changes", async () => {
    const backend = new InProcessBackend(miniDocument());
    const seen: number[] = [];
    const stop = backend.layoutStream((snap) => seen.push(snap.iteration));
    const before = seen.length;
    expect(before).toBeGreaterThan(0); // initial snapshot
    await backend.action("expand", { id: "S/P" });
    expect(seen.length).toBeGreaterThan(before);
    stop();
  });
});
