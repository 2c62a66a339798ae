// Acceptance: the filter builder constructs a 3-clause query whose
// serialized form round-trips through the session API unchanged.

import { beforeEach, describe, expect, it } from "vitest";
import { InProcessBackend } from "../src/core/backend.js";
import { parseBuilderText, serializeClauses } from "../src/core/filters.js";
import { FilterBuilder } from "../src/viewer/builder.js";
import { miniDocument } from "./helpers.js";

describe("filter builder UI", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("offers property autocompletion and enum value completion", () => {
    const builder = new FilterBuilder(document);
    document.body.appendChild(builder.root);
    const datalist = document.getElementById("helgraph-properties")!;
    const options = [...datalist.querySelectorAll("option")].map((o) => o.value);
    expect(options).toContain("memberCount");
    expect(options).toContain("hasSubtreeError");

    builder.setClause(0, "accessibility", "equals", "private");
    const select = builder.root.querySelector("select.builder-value");
    expect(select).toBeTruthy();
    const values = [...select!.querySelectorAll("option")].map((o) => o.value);
    expect(values).toContain("protectedInternal");
  });

  it("three-clause query round-trips through the API unchanged", async () => {
    const builder = new FilterBuilder(document);
    document.body.appendChild(builder.root);
    builder.setClause(0, "name", "contains", "Widget");
    builder.setClause(1, "memberCount", ">=", "2");
    builder.setClause(2, "isSealed", "is", "true");
    expect(builder.clauseCount).toBe(3);

    const serialized = builder.serialized();
    expect(serialized).toBe(
      'name contains "Widget" AND memberCount >= 2 AND isSealed is true',
    );

    const backend = new InProcessBackend(miniDocument());
    await backend.action("preset", { name: "allTypes" });
    const response = await backend.filter({
      query: { mode: "builder", text: serialized },
      mode: "highlight",
    });
    // the API echoes the canonical text: byte-for-byte what the UI built
    expect(response.query.text).toBe(serialized);
    expect(response.matched).toEqual(["S/P/N/T"]);

    // and the echoed form parses back to the identical clause list
    expect(serializeClauses(parseBuilderText(response.query.text))).toBe(serialized);
  });

  it("enum clause with oneOf serializes bare words", () => {
    const builder = new FilterBuilder(document);
    document.body.appendChild(builder.root);
    builder.setClause(0, "kind", "oneOf", "type");
    expect(builder.serialized()).toBe("kind oneOf [type]");
  });
});
