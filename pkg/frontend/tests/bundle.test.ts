// Acceptance: the exported bundle's data boots the viewer headlessly to an
// interactive frame, and double-clicking a project issues an expand call.

import { beforeEach, describe, expect, it, vi } from "vitest";
import { InProcessBackend } from "../src/core/backend.js";
import type { InterchangeDocument } from "../src/core/model.js";
import { App } from "../src/viewer/app.js";
import { hitTest, worldToScreen } from "../src/viewer/viewport.js";
import { bundleBootstrapData } from "./helpers.js";

async function bootFromBundle() {
  document.body.innerHTML = '<div id="app"></div>';
  const bootstrap = bundleBootstrapData() as {
    document: InterchangeDocument;
    initial: { summary: { visible: string[] } };
  };
  const backend = new InProcessBackend(bootstrap.document);
  const app = new App(document, document.getElementById("app")!, backend);
  await app.boot();
  return { app, backend, bootstrap };
}

describe("exported bundle, in-process", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("opens to an interactive frame", async () => {
    const { app, bootstrap } = await bootFromBundle();
    const nodes = document.querySelectorAll("#scene .node");
    expect(nodes.length).toBe(bootstrap.initial.summary.visible.length);
    expect(document.querySelectorAll("#dock .dock-tab")).toHaveLength(4);
    expect(document.querySelector("#treeview")).toBeTruthy();
    expect(document.querySelector("#toolbar-pause")).toBeTruthy();
    expect(document.querySelector("#cheatsheet-button")).toBeTruthy();
    expect(app.summary.converged).toBe(true);
    app.dispose();
  });

  it("double-click on a project issues an expand call", async () => {
    const { app, backend } = await bootFromBundle();
    const spy = vi.spyOn(backend, "action");
    // pick a project whose disc is topmost at its own center
    const projects = app.summary.visible.filter(
      (id) => app.meta.kinds[id] === "project",
    );
    let project = "";
    let sx = 0;
    let sy = 0;
    for (const candidate of projects) {
      const [wx, wy] = app.positions[candidate];
      const [x, y] = worldToScreen(app.view, wx, wy);
      if (hitTest(app.view, x, y, app.renderer.hitDiscs()) === candidate) {
        project = candidate;
        sx = x;
        sy = y;
        break;
      }
    }
    expect(project).not.toBe("");

    await app.handleInput({ type: "dblclick", x: sx, y: sy });

    expect(spy).toHaveBeenCalledWith("expand", { id: project });
    expect(app.summary.expanded).toContain(project);
    // the children became part of the rendered frame
    const childCount = app.meta.relations.declares.edges.filter(
      ([parent]) => parent === project,
    ).length;
    expect(childCount).toBeGreaterThan(0);
    const renderedIds = new Set(
      [...document.querySelectorAll("#scene .node")].map((n) =>
        n.getAttribute("data-id"),
      ),
    );
    for (const [parent, child] of app.meta.relations.declares.edges) {
      if (parent === project) {
        expect(app.summary.visible).toContain(child);
        expect(renderedIds.has(child)).toBe(true);
      }
    }
    app.dispose();
  });

  it("tree view click reveals and selects a hidden node", async () => {
    const { app } = await bootFromBundle();
    const hiddenType = Object.entries(app.meta.kinds).find(
      ([id, kind]) => kind === "type" && !app.summary.visible.includes(id),
    )![0];
    await app.reveal(hiddenType);
    expect(app.summary.visible).toContain(hiddenType);
    expect(app.summary.selection).toBe(hiddenType);
    app.dispose();
  });

  it("keyboard Delete removes the selected subtree", async () => {
    const { app } = await bootFromBundle();
    const project = app.summary.visible.find(
      (id) => app.meta.kinds[id] === "project",
    )!;
    await app.runAction("select", { id: project });
    await app.handleInput({ type: "key", key: "Delete" });
    expect(app.summary.visible).not.toContain(project);
    expect(app.summary.removed).toContain(project);
    app.dispose();
  });
});
