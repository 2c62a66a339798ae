// Dock and panels: search (with the filter builder), properties/inspector,
// layout configuration with the quick-start presets, and appearance.

import type { FilterModeName } from "../core/filters.js";
import type { GlyphSpec } from "../core/glyphs.js";
import { glyphDocument } from "./glyphRender.js";
import { FilterBuilder } from "./builder.js";

export type PanelId = "search" | "properties" | "layoutConfig" | "appearance";

export const PANEL_IDS: PanelId[] = [
  "search",
  "properties",
  "layoutConfig",
  "appearance",
];

const PANEL_LABELS: Record<PanelId, string> = {
  search: "Search",
  properties: "Properties",
  layoutConfig: "Layout",
  appearance: "Appearance",
};

export interface PanelCallbacks {
  onFilter(query: { mode: FilterModeName; text: string }, mode: "highlight" | "isolate"): void;
  onPreset(name: string): void;
  onRelationToggle(name: string, visible: boolean): void;
  onRefresh(): void;
  onAppearance(change: { colorPreset?: string; scalingMode?: string; labels?: boolean }): void;
}

export class Dock {
  readonly root: HTMLElement;
  readonly panelHost: HTMLElement;
  readonly builder: FilterBuilder;
  active: PanelId = "search";
  private readonly panels = new Map<PanelId, HTMLElement>();
  private readonly tabs = new Map<PanelId, HTMLButtonElement>();
  private searchMode: FilterModeName = "fullText";

  constructor(
    private readonly doc: Document,
    host: HTMLElement,
    private readonly callbacks: PanelCallbacks,
  ) {
    this.root = doc.createElement("div");
    this.root.id = "dock";
    this.panelHost = doc.createElement("div");
    this.panelHost.id = "panel";
    host.append(this.root, this.panelHost);

    for (const id of PANEL_IDS) {
      const tab = doc.createElement("button");
      tab.type = "button";
      tab.className = "dock-tab";
      tab.dataset.panel = id;
      tab.textContent = PANEL_LABELS[id];
      tab.addEventListener("click", () => this.activate(id));
      this.root.appendChild(tab);
      this.tabs.set(id, tab);
      const panel = doc.createElement("div");
      panel.className = "panel-body";
      panel.dataset.panel = id;
      this.panelHost.appendChild(panel);
      this.panels.set(id, panel);
    }

    this.builder = new FilterBuilder(doc);
    this.buildSearchPanel();
    this.buildLayoutPanel();
    this.buildAppearancePanel();
    this.panels.get("properties")!.innerHTML =
      `<p class="hint">Select a node to inspect it.</p>`;
    this.activate("search");
  }

  activate(id: PanelId): void {
    this.active = id;
    for (const [panelId, panel] of this.panels) {
      panel.style.display = panelId === id ? "block" : "none";
      this.tabs.get(panelId)!.classList.toggle("active", panelId === id);
    }
  }

  private buildSearchPanel(): void {
    const panel = this.panels.get("search")!;
    const doc = this.doc;

    const mode = doc.createElement("select");
    mode.id = "search-mode";
    for (const value of ["fullText", "regex", "builder"]) {
      const option = doc.createElement("option");
      option.value = value;
      option.textContent = value;
      mode.appendChild(option);
    }
    const text = doc.createElement("input");
    text.id = "search-text";
    text.placeholder = "search entity names";

    const builderHolder = doc.createElement("div");
    builderHolder.id = "builder-holder";
    builderHolder.style.display = "none";
    builderHolder.appendChild(this.builder.root);

    mode.addEventListener("change", () => {
      this.searchMode = mode.value as FilterModeName;
      builderHolder.style.display = this.searchMode === "builder" ? "block" : "none";
      text.style.display = this.searchMode === "builder" ? "none" : "inline-block";
    });

    const highlight = doc.createElement("button");
    highlight.type = "button";
    highlight.id = "search-highlight";
    highlight.textContent = "Highlight";
    const isolate = doc.createElement("button");
    isolate.type = "button";
    isolate.id = "search-isolate";
    isolate.textContent = "Isolate";
    const run = (applyMode: "highlight" | "isolate") => {
      const queryText =
        this.searchMode === "builder" ? this.builder.serialized() : text.value;
      this.callbacks.onFilter({ mode: this.searchMode, text: queryText }, applyMode);
    };
    highlight.addEventListener("click", () => run("highlight"));
    isolate.addEventListener("click", () => run("isolate"));

    const results = doc.createElement("div");
    results.id = "search-results";

    panel.append(mode, text, builderHolder, highlight, isolate, results);
  }

  showResults(matched: string[], names: Record<string, string>): void {
    const results = this.panels
      .get("search")!
      .querySelector("#search-results") as HTMLElement;
    if (!matched.length) {
      results.innerHTML = `<p class="hint">No matches.</p>`;
      return;
    }
    const items = matched
      .slice(0, 200)
      .map(
        (id) =>
          `<li class="result" data-id="${id.replace(/"/g, "&quot;")}">${
            names[id] ?? id
          }</li>`,
      )
      .join("");
    results.innerHTML = `<ul class="result-list">${items}</ul>`;
  }

  private buildLayoutPanel(): void {
    const panel = this.panels.get("layoutConfig")!;
    const doc = this.doc;
    const quick = doc.createElement("div");
    quick.id = "quick-start";
    quick.innerHTML = `<h3>Quick Start</h3>`;
    for (const preset of ["default", "allTypes", "projectDependencies", "birdsEye"]) {
      const button = doc.createElement("button");
      button.type = "button";
      button.className = "preset";
      button.dataset.preset = preset;
      button.textContent = preset;
      button.addEventListener("click", () => this.callbacks.onPreset(preset));
      quick.appendChild(button);
    }
    const relations = doc.createElement("div");
    relations.id = "relation-toggles";
    relations.innerHTML = `<h3>Relations</h3>`;
    panel.append(quick, relations);

    const refresh = doc.createElement("button");
    refresh.type = "button";
    refresh.id = "layout-refresh";
    refresh.textContent = "Refresh layout";
    refresh.addEventListener("click", () => this.callbacks.onRefresh());
    panel.appendChild(refresh);
  }

  syncRelations(visibility: Record<string, boolean>): void {
    const holder = this.panels
      .get("layoutConfig")!
      .querySelector("#relation-toggles") as HTMLElement;
    holder.innerHTML = `<h3>Relations</h3>`;
    for (const [name, visible] of Object.entries(visibility).sort()) {
      const label = this.doc.createElement("label");
      label.className = "relation-toggle";
      const box = this.doc.createElement("input");
      box.type = "checkbox";
      box.checked = visible;
      box.dataset.relation = name;
      box.addEventListener("change", () =>
        this.callbacks.onRelationToggle(name, box.checked),
      );
      label.append(box, this.doc.createTextNode(` ${name}`));
      holder.appendChild(label);
    }
  }

  private buildAppearancePanel(): void {
    const panel = this.panels.get("appearance")!;
    const doc = this.doc;
    const preset = doc.createElement("select");
    preset.id = "color-preset";
    for (const name of ["Universal", "TypeFocus", "VS"]) {
      const option = doc.createElement("option");
      option.value = name;
      option.textContent = name;
      preset.appendChild(option);
    }
    preset.addEventListener("change", () =>
      this.callbacks.onAppearance({ colorPreset: preset.value }),
    );
    const scaling = doc.createElement("select");
    scaling.id = "scaling-mode";
    for (const name of ["linear", "sqrt", "log"]) {
      const option = doc.createElement("option");
      option.value = name;
      option.textContent = name;
      scaling.appendChild(option);
    }
    scaling.value = "sqrt";
    scaling.addEventListener("change", () =>
      this.callbacks.onAppearance({ scalingMode: scaling.value }),
    );
    const labels = doc.createElement("label");
    const labelBox = doc.createElement("input");
    labelBox.type = "checkbox";
    labelBox.id = "labels-toggle";
    labelBox.checked = true;
    labelBox.addEventListener("change", () =>
      this.callbacks.onAppearance({ labels: labelBox.checked }),
    );
    labels.append(labelBox, doc.createTextNode(" show labels"));
    panel.append(
      labeled(doc, "Color preset", preset),
      labeled(doc, "Radius scaling", scaling),
      labels,
    );
  }

  showInspection(payload: Record<string, unknown>): void {
    const panel = this.panels.get("properties")!;
    const glyph = payload.glyph as GlyphSpec;
    const diagnostics = (payload.diagnostics as Array<Record<string, string>>) ?? [];
    const comment = payload.comment as { summary?: string; remarks?: string } | undefined;
    const relations =
      (payload.relations as Record<string, { out: unknown[]; in: unknown[] }>) ?? {};
    const rows = Object.entries(relations)
      .map(
        ([name, sides]) =>
          `<li>${name}: ${sides.out.length} out, ${sides.in.length} in</li>`,
      )
      .join("");
    panel.innerHTML =
      `<div class="node-preview">${glyphDocument(glyph, 72)}</div>` +
      `<code class="declaration">${escapeHtml(String(payload.declarationString))}</code>` +
      `<p class="meta">kind: ${payload.kind}${payload.typeKind ? ` (${payload.typeKind})` : ""}</p>` +
      (comment?.summary
        ? `<p class="comment">${escapeHtml(comment.summary)}</p>` +
          (comment.remarks ? `<p class="remarks">${escapeHtml(comment.remarks)}</p>` : "")
        : "") +
      (diagnostics.length
        ? `<ul class="diagnostics">${diagnostics
            .map((d) => `<li class="${d.severity}">${d.code}: ${escapeHtml(d.message)}</li>`)
            .join("")}</ul>`
        : "") +
      (rows ? `<ul class="neighbors">${rows}</ul>` : "");
    this.activate("properties");
  }
}

function labeled(doc: Document, text: string, control: HTMLElement): HTMLElement {
  const wrap = doc.createElement("label");
  wrap.className = "labeled";
  wrap.append(doc.createTextNode(`${text}: `), control);
  return wrap;
}

function escapeHtml(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/</g, "&lt;");
}
