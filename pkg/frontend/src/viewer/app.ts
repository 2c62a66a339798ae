// The application shell: wires backend, renderer, input, panels, tree view,
// toolbar, and the layout snapshot stream.

import type { GraphMeta, SessionBackend } from "../core/backend.js";
import type { GlyphSpec } from "../core/glyphs.js";
import type { Snapshot, StateSummary } from "../core/session.js";
import { CheatSheet, WelcomeTour } from "./cheatsheet.js";
import { InputDispatcher, type Effect, type NormalizedInput } from "./input.js";
import { Dock } from "./panels.js";
import { SceneRenderer, type EdgeView } from "./renderer.js";
import { TreeView } from "./treeview.js";
import { initialViewport, type ViewportState } from "./viewport.js";

export class App {
  readonly view: ViewportState;
  readonly dispatcher = new InputDispatcher();
  readonly renderer: SceneRenderer;
  readonly dock: Dock;
  readonly tree: TreeView;
  meta!: GraphMeta;
  summary!: StateSummary;
  positions: Record<string, [number, number]> = {};
  glyphs: Record<string, GlyphSpec> = {};
  labelsVisible = true;
  layoutPaused = false;
  private unsubscribe?: () => void;
  private menu: HTMLElement | null = null;

  constructor(
    private readonly doc: Document,
    private readonly host: HTMLElement,
    readonly backend: SessionBackend,
  ) {
    const svgNs = "http://www.w3.org/2000/svg";
    const svg = doc.createElementNS(svgNs, "svg") as SVGSVGElement;
    svg.id = "scene";
    host.appendChild(svg);
    this.renderer = new SceneRenderer(svg);
    this.view = initialViewport(
      (svg as unknown as HTMLElement).clientWidth || 1024,
      (svg as unknown as HTMLElement).clientHeight || 768,
    );

    this.dock = new Dock(doc, host, {
      onFilter: (query, mode) => void this.runFilter(query, mode),
      onPreset: (name) => void this.runAction("preset", { name }),
      onRelationToggle: () => void this.runAction("refresh", {}),
      onRefresh: () => void this.runAction("refresh", {}),
      onAppearance: (change) => {
        if (change.labels !== undefined) {
          this.labelsVisible = change.labels;
          this.redraw();
        }
      },
    });
    this.tree = new TreeView(doc, host, {
      onReveal: (id) => void this.reveal(id),
    });
    this.buildToolbar();
    new CheatSheet(doc, host);
    new WelcomeTour(doc, host);
    this.wireEvents(svg);
  }

  async boot(): Promise<void> {
    this.meta = await this.backend.meta();
    this.summary = this.meta.session;
    this.glyphs = await this.backend.glyphs();
    this.tree.setData(this.meta.names, this.meta.relations.declares?.edges ?? []);
    this.dock.syncRelations(this.summary.relationVisibility);
    this.unsubscribe = this.backend.layoutStream((snap) => this.onSnapshot(snap));
    this.redraw();
  }

  dispose(): void {
    this.unsubscribe?.();
  }

  // ------------------------------------------------------------------

  private onSnapshot(snap: Snapshot): void {
    if (this.layoutPaused) return;
    this.positions = snap.positions;
    this.redraw();
  }

  private visibleEdges(): EdgeView[] {
    const edges: EdgeView[] = [];
    const visible = new Set(this.summary.visible);
    for (const [name, info] of Object.entries(this.meta.relations)) {
      if (!this.summary.relationVisibility[name]) continue;
      for (const [source, target] of info.edges) {
        if (visible.has(source) && visible.has(target)) {
          edges.push({
            source,
            target,
            relation: name,
            color: info.color,
            thickness: info.thickness,
          });
        }
      }
    }
    return edges;
  }

  redraw(): void {
    this.renderer.applyViewport(this.view);
    this.renderer.render({
      positions: this.positions,
      glyphs: this.glyphs,
      edges: this.visibleEdges(),
      dimmed: new Set(this.summary.dimmed),
      selection: this.summary.selection,
      names: this.meta.names,
      labelsVisible: this.labelsVisible,
    });
  }

  private async refreshAfter(summary: StateSummary): Promise<void> {
    this.summary = summary;
    if (summary.positions) this.positions = summary.positions;
    this.glyphs = await this.backend.glyphs();
    this.dock.syncRelations(summary.relationVisibility);
    this.tree.setSelection(summary.selection);
    this.redraw();
  }

  async runAction(
    action: Parameters<SessionBackend["action"]>[0],
    body: Record<string, unknown>,
  ): Promise<void> {
    try {
      const summary = await this.backend.action(action, body);
      await this.refreshAfter(summary);
    } catch (error) {
      this.note(String(error));
    }
  }

  async runFilter(
    query: { mode: "fullText" | "regex" | "builder"; text: string },
    mode: "highlight" | "isolate",
  ): Promise<void> {
    try {
      const result = await this.backend.filter({ query, mode });
      this.dock.showResults(result.matched, this.meta.names);
      await this.refreshAfter(result);
    } catch (error) {
      this.note(String(error));
    }
  }

  async reveal(id: string): Promise<void> {
    // expand ancestors outside-in until the node is visible, then select it
    const parents: string[] = [];
    const declares = this.meta.relations.declares?.edges ?? [];
    const parentOf = new Map(declares.map(([p, c]) => [c, p]));
    let current = parentOf.get(id);
    while (current) {
      parents.unshift(current);
      current = parentOf.get(current);
    }
    for (const ancestor of parents) {
      if (!this.summary.expanded.includes(ancestor)) {
        await this.runAction("expand", { id: ancestor });
      }
    }
    if (this.summary.visible.includes(id)) {
      await this.runAction("select", { id });
      await this.inspect(id);
    }
  }

  async inspect(id: string): Promise<void> {
    try {
      const payload = await this.backend.node(id);
      this.dock.showInspection(payload);
    } catch (error) {
      this.note(String(error));
    }
  }

  async applyEffects(effects: Effect[]): Promise<void> {
    for (const effect of effects) {
      if (effect.kind === "viewport") {
        this.renderer.applyViewport(this.view);
      } else if (effect.kind === "session") {
        await this.runAction(effect.action, effect.body);
        if (effect.action === "select" && effect.body.id) {
          await this.inspect(String(effect.body.id));
        }
      } else if (effect.kind === "inspect") {
        await this.inspect(effect.id);
      } else if (effect.kind === "filter-isolate-subtree") {
        await this.runFilter(
          { mode: "builder", text: `name equals ${JSON.stringify(this.meta.names[effect.id] ?? effect.id)}` },
          "isolate",
        );
      } else if (effect.kind === "menu") {
        this.showMenu(effect);
      }
    }
  }

  handleInput(event: NormalizedInput): Promise<void> {
    const effects = this.dispatcher.dispatch(event, {
      view: this.view,
      discs: this.renderer.hitDiscs(),
      expanded: new Set(this.summary.expanded),
      hasChildren: (id) =>
        (this.meta.relations.declares?.edges ?? []).some(([p]) => p === id),
      selection: this.summary.selection,
    });
    return this.applyEffects(effects);
  }

  // ------------------------------------------------------------------

  private buildToolbar(): void {
    const bar = this.doc.createElement("div");
    bar.id = "toolbar";
    const refresh = this.doc.createElement("button");
    refresh.type = "button";
    refresh.id = "toolbar-refresh";
    refresh.textContent = "Refresh";
    refresh.addEventListener("click", () => void this.runAction("refresh", {}));
    const pause = this.doc.createElement("button");
    pause.type = "button";
    pause.id = "toolbar-pause";
    pause.textContent = "Pause layout";
    pause.addEventListener("click", () => {
      this.layoutPaused = !this.layoutPaused;
      pause.classList.toggle("active", this.layoutPaused);
    });
    bar.append(refresh, pause);
    this.host.appendChild(bar);
  }

  private showMenu(menu: Extract<Effect, { kind: "menu" }>): void {
    this.menu?.remove();
    const element = this.doc.createElement("div");
    element.id = "context-menu";
    element.style.left = `${menu.x}px`;
    element.style.top = `${menu.y}px`;
    for (const item of menu.items) {
      const row = this.doc.createElement("button");
      row.type = "button";
      row.className = "menu-item";
      row.innerHTML = `${item.label} <kbd>${item.shortcut}</kbd>`;
      row.addEventListener("click", () => {
        element.remove();
        this.menu = null;
        void this.applyEffects([item.effect]);
      });
      element.appendChild(row);
    }
    this.host.appendChild(element);
    this.menu = element;
  }

  private note(message: string): void {
    let toast = this.doc.getElementById("toast");
    if (!toast) {
      toast = this.doc.createElement("div");
      toast.id = "toast";
      this.host.appendChild(toast);
    }
    toast.textContent = message;
  }

  private wireEvents(svg: SVGSVGElement): void {
    const point = (event: MouseEvent): { x: number; y: number } => {
      return { x: event.clientX, y: event.clientY };
    };
    svg.addEventListener("dblclick", (event) => {
      void this.handleInput({ type: "dblclick", ...point(event) });
    });
    svg.addEventListener("mousedown", (event) => {
      void this.handleInput({
        type: "pointerdown",
        ...point(event),
        button: event.button,
        shift: event.shiftKey,
      });
    });
    this.doc.addEventListener("mousemove", (event) => {
      void this.handleInput({ type: "pointermove", ...point(event) });
    });
    this.doc.addEventListener("mouseup", (event) => {
      void this.handleInput({ type: "pointerup", ...point(event) });
    });
    svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      void this.handleInput({
        type: "wheel",
        ...point(event),
        deltaY: event.deltaY,
      });
    });
    svg.addEventListener("contextmenu", (event) => {
      event.preventDefault();
      void this.handleInput({ type: "contextmenu", ...point(event) });
    });
    this.doc.addEventListener("keydown", (event) => {
      const target = event.target as HTMLElement | null;
      if (target && ["INPUT", "SELECT", "TEXTAREA"].includes(target.tagName)) return;
      void this.handleInput({ type: "key", key: event.key });
    });
    this.doc.addEventListener("click", () => {
      this.menu?.remove();
      this.menu = null;
    });
  }
}
