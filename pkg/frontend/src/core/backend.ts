// The viewer talks to either the HTTP session API or the in-process core
// through this one interface; call shapes match the wire format exactly.

import type { GlyphSpec } from "./glyphs.js";
import { parseDocument, type InterchangeDocument } from "./model.js";
import {
  Session,
  parseQuery,
  type FilterModeName,
  type Snapshot,
  type StateSummary,
} from "./session.js";

export type SessionAction =
  | "expand"
  | "collapse"
  | "remove"
  | "refresh"
  | "preset"
  | "move"
  | "select";

export interface GraphMeta {
  label: string;
  formatVersion: string;
  entityCount: number;
  kindCounts: Record<string, number>;
  relations: Record<
    string,
    {
      edgeCount: number;
      color: string;
      thickness: number;
      edges: Array<[string, string]>;
    }
  >;
  presets: string[];
  session: StateSummary;
  names: Record<string, string>;
  kinds: Record<string, string>;
}

export interface FilterRequest {
  query: { mode: FilterModeName; text: string };
  mode: "highlight" | "isolate";
}

export interface FilterResponse extends StateSummary {
  matched: string[];
  query: { mode: FilterModeName; text: string };
}

export interface SessionBackend {
  meta(): Promise<GraphMeta>;
  node(id: string): Promise<Record<string, unknown>>;
  glyphs(ids?: string[]): Promise<Record<string, GlyphSpec>>;
  action(name: SessionAction, body: Record<string, unknown>): Promise<StateSummary>;
  filter(request: FilterRequest): Promise<FilterResponse>;
  layoutStream(listener: (snap: Snapshot) => void): () => void;
}

export class InProcessBackend implements SessionBackend {
  readonly session: Session;

  constructor(document: InterchangeDocument, config?: ConstructorParameters<typeof Session>[1]) {
    this.session = new Session(parseDocument(document), config);
  }

  async meta(): Promise<GraphMeta> {
    const graph = this.session.graph;
    const kindCounts: Record<string, number> = {};
    for (const entity of graph.entities.values()) {
      kindCounts[entity.kind] = (kindCounts[entity.kind] ?? 0) + 1;
    }
    const relations: GraphMeta["relations"] = {};
    for (const [name, style] of Object.entries(this.session.config.relations)) {
      const pairs = graph.relations.get(name) ?? [];
      relations[name] = {
        edgeCount: pairs.length,
        color: style.color,
        thickness: style.thickness,
        edges: pairs.map(([s, t]) => [s, t]),
      };
    }
    const names: Record<string, string> = {};
    const kinds: Record<string, string> = {};
    for (const id of [...graph.entities.keys()].sort()) {
      const entity = graph.entities.get(id)!;
      names[id] = entity.name;
      kinds[id] = entity.kind;
    }
    return {
      label: graph.label,
      formatVersion: "1.0",
      entityCount: graph.entities.size,
      kindCounts,
      relations,
      presets: ["default", "allTypes", "projectDependencies", "birdsEye"],
      session: this.session.stateSummary(),
      names,
      kinds,
    };
  }

  async node(id: string): Promise<Record<string, unknown>> {
    return this.session.inspect(id);
  }

  async glyphs(ids?: string[]): Promise<Record<string, GlyphSpec>> {
    return this.session.glyphs(ids);
  }

  async action(
    name: SessionAction,
    body: Record<string, unknown>,
  ): Promise<StateSummary> {
    const session = this.session;
    if (name === "expand") session.expand(String(body.id));
    else if (name === "collapse") session.collapse(String(body.id));
    else if (name === "remove") session.removeSubtree(String(body.id));
    else if (name === "refresh") session.refresh();
    else if (name === "preset") session.applyPreset(String(body.name));
    else if (name === "move") {
      session.moveNode(
        String(body.id),
        Number(body.x),
        Number(body.y),
        Boolean(body.pin),
      );
    } else if (name === "select") {
      session.select(body.id == null ? null : String(body.id));
    } else throw new Error(`unknown session action '${name}'`);
    const summary = session.stateSummary();
    summary.positions = session.snapshot().positions;
    return summary;
  }

  async filter(request: FilterRequest): Promise<FilterResponse> {
    const query = parseQuery(request.query.mode, request.query.text);
    const matched = this.session.applyFilter(query, request.mode);
    const summary = this.session.stateSummary() as FilterResponse;
    summary.matched = [...matched].sort();
    summary.query = { mode: query.mode, text: query.text };
    summary.positions = this.session.snapshot().positions;
    return summary;
  }

  layoutStream(listener: (snap: Snapshot) => void): () => void {
    this.session.snapshotListeners.push(listener);
    listener(this.session.snapshot());
    return () => {
      const index = this.session.snapshotListeners.indexOf(listener);
      if (index >= 0) this.session.snapshotListeners.splice(index, 1);
    };
  }
}

export class HttpBackend implements SessionBackend {
  constructor(private readonly base: string = "") {}

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    const response = await fetch(this.base + path, init);
    const payload = (await response.json()) as T & { error?: { message: string } };
    if (!response.ok) {
      throw new Error(payload.error?.message ?? `HTTP ${response.status}`);
    }
    return payload;
  }

  meta(): Promise<GraphMeta> {
    return this.request("/graph/meta");
  }

  node(id: string): Promise<Record<string, unknown>> {
    return this.request(`/node/${encodeURIComponent(id)}`);
  }

  glyphs(ids?: string[]): Promise<Record<string, GlyphSpec>> {
    const suffix = ids ? `?ids=${ids.map(encodeURIComponent).join(",")}` : "";
    return this.request(`/glyphs${suffix}`);
  }

  action(name: SessionAction, body: Record<string, unknown>): Promise<StateSummary> {
    return this.request(`/session/${name}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  filter(request: FilterRequest): Promise<FilterResponse> {
    return this.request("/filter", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  layoutStream(listener: (snap: Snapshot) => void): () => void {
    const source = new EventSource(`${this.base}/layout/stream`);
    source.onmessage = (event) => listener(JSON.parse(event.data));
    return () => source.close();
  }
}
