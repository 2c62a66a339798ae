// Gesture dispatch: normalized input events become session calls or
// viewport changes. Pure decision logic; DOM wiring lives in app.ts so the
// mapping stays directly testable.

import type { SessionAction } from "../core/backend.js";
import {
  hitTest,
  screenToWorld,
  zoomAround,
  type HitDisc,
  type ViewportState,
} from "./viewport.js";

export type NormalizedInput =
  | { type: "dblclick"; x: number; y: number }
  | { type: "pointerdown"; x: number; y: number; button: number; shift: boolean }
  | { type: "pointermove"; x: number; y: number }
  | { type: "pointerup"; x: number; y: number }
  | { type: "wheel"; x: number; y: number; deltaY: number }
  | { type: "contextmenu"; x: number; y: number }
  | { type: "key"; key: string };

export type Effect =
  | { kind: "session"; action: SessionAction; body: Record<string, unknown> }
  | { kind: "filter-isolate-subtree"; id: string }
  | { kind: "inspect"; id: string }
  | { kind: "menu"; id: string; x: number; y: number; items: MenuItem[] }
  | { kind: "viewport" };

export interface MenuItem {
  label: string;
  shortcut: string;
  effect: Effect;
}

export interface InputContext {
  view: ViewportState;
  discs: HitDisc[];
  expanded: Set<string>;
  hasChildren(id: string): boolean;
  selection: string | null;
}

interface DragState {
  mode: "pan" | "node";
  id?: string;
  lastX: number;
  lastY: number;
  moved: boolean;
}

export class InputDispatcher {
  private drag: DragState | null = null;

  /** Keyboard shortcuts listed in the cheat sheet. */
  static readonly SHORTCUTS: Array<[string, string]> = [
    ["E", "expand selected node"],
    ["C", "collapse selected node"],
    ["Delete", "remove selected subtree"],
    ["I", "isolate selected subtree"],
    ["Enter", "inspect selected node"],
    ["R", "refresh the diagram"],
    ["Escape", "clear selection"],
  ];

  dispatch(event: NormalizedInput, ctx: InputContext): Effect[] {
    switch (event.type) {
      case "dblclick": {
        const id = hitTest(ctx.view, event.x, event.y, ctx.discs);
        if (!id) return [];
        if (ctx.expanded.has(id)) {
          return [{ kind: "session", action: "collapse", body: { id } }];
        }
        if (ctx.hasChildren(id)) {
          return [{ kind: "session", action: "expand", body: { id } }];
        }
        return [];
      }
      case "pointerdown": {
        if (event.button !== 0) return [];
        const id = hitTest(ctx.view, event.x, event.y, ctx.discs);
        if (id && event.shift) {
          this.drag = { mode: "node", id, lastX: event.x, lastY: event.y, moved: false };
          return [];
        }
        if (id) {
          this.drag = null;
          return [{ kind: "session", action: "select", body: { id } }];
        }
        this.drag = { mode: "pan", lastX: event.x, lastY: event.y, moved: false };
        return [];
      }
      case "pointermove": {
        if (!this.drag) return [];
        const dx = event.x - this.drag.lastX;
        const dy = event.y - this.drag.lastY;
        this.drag.lastX = event.x;
        this.drag.lastY = event.y;
        this.drag.moved = true;
        if (this.drag.mode === "pan") {
          ctx.view.panX += dx;
          ctx.view.panY += dy;
          return [{ kind: "viewport" }];
        }
        const [wx, wy] = screenToWorld(ctx.view, event.x, event.y);
        return [
          {
            kind: "session",
            action: "move",
            body: { id: this.drag.id, x: wx, y: wy, pin: true },
          },
        ];
      }
      case "pointerup": {
        const drag = this.drag;
        this.drag = null;
        if (drag?.mode === "node" && drag.moved) {
          const [wx, wy] = screenToWorld(ctx.view, event.x, event.y);
          // release keeps the node where the drag ended, still pinned
          return [
            {
              kind: "session",
              action: "move",
              body: { id: drag.id, x: wx, y: wy, pin: true },
            },
          ];
        }
        return [];
      }
      case "wheel": {
        zoomAround(ctx.view, event.deltaY < 0 ? 1.15 : 1 / 1.15, event.x, event.y);
        return [{ kind: "viewport" }];
      }
      case "contextmenu": {
        const id = hitTest(ctx.view, event.x, event.y, ctx.discs);
        if (!id) return [];
        return [
          {
            kind: "menu",
            id,
            x: event.x,
            y: event.y,
            items: this.menuItems(id, ctx),
          },
        ];
      }
      case "key":
        return this.keyEffects(event.key, ctx);
    }
  }

  menuItems(id: string, ctx: InputContext): MenuItem[] {
    const items: MenuItem[] = [];
    if (ctx.expanded.has(id)) {
      items.push({
        label: "Collapse",
        shortcut: "C",
        effect: { kind: "session", action: "collapse", body: { id } },
      });
    } else if (ctx.hasChildren(id)) {
      items.push({
        label: "Expand",
        shortcut: "E",
        effect: { kind: "session", action: "expand", body: { id } },
      });
    }
    items.push(
      {
        label: "Remove subtree",
        shortcut: "Delete",
        effect: { kind: "session", action: "remove", body: { id } },
      },
      {
        label: "Isolate subtree",
        shortcut: "I",
        effect: { kind: "filter-isolate-subtree", id },
      },
      {
        label: "Inspect",
        shortcut: "Enter",
        effect: { kind: "inspect", id },
      },
    );
    return items;
  }

  private keyEffects(key: string, ctx: InputContext): Effect[] {
    const id = ctx.selection;
    if (key === "Escape") {
      return [{ kind: "session", action: "select", body: { id: null } }];
    }
    if (key === "r" || key === "R") {
      return [{ kind: "session", action: "refresh", body: {} }];
    }
    if (!id) return [];
    switch (key) {
      case "Delete":
      case "Backspace":
        return [{ kind: "session", action: "remove", body: { id } }];
      case "e":
      case "E":
        return ctx.hasChildren(id) && !ctx.expanded.has(id)
          ? [{ kind: "session", action: "expand", body: { id } }]
          : [];
      case "c":
      case "C":
        return ctx.expanded.has(id)
          ? [{ kind: "session", action: "collapse", body: { id } }]
          : [];
      case "i":
      case "I":
        return [{ kind: "filter-isolate-subtree", id }];
      case "Enter":
        return [{ kind: "inspect", id }];
      default:
        return [];
    }
  }
}
