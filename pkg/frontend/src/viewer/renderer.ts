// Scene rendering: edges beneath nodes, nodes per GlyphSpec, toggleable
// labels, dimming. Renders from snapshots only; it never derives a visual
// attribute itself.

import type { GlyphSpec } from "../core/glyphs.js";
import { renderGlyphMarkup, svgDefs } from "./glyphRender.js";
import type { HitDisc, ViewportState } from "./viewport.js";

export interface EdgeView {
  source: string;
  target: string;
  relation: string;
  color: string;
  thickness: number;
}

export interface SceneInput {
  positions: Record<string, [number, number]>;
  glyphs: Record<string, GlyphSpec>;
  edges: EdgeView[];
  dimmed: Set<string>;
  selection: string | null;
  names: Record<string, string>;
  labelsVisible: boolean;
}

export class SceneRenderer {
  private readonly world: SVGGElement;
  private readonly edgeLayer: SVGGElement;
  private readonly nodeLayer: SVGGElement;
  private readonly labelLayer: SVGGElement;
  private drawOrder: HitDisc[] = [];

  constructor(svg: SVGSVGElement) {
    const ns = "http://www.w3.org/2000/svg";
    const defs = document.createElementNS(ns, "defs");
    defs.innerHTML = svgDefs();
    svg.appendChild(defs);
    this.world = document.createElementNS(ns, "g");
    this.world.setAttribute("class", "world");
    svg.appendChild(this.world);
    this.edgeLayer = document.createElementNS(ns, "g");
    this.edgeLayer.setAttribute("class", "edges");
    this.nodeLayer = document.createElementNS(ns, "g");
    this.nodeLayer.setAttribute("class", "nodes");
    this.labelLayer = document.createElementNS(ns, "g");
    this.labelLayer.setAttribute("class", "labels");
    this.world.append(this.edgeLayer, this.nodeLayer, this.labelLayer);
  }

  /** Current draw order for hit-testing (topmost last). */
  hitDiscs(): HitDisc[] {
    return this.drawOrder;
  }

  applyViewport(view: ViewportState): void {
    this.world.setAttribute(
      "transform",
      `translate(${view.panX} ${view.panY}) scale(${view.zoom})`,
    );
  }

  render(scene: SceneInput): void {
    const edgeMarkup: string[] = [];
    for (const edge of scene.edges) {
      const a = scene.positions[edge.source];
      const b = scene.positions[edge.target];
      if (!a || !b) continue;
      const faded =
        scene.dimmed.has(edge.source) || scene.dimmed.has(edge.target);
      edgeMarkup.push(
        `<line class="edge ${edge.relation}" x1="${a[0].toFixed(2)}" y1="${a[1].toFixed(2)}" ` +
          `x2="${b[0].toFixed(2)}" y2="${b[1].toFixed(2)}" stroke="${edge.color}" ` +
          `stroke-width="${edge.thickness}"${faded ? ' opacity="0.15"' : ""}/>`,
      );
    }
    this.edgeLayer.innerHTML = edgeMarkup.join("");

    const ids = Object.keys(scene.positions).sort();
    this.drawOrder = [];
    const nodeMarkup: string[] = [];
    const labelMarkup: string[] = [];
    for (const id of ids) {
      const [x, y] = scene.positions[id];
      const glyph = scene.glyphs[id];
      if (!glyph) continue;
      this.drawOrder.push({ id, x, y, radius: glyph.radius });
      const classes = ["node"];
      if (scene.dimmed.has(id)) classes.push("dimmed");
      if (scene.selection === id) classes.push("selected");
      nodeMarkup.push(
        `<g class="${classes.join(" ")}" data-id="${escapeAttr(id)}" ` +
          `transform="translate(${x.toFixed(2)} ${y.toFixed(2)})">` +
          (scene.selection === id
            ? `<circle class="selection-ring" r="${(glyph.radius + 3.5).toFixed(2)}" fill="none" stroke="#1971c2" stroke-width="1.6" stroke-dasharray="4 3"/>`
            : "") +
          renderGlyphMarkup(glyph) +
          `</g>`,
      );
      if (scene.labelsVisible) {
        const name = scene.names[id] ?? id;
        labelMarkup.push(
          `<text class="label${scene.dimmed.has(id) ? " dimmed" : ""}" ` +
            `x="${x.toFixed(2)}" y="${(y + glyph.radius + 11).toFixed(2)}" ` +
            `text-anchor="middle">${escapeText(name)}</text>`,
        );
      }
    }
    this.nodeLayer.innerHTML = nodeMarkup.join("");
    this.labelLayer.innerHTML = scene.labelsVisible ? labelMarkup.join("") : "";
  }
}

function escapeAttr(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/"/g, "&quot;").replace(/</g, "&lt;");
}

function escapeText(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/</g, "&lt;");
}
