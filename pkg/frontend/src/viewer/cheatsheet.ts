// Cheat sheet overlay plus the first-run welcome with a short callout tour.

import { ICON_IDS } from "../core/glyphs.js";
import { glyphDocument } from "./glyphRender.js";
import { InputDispatcher } from "./input.js";

const MOUSE_CONTROLS: Array<[string, string]> = [
  ["double-click", "expand or collapse a node"],
  ["shift + drag node", "move the node and pin it"],
  ["right-click node", "context menu (expand, collapse, remove, isolate, inspect)"],
  ["drag background", "pan the diagram"],
  ["mouse wheel", "zoom"],
  ["click node", "select and inspect"],
];

const GLYPH_RULES: Array<[string, string]> = [
  ["filled icon", "static entity"],
  ["stroked icon", "instance entity"],
  ["solid octagon contour", "sealed"],
  ["dashed hexagon contour", "abstract"],
  ["donut ring", "static vs instance member ratio; width grows with member count"],
  ["corner badge", "non-public accessibility"],
  ["shadow under node", "collapsed: children hidden, double-click to expand"],
  ["flame / smoke", "own compiler error / warning"],
  ["corner marks", "error or warning somewhere in the subtree"],
];

const TOUR_STEPS = [
  "This diagram is your codebase: each circle is an entity, edges are relations.",
  "Double-click nodes to expand them; shift-drag to pin them in place.",
  "The dock on the left switches panels: search, properties, layout, appearance.",
  "The tree view lists the hierarchy like a classic API reference; clicking reveals the node.",
  "Use the search panel's filter builder to highlight or isolate matching nodes.",
];

export class CheatSheet {
  readonly button: HTMLButtonElement;
  readonly overlay: HTMLElement;

  constructor(doc: Document, host: HTMLElement) {
    this.button = doc.createElement("button");
    this.button.id = "cheatsheet-button";
    this.button.type = "button";
    this.button.title = "Cheat sheet";
    this.button.textContent = "?";

    this.overlay = doc.createElement("div");
    this.overlay.id = "cheatsheet";
    this.overlay.style.display = "none";

    const icons = ICON_IDS.map(
      (iconId) =>
        `<figure class="legend-icon">${glyphDocument(
          {
            radius: 13,
            iconId,
            iconStyle: "stroked",
            contour: "none",
            effect: "none",
            indicators: [],
            fillColor: "#e9ecef",
          },
          36,
        )}<figcaption>${iconId}</figcaption></figure>`,
    ).join("");

    this.overlay.innerHTML =
      `<div class="sheet">` +
      `<h2>Cheat sheet</h2>` +
      `<h3>Mouse</h3><table>${rows(MOUSE_CONTROLS)}</table>` +
      `<h3>Keyboard</h3><table>${rows(InputDispatcher.SHORTCUTS)}</table>` +
      `<h3>Glyphs</h3><table>${rows(GLYPH_RULES)}</table>` +
      `<div class="legend">${icons}</div>` +
      `<button type="button" id="cheatsheet-close">Close</button>` +
      `</div>`;

    this.button.addEventListener("click", () => {
      this.overlay.style.display = "flex";
    });
    this.overlay
      .querySelector("#cheatsheet-close")!
      .addEventListener("click", () => {
        this.overlay.style.display = "none";
      });
    host.append(this.button, this.overlay);
  }
}

export class WelcomeTour {
  readonly overlay: HTMLElement;
  private step = 0;

  constructor(doc: Document, host: HTMLElement) {
    this.overlay = doc.createElement("div");
    this.overlay.id = "welcome";
    this.overlay.innerHTML =
      `<div class="sheet">` +
      `<h2>Welcome</h2>` +
      `<p id="tour-step"></p>` +
      `<p class="tour-count"><span id="tour-index"></span>/${TOUR_STEPS.length}</p>` +
      `<button type="button" id="tour-next">Next</button>` +
      `<button type="button" id="tour-skip">Skip</button>` +
      `</div>`;
    host.appendChild(this.overlay);
    this.renderStep();
    this.overlay.querySelector("#tour-next")!.addEventListener("click", () => {
      this.step++;
      if (this.step >= TOUR_STEPS.length) this.close();
      else this.renderStep();
    });
    this.overlay
      .querySelector("#tour-skip")!
      .addEventListener("click", () => this.close());
  }

  private renderStep(): void {
    (this.overlay.querySelector("#tour-step") as HTMLElement).textContent =
      TOUR_STEPS[this.step];
    (this.overlay.querySelector("#tour-index") as HTMLElement).textContent =
      String(this.step + 1);
  }

  private close(): void {
    this.overlay.style.display = "none";
  }
}

function rows(pairs: Array<[string, string]>): string {
  return pairs
    .map(([a, b]) => `<tr><td class="key">${a}</td><td>${b}</td></tr>`)
    .join("");
}
