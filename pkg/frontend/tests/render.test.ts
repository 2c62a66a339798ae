// Scene rendering: every visual property traces back to a GlyphSpec field.

import { describe, expect, it } from "vitest";
import type { GlyphSpec } from "../src/core/glyphs.js";
import { glyphDocument, renderGlyphMarkup } from "../src/viewer/glyphRender.js";
import { SceneRenderer } from "../src/viewer/renderer.js";

function spec(overrides: Partial<GlyphSpec> = {}): GlyphSpec {
  return {
    radius: 16,
    iconId: "class",
    iconStyle: "stroked",
    contour: "none",
    effect: "none",
    indicators: [],
    fillColor: "#e6b800",
    ...overrides,
  };
}

describe("glyph markup", () => {
  it("renders the disc from radius and fill", () => {
    const markup = renderGlyphMarkup(spec());
    expect(markup).toContain('class="disc" r="16.00" fill="#e6b800"');
  });

  it("filled icons are filled, stroked icons are stroked", () => {
    expect(renderGlyphMarkup(spec({ iconStyle: "filled" }))).toContain(
      'class="icon filled"',
    );
    const stroked = renderGlyphMarkup(spec());
    expect(stroked).toContain('class="icon stroked"');
    expect(stroked).toContain('fill="none"');
  });

  it("contours map to the documented polygons", () => {
    const sealed = renderGlyphMarkup(spec({ contour: "octagonSolid" }));
    expect(sealed).toContain('class="contour octagon"');
    expect(sealed.match(/contour octagon" points="([^"]+)"/)![1].split(" ")).toHaveLength(8);
    const abstract = renderGlyphMarkup(spec({ contour: "hexagonDashed" }));
    expect(abstract).toContain('class="contour hexagon"');
    expect(abstract).toContain("stroke-dasharray");
  });

  it("donut sectors split at the static fraction", () => {
    const markup = renderGlyphMarkup(
      spec({
        donut: {
          staticFraction: 0.25,
          instanceFraction: 0.75,
          width: 4,
          hatchInstanceSector: true,
        },
      }),
    );
    expect(markup).toContain('class="donut-static"');
    expect(markup).toContain('class="donut-instance"');
    expect(markup).toContain("url(#helgraph-hatch)");
    // 25% of a turn from 12 o'clock ends at 3 o'clock: point (r, 0)
    const match = markup.match(/donut-static" d="M [^"]*A [\d.]+ [\d.]+ 0 \d 1 ([-\d.]+) ([-\d.]+)/);
    expect(match).toBeTruthy();
    const [x, y] = [parseFloat(match![1]), parseFloat(match![2])];
    expect(x).toBeGreaterThan(0);
    expect(Math.abs(y)).toBeLessThan(1e-6);
  });

  it("hatch hint off renders a plain instance sector", () => {
    const markup = renderGlyphMarkup(
      spec({
        donut: {
          staticFraction: 0.5,
          instanceFraction: 0.5,
          width: 3,
          hatchInstanceSector: false,
        },
      }),
    );
    expect(markup).not.toContain("url(#helgraph-hatch)");
  });

  it("badges, indicators, effects and shadow appear exactly when specified", () => {
    const everything = renderGlyphMarkup(
      spec({
        accessibilityBadge: "private",
        methodBadge: "constructor",
        indicators: ["collapsedShadow", "subtreeError", "subtreeWarning"],
        effect: "fire",
      }),
    );
    expect(everything).toContain("badge accessibility private");
    expect(everything).toContain("badge method constructor");
    expect(everything).toContain("collapsed-shadow");
    expect(everything).toContain("subtree-error");
    expect(everything).toContain("subtree-warning");
    expect(everything).toContain('class="effect fire"');

    const bare = renderGlyphMarkup(spec());
    for (const piece of [
      "badge",
      "collapsed-shadow",
      "subtree-error",
      "subtree-warning",
      "effect",
    ]) {
      expect(bare).not.toContain(piece);
    }
  });

  it("smoke renders rising puffs", () => {
    const markup = renderGlyphMarkup(spec({ effect: "smoke" }));
    expect(markup).toContain('class="effect smoke"');
    expect(markup.match(/class="puff"/g)).toHaveLength(3);
  });

  it("glyphDocument produces a standalone SVG", () => {
    const doc = glyphDocument(spec(), 96);
    expect(doc).toContain("<svg");
    expect(doc).toContain("</svg>");
    expect(doc).toContain("helgraph-hatch");
  });
});

describe("scene renderer", () => {
  function scene() {
    const svg = document.createElementNS(
      "http://www.w3.org/2000/svg",
      "svg",
    ) as SVGSVGElement;
    document.body.appendChild(svg);
    return { svg, renderer: new SceneRenderer(svg) };
  }

  const input = {
    positions: { a: [0, 0] as [number, number], b: [100, 0] as [number, number] },
    glyphs: { a: spec(), b: spec({ radius: 8, fillColor: "#1c7ed6" }) },
    edges: [
      { source: "a", target: "b", relation: "declares", color: "#999", thickness: 1 },
    ],
    dimmed: new Set<string>(["b"]),
    selection: "a" as string | null,
    names: { a: "Alpha", b: "Beta" },
    labelsVisible: true,
  };

  it("draws edges beneath nodes", () => {
    const { svg, renderer } = scene();
    renderer.render(input);
    const world = svg.querySelector(".world")!;
    const layers = [...world.children].map((c) => c.getAttribute("class"));
    expect(layers).toEqual(["edges", "nodes", "labels"]);
    expect(svg.querySelectorAll(".edge")).toHaveLength(1);
    expect(svg.querySelectorAll(".node")).toHaveLength(2);
  });

  it("marks dimmed nodes and the selection", () => {
    const { svg, renderer } = scene();
    renderer.render(input);
    const dimmed = svg.querySelector('[data-id="b"]')!;
    expect(dimmed.getAttribute("class")).toContain("dimmed");
    const selected = svg.querySelector('[data-id="a"]')!;
    expect(selected.querySelector(".selection-ring")).toBeTruthy();
  });

  it("labels are toggleable", () => {
    const { svg, renderer } = scene();
    renderer.render(input);
    expect(svg.querySelectorAll("text.label")).toHaveLength(2);
    renderer.render({ ...input, labelsVisible: false });
    expect(svg.querySelectorAll("text.label")).toHaveLength(0);
  });

  it("exposes draw order for hit-testing", () => {
    const { renderer } = scene();
    renderer.render(input);
    expect(renderer.hitDiscs().map((d) => d.id)).toEqual(["a", "b"]);
  });
});
