// Renders one GlyphSpec to SVG markup. Every visual decision here traces
// to a GlyphSpec field; the only local logic is contrast (icon ink color
// picked against the disc fill) and geometry.

import type { GlyphSpec } from "../core/glyphs.js";
import { ACCESS_BADGES, ICONS, METHOD_BADGES } from "./icons.js";

export const HATCH_PATTERN_ID = "helgraph-hatch";

export function svgDefs(): string {
  return (
    `<pattern id="${HATCH_PATTERN_ID}" patternUnits="userSpaceOnUse" width="4" height="4" ` +
    `patternTransform="rotate(45)">` +
    `<line x1="0" y1="0" x2="0" y2="4" stroke="#3b3b3b" stroke-width="1.6"/>` +
    `</pattern>`
  );
}

function luminance(hex: string): number {
  const r = parseInt(hex.slice(1, 3), 16) / 255;
  const g = parseInt(hex.slice(3, 5), 16) / 255;
  const b = parseInt(hex.slice(5, 7), 16) / 255;
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}

function ink(fill: string): string {
  return luminance(fill) > 0.45 ? "#1d1d1d" : "#f5f5f5";
}

function polygonPoints(sides: number, radius: number, offsetDeg: number): string {
  const points: string[] = [];
  for (let i = 0; i < sides; i++) {
    const angle = ((offsetDeg + (360 / sides) * i) * Math.PI) / 180;
    points.push(
      `${(radius * Math.cos(angle)).toFixed(2)},${(radius * Math.sin(angle)).toFixed(2)}`,
    );
  }
  return points.join(" ");
}

function annulusSector(
  inner: number,
  outer: number,
  startFrac: number,
  endFrac: number,
): string {
  // fractions of a full turn, measured clockwise from 12 o'clock
  const a0 = (startFrac * 2 - 0.5) * Math.PI;
  const a1 = (endFrac * 2 - 0.5) * Math.PI;
  const large = endFrac - startFrac > 0.5 ? 1 : 0;
  const p = (r: number, a: number) =>
    `${(r * Math.cos(a)).toFixed(3)} ${(r * Math.sin(a)).toFixed(3)}`;
  return (
    `M ${p(outer, a0)} A ${outer} ${outer} 0 ${large} 1 ${p(outer, a1)} ` +
    `L ${p(inner, a1)} A ${inner} ${inner} 0 ${large} 0 ${p(inner, a0)} Z`
  );
}

function fullAnnulus(inner: number, outer: number): string {
  const ring = (r: number) =>
    `M ${-r} 0 A ${r} ${r} 0 1 0 ${r} 0 A ${r} ${r} 0 1 0 ${-r} 0 Z`;
  return `${ring(outer)} ${ring(inner)}`;
}

function donutMarkup(spec: GlyphSpec): string {
  const donut = spec.donut;
  if (!donut) return "";
  const inner = spec.radius + 0.5;
  const outer = spec.radius + 0.5 + donut.width;
  const pieces: string[] = [];
  const instanceFill = donut.hatchInstanceSector
    ? `url(#${HATCH_PATTERN_ID})`
    : "none";
  if (donut.staticFraction >= 0.9995) {
    pieces.push(
      `<path class="donut-static" fill-rule="evenodd" d="${fullAnnulus(inner, outer)}" fill="#3b3b3b" fill-opacity="0.8"/>`,
    );
  } else if (donut.staticFraction <= 0.0005) {
    pieces.push(
      `<path class="donut-instance" fill-rule="evenodd" d="${fullAnnulus(inner, outer)}" fill="${instanceFill}" stroke="#3b3b3b" stroke-width="0.8"/>`,
    );
  } else {
    pieces.push(
      `<path class="donut-static" d="${annulusSector(inner, outer, 0, donut.staticFraction)}" fill="#3b3b3b" fill-opacity="0.8"/>`,
      `<path class="donut-instance" d="${annulusSector(inner, outer, donut.staticFraction, 1)}" fill="${instanceFill}" stroke="#3b3b3b" stroke-width="0.8"/>`,
    );
  }
  return pieces.join("");
}

function iconMarkup(spec: GlyphSpec): string {
  const icon = ICONS[spec.iconId];
  if (!icon) return "";
  const scale = (spec.radius * 0.046).toFixed(4);
  const color = ink(spec.fillColor);
  const style =
    spec.iconStyle === "filled"
      ? `fill="${color}" stroke="none"` +
        (icon.evenodd ? ` fill-rule="evenodd"` : "")
      : `fill="none" stroke="${color}" stroke-width="1.8" stroke-linecap="round" stroke-linejoin="round"`;
  return (
    `<g class="icon ${spec.iconStyle}" transform="scale(${scale}) translate(-12 -12)">` +
    `<path d="${icon.path}" ${style}/></g>`
  );
}

function badgeMarkup(
  path: string,
  cx: number,
  cy: number,
  size: number,
  className: string,
): string {
  const scale = (size / 24).toFixed(4);
  return (
    `<g class="${className}" transform="translate(${cx.toFixed(2)} ${cy.toFixed(2)})">` +
    `<circle r="${(size * 0.72).toFixed(2)}" fill="#ffffff" stroke="#4a4a4a" stroke-width="0.6"/>` +
    `<g transform="scale(${scale}) translate(-12 -12)">` +
    `<path d="${path}" fill="none" stroke="#1d1d1d" stroke-width="2.4" stroke-linecap="round" stroke-linejoin="round"/>` +
    `</g></g>`
  );
}

function indicatorMarkup(spec: GlyphSpec): string {
  const pieces: string[] = [];
  const r = spec.radius;
  let slot = 0;
  if (spec.indicators.includes("subtreeError")) {
    const cx = -r * 0.95 + slot * r * 0.62;
    const cy = -r * 0.95;
    const s = r * 0.3;
    pieces.push(
      `<g class="indicator subtree-error" transform="translate(${cx.toFixed(2)} ${cy.toFixed(2)})">` +
        `<path d="M0 ${-s} L${s} ${s} L${-s} ${s} Z" fill="#d32f2f" stroke="#7a0d0d" stroke-width="0.5"/>` +
        `<line x1="0" y1="${-s * 0.33}" x2="0" y2="${s * 0.38}" stroke="#ffffff" stroke-width="${s * 0.3}"/>` +
        `</g>`,
    );
    slot++;
  }
  if (spec.indicators.includes("subtreeWarning")) {
    const cx = -r * 0.95 + slot * r * 0.62;
    const cy = -r * 0.95;
    const s = r * 0.28;
    pieces.push(
      `<g class="indicator subtree-warning" transform="translate(${cx.toFixed(2)} ${cy.toFixed(2)})">` +
        `<circle r="${s}" fill="#f59f00" stroke="#8a5d00" stroke-width="0.5"/>` +
        `<line x1="${-s * 0.5}" y1="0" x2="${s * 0.5}" y2="0" stroke="#ffffff" stroke-width="${s * 0.35}"/>` +
        `</g>`,
    );
  }
  return pieces.join("");
}

function effectMarkup(spec: GlyphSpec): string {
  const r = spec.radius;
  if (spec.effect === "fire") {
    const s = r * 0.55;
    return (
      `<g class="effect fire" transform="translate(0 ${(-r * 1.05).toFixed(2)})">` +
      `<path class="flame outer" d="M0 ${-s * 1.6} C ${s * 0.9} ${-s * 0.6} ${s * 0.7} ${s * 0.2} 0 ${s * 0.5} C ${-s * 0.7} ${s * 0.2} ${-s * 0.9} ${-s * 0.6} 0 ${-s * 1.6} Z" fill="#e8590c"/>` +
      `<path class="flame inner" d="M0 ${-s * 0.9} C ${s * 0.45} ${-s * 0.25} ${s * 0.35} ${s * 0.25} 0 ${s * 0.45} C ${-s * 0.35} ${s * 0.25} ${-s * 0.45} ${-s * 0.25} 0 ${-s * 0.9} Z" fill="#ffd43b"/>` +
      `</g>`
    );
  }
  if (spec.effect === "smoke") {
    const s = r * 0.28;
    const puff = (dx: number, dy: number, k: number, opacity: number) =>
      `<circle class="puff" cx="${(dx * s).toFixed(2)}" cy="${(dy * s).toFixed(2)}" r="${(k * s).toFixed(2)}" fill="#9aa0a6" fill-opacity="${opacity}"/>`;
    return (
      `<g class="effect smoke" transform="translate(0 ${(-r * 1.15).toFixed(2)})">` +
      puff(0, 0, 0.9, 0.8) +
      puff(0.45, -1.2, 1.1, 0.6) +
      puff(-0.2, -2.5, 1.35, 0.4) +
      `</g>`
    );
  }
  return "";
}

/** Markup for a node glyph centered at the local origin. */
export function renderGlyphMarkup(spec: GlyphSpec): string {
  const r = spec.radius;
  const pieces: string[] = [];
  if (spec.indicators.includes("collapsedShadow")) {
    pieces.push(
      `<ellipse class="collapsed-shadow" cx="0" cy="${(r * 1.05).toFixed(2)}" rx="${(r * 0.95).toFixed(2)}" ry="${(r * 0.32).toFixed(2)}" fill="#000000" fill-opacity="0.28"/>`,
    );
  }
  pieces.push(
    `<circle class="disc" r="${r.toFixed(2)}" fill="${spec.fillColor}" stroke="#2f2f2f" stroke-width="0.75"/>`,
  );
  pieces.push(donutMarkup(spec));
  if (spec.contour === "octagonSolid") {
    pieces.push(
      `<polygon class="contour octagon" points="${polygonPoints(8, r * 0.78, 22.5)}" fill="none" stroke="${ink(spec.fillColor)}" stroke-width="1.1"/>`,
    );
  } else if (spec.contour === "hexagonDashed") {
    pieces.push(
      `<polygon class="contour hexagon" points="${polygonPoints(6, r * 0.8, 0)}" fill="none" stroke="${ink(spec.fillColor)}" stroke-width="1.1" stroke-dasharray="${(r * 0.22).toFixed(2)} ${(r * 0.14).toFixed(2)}"/>`,
    );
  }
  pieces.push(iconMarkup(spec));
  if (spec.accessibilityBadge && ACCESS_BADGES[spec.accessibilityBadge]) {
    pieces.push(
      badgeMarkup(
        ACCESS_BADGES[spec.accessibilityBadge],
        r * 0.68,
        r * 0.68,
        Math.max(r * 0.42, 4),
        `badge accessibility ${spec.accessibilityBadge}`,
      ),
    );
  }
  if (spec.methodBadge && METHOD_BADGES[spec.methodBadge]) {
    pieces.push(
      badgeMarkup(
        METHOD_BADGES[spec.methodBadge],
        -r * 0.68,
        r * 0.68,
        Math.max(r * 0.42, 4),
        `badge method ${spec.methodBadge}`,
      ),
    );
  }
  pieces.push(indicatorMarkup(spec));
  pieces.push(effectMarkup(spec));
  return pieces.join("");
}

/** Standalone SVG document for one glyph (golden tests, previews). */
export function glyphDocument(spec: GlyphSpec, size = 96): string {
  const half = size / 2;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" ` +
    `viewBox="0 0 ${size} ${size}">` +
    `<defs>${svgDefs()}</defs>` +
    `<rect width="${size}" height="${size}" fill="#fafafa"/>` +
    `<g transform="translate(${half} ${half})">${renderGlyphMarkup(spec)}</g>` +
    `</svg>`
  );
}
