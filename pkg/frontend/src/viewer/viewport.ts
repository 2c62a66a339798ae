// Screen/world transforms and disc hit-testing.

export interface ViewportState {
  panX: number;
  panY: number;
  zoom: number;
  hoveredNode: string | null;
  selectedNode: string | null;
}

export const MIN_ZOOM = 0.05;
export const MAX_ZOOM = 20;

export function initialViewport(width: number, height: number): ViewportState {
  return {
    panX: width / 2,
    panY: height / 2,
    zoom: 1,
    hoveredNode: null,
    selectedNode: null,
  };
}

export function worldToScreen(
  view: ViewportState,
  x: number,
  y: number,
): [number, number] {
  return [x * view.zoom + view.panX, y * view.zoom + view.panY];
}

export function screenToWorld(
  view: ViewportState,
  x: number,
  y: number,
): [number, number] {
  return [(x - view.panX) / view.zoom, (y - view.panY) / view.zoom];
}

export function zoomAround(
  view: ViewportState,
  factor: number,
  screenX: number,
  screenY: number,
): void {
  const next = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, view.zoom * factor));
  const scale = next / view.zoom;
  view.panX = screenX - (screenX - view.panX) * scale;
  view.panY = screenY - (screenY - view.panY) * scale;
  view.zoom = next;
}

export interface HitDisc {
  id: string;
  x: number;
  y: number;
  radius: number;
}

/**
 * Topmost node whose disc contains the screen point. `discs` must be in
 * draw order (later entries render above earlier ones).
 */
export function hitTest(
  view: ViewportState,
  screenX: number,
  screenY: number,
  discs: HitDisc[],
): string | null {
  for (let i = discs.length - 1; i >= 0; i--) {
    const disc = discs[i];
    const [cx, cy] = worldToScreen(view, disc.x, disc.y);
    const radius = disc.radius * view.zoom;
    const dx = screenX - cx;
    const dy = screenY - cy;
    if (dx * dx + dy * dy <= radius * radius) return disc.id;
  }
  return null;
}
