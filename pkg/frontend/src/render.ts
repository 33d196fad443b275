/**
 * Overlay drawing: strokes each target polygon at the frame's alpha.
 *
 * The drawing surface is expressed as a minimal interface so tests can
 * capture exactly what would hit the canvas; the alpha passed to each stroke
 * is the engine's render_at value, untouched.
 */

import { RenderFrame } from "./engine.js";
import { Wall } from "./guidebook.js";

export interface WallStyle {
  unvisited: string;
  visited: string;
  strokeWidth: number;
}

export const FALLBACK_STYLE: WallStyle = { unvisited: "#DF00FF", visited: "#00FFFF", strokeWidth: 2 };

/** The subset of CanvasRenderingContext2D the overlay needs. */
export interface OverlaySurface {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  stroke(): void;
  lineWidth: number;
  strokeStyle: string;
  globalAlpha: number;
  lineJoin: string;
}

export function drawOverlay(
  surface: OverlaySurface,
  frame: RenderFrame,
  wall: Wall,
  style: WallStyle,
  scale: number,
): void {
  surface.clearRect(0, 0, wall.width * scale, wall.height * scale);
  surface.lineWidth = style.strokeWidth * scale;
  surface.lineJoin = "miter"; // square corners
  const byId = new Map(wall.targets.map((t) => [t.id, t]));
  for (const entry of frame.entries) {
    if (entry.alpha === 0) continue; // invisible outlines are not drawn at all
    const target = byId.get(entry.target);
    if (target === undefined) continue;
    surface.globalAlpha = entry.alpha;
    surface.strokeStyle = entry.visited ? style.visited : style.unvisited;
    surface.beginPath();
    target.polygon.forEach(([x, y], i) => {
      if (i === 0) surface.moveTo(x * scale, y * scale);
      else surface.lineTo(x * scale, y * scale);
    });
    surface.closePath();
    surface.stroke();
  }
}
