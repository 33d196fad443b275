/** Even-odd polygon containment, boundary-inclusive, matching the engine's rules. */

export interface Vec {
  x: number;
  y: number;
}

export type PolygonCoords = ReadonlyArray<readonly [number, number]>;

function onSegment(px: number, py: number, ax: number, ay: number, bx: number, by: number): boolean {
  const cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
  if (cross !== 0) return false;
  return (
    Math.min(ax, bx) <= px &&
    px <= Math.max(ax, bx) &&
    Math.min(ay, by) <= py &&
    py <= Math.max(ay, by)
  );
}

/** True iff (x, y) is inside the polygon; points exactly on an edge count as inside. */
export function pointInPolygon(x: number, y: number, polygon: PolygonCoords): boolean {
  const n = polygon.length;
  for (let i = 0; i < n; i++) {
    const [ax, ay] = polygon[i]!;
    const [bx, by] = polygon[(i + 1) % n]!;
    if (onSegment(x, y, ax, ay, bx, by)) return true;
  }
  let inside = false;
  for (let i = 0; i < n; i++) {
    const [ax, ay] = polygon[i]!;
    const [bx, by] = polygon[(i + 1) % n]!;
    if (ay > y !== by > y) {
      const xCross = ax + ((y - ay) * (bx - ax)) / (by - ay);
      if (x < xCross) inside = !inside;
    }
  }
  return inside;
}

export function distance(ax: number, ay: number, bx: number, by: number): number {
  return Math.hypot(bx - ax, by - ay);
}
