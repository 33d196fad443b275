/** Guidebook pack types and loader (.gbk.json, version 1). */

import { pointInPolygon, PolygonCoords } from "./geometry.js";

export interface ContentAction {
  kind: "text_description" | "audio_clip";
  payload: string;
}

export interface Target {
  id: string;
  label: string;
  polygon: PolygonCoords;
  action: ContentAction;
}

export interface Wall {
  id: string;
  image: string;
  width: number;
  height: number;
  targets: Target[];
}

export interface Room {
  id: string;
  name: string;
  walls: Wall[];
}

export interface Guidebook {
  rooms: Room[];
}

/**
 * Parse a guidebook document. The authoritative validator is the engine's
 * `validate` command; this loader checks just enough structure to fail fast
 * on a wrong or truncated file.
 */
export function parseGuidebook(text: string): Guidebook {
  const doc = JSON.parse(text) as {
    version?: number;
    rooms?: Array<{
      id: string;
      name: string;
      walls: Array<{
        id: string;
        image: string;
        width: number;
        height: number;
        targets: Array<{
          id: string;
          label: string;
          shape: { polygon: Array<[number, number]> };
          action: { kind: string; text?: string; path?: string };
        }>;
      }>;
    }>;
  };
  if (doc.version !== 1 || !Array.isArray(doc.rooms) || doc.rooms.length === 0) {
    throw new Error("not a version-1 guidebook document");
  }
  const rooms: Room[] = doc.rooms.map((room) => ({
    id: room.id,
    name: room.name,
    walls: room.walls.map((wall) => ({
      id: wall.id,
      image: wall.image,
      width: wall.width,
      height: wall.height,
      targets: wall.targets.map((target) => {
        if (!Array.isArray(target.shape.polygon) || target.shape.polygon.length < 3) {
          throw new Error(`target ${target.id}: degenerate polygon`);
        }
        const action: ContentAction =
          target.action.kind === "text_description"
            ? { kind: "text_description", payload: target.action.text ?? "" }
            : { kind: "audio_clip", payload: target.action.path ?? "" };
        if (target.action.kind !== "text_description" && target.action.kind !== "audio_clip") {
          throw new Error(`target ${target.id}: unknown action kind ${target.action.kind}`);
        }
        return { id: target.id, label: target.label, polygon: target.shape.polygon, action };
      }),
    })),
  }));
  return { rooms };
}

/** First wall with this id, scanning rooms in document order. */
export function findWall(book: Guidebook, wallId: string): Wall | null {
  for (const room of book.rooms) {
    for (const wall of room.walls) {
      if (wall.id === wallId) return wall;
    }
  }
  return null;
}

export function allWalls(book: Guidebook): Array<{ room: Room; wall: Wall }> {
  return book.rooms.flatMap((room) => room.walls.map((wall) => ({ room, wall })));
}

/** Id of the first target (document order) containing the point, or null. */
export function hitTest(wall: Wall, x: number, y: number): string | null {
  if (!(x >= 0 && x <= wall.width && y >= 0 && y <= wall.height)) return null;
  for (const target of wall.targets) {
    if (pointInPolygon(x, y, target.polygon)) return target.id;
  }
  return null;
}
