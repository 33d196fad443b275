import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { Guidebook, parseGuidebook } from "../src/guidebook.js";
import { OverlaySurface } from "../src/render.js";

export const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
export const DEMO_MAP = join(REPO_ROOT, "content", "demo.gbk.json");

export function loadDemoBook(): Guidebook {
  return parseGuidebook(readFileSync(DEMO_MAP, "utf-8"));
}

export interface StrokeCall {
  alpha: number;
  color: string;
  target?: string;
}

/** Records exactly what would be painted; `alpha` is captured at stroke time. */
export class FakeSurface implements OverlaySurface {
  lineWidth = 0;
  strokeStyle = "";
  globalAlpha = 1;
  lineJoin = "";
  strokes: StrokeCall[] = [];
  cleared = 0;

  clearRect(): void {
    this.cleared += 1;
  }
  beginPath(): void {}
  moveTo(): void {}
  lineTo(): void {}
  closePath(): void {}
  stroke(): void {
    this.strokes.push({ alpha: this.globalAlpha, color: this.strokeStyle });
  }
}
