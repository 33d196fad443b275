/**
 * Trace recording in the engine's JSON Lines format.
 *
 * Field order is fixed as (t, kind, x, y, wall, target, policy) with absent
 * fields omitted, so exports are deterministic and the CLI replays them
 * directly: `taptips replay --map pack.gbk.json --log exported.trace.jsonl`.
 */

import {
  completedTap,
  Effect,
  EnginePointerEvent,
  SessionState,
  TipPolicy,
} from "./engine.js";
import { currentWall } from "./engine.js";
import { hitTest } from "./guidebook.js";

export type RecordKind =
  | "down"
  | "move"
  | "up"
  | "tap_hit"
  | "tap_miss"
  | "tips_shown"
  | "tips_faded"
  | "tips_interrupted"
  | "navigate"
  | "mode_toggle"
  | "action_dispatched";

export interface TraceRecord {
  t: number;
  kind: RecordKind;
  wall: string;
  policy: TipPolicy;
  x?: number;
  y?: number;
  target?: string;
}

export function serializeRecord(record: TraceRecord): string {
  const obj: Record<string, unknown> = { t: record.t, kind: record.kind };
  if (record.x !== undefined) {
    obj.x = record.x;
    obj.y = record.y;
  }
  obj.wall = record.wall;
  if (record.target !== undefined) obj.target = record.target;
  obj.policy = record.policy;
  return JSON.stringify(obj);
}

export function serializeTrace(records: readonly TraceRecord[]): string {
  return records.map((r) => serializeRecord(r) + "\n").join("");
}

const EVENT_RECORD_KIND: Record<string, RecordKind> = {
  down: "down",
  move: "move",
  up: "up",
  toggle_tip_mode: "mode_toggle",
};

/**
 * Builds the full trace of one session, transition by transition. The fade of
 * an uninterrupted tip window is computable when the window opens, so it is
 * held as a pending record and spliced in once the timeline passes it.
 */
export class Recorder {
  private records: TraceRecord[] = [];
  private pendingFaded: TraceRecord | null = null;

  observe(
    stateBefore: SessionState,
    event: EnginePointerEvent,
    stateAfter: SessionState,
    effects: readonly Effect[],
  ): void {
    const policy = stateBefore.policy;
    if (this.pendingFaded !== null && event.t >= this.pendingFaded.t) {
      this.records.push(this.pendingFaded);
      this.pendingFaded = null;
    }
    const wallBefore = stateBefore.wallId;

    if (event.kind !== "navigate") {
      const kind = EVENT_RECORD_KIND[event.kind]!;
      const record: TraceRecord = { t: event.t, kind, wall: wallBefore, policy };
      if (event.x !== undefined) {
        record.x = event.x;
        record.y = event.y;
      }
      this.records.push(record);
      const tap = completedTap(stateBefore, event);
      if (tap !== null) {
        const targetId = hitTest(currentWall(stateBefore), tap.x, tap.y);
        const tapRecord: TraceRecord = {
          t: event.t,
          kind: targetId === null ? "tap_miss" : "tap_hit",
          wall: wallBefore,
          policy,
          x: tap.x,
          y: tap.y,
        };
        if (targetId !== null) tapRecord.target = targetId;
        this.records.push(tapRecord);
      }
    }

    for (const effect of effects) {
      switch (effect.kind) {
        case "tips_triggered": {
          this.records.push({ t: effect.t, kind: "tips_shown", wall: wallBefore, policy });
          const total = stateBefore.config.tipHoldMs + stateBefore.config.tipFadeMs;
          this.pendingFaded = { t: effect.t + total, kind: "tips_faded", wall: wallBefore, policy };
          break;
        }
        case "tips_interrupted":
          this.records.push({ t: effect.t, kind: "tips_interrupted", wall: wallBefore, policy });
          this.pendingFaded = null;
          break;
        case "show_description":
        case "play_audio":
          this.records.push({
            t: event.t,
            kind: "action_dispatched",
            wall: wallBefore,
            policy,
            target: effect.target,
          });
          break;
        default:
          break; // visited/wall/mode changes ride on their event records
      }
    }

    if (event.kind === "navigate") {
      this.records.push({ t: event.t, kind: "navigate", wall: stateAfter.wallId, policy });
    }
  }

  /**
   * The trace as of now, including the pending fade-out (which will happen
   * at its computed time unless a later event interrupts it). Pure: exporting
   * twice without new events yields identical bytes.
   */
  snapshot(): TraceRecord[] {
    const records = [...this.records];
    if (this.pendingFaded !== null) records.push(this.pendingFaded);
    return records;
  }

  get isEmpty(): boolean {
    return this.records.length === 0 && this.pendingFaded === null;
  }
}
