/**
 * A live session: engine state + recorder + injected clock, one per policy
 * selection. The render loop and the export button both go through here, so
 * what the test can verify is exactly what the screen shows.
 */

import { Clock } from "./clock.js";
import {
  DEFAULT_CONFIG,
  Effect,
  EngineConfig,
  EnginePointerEvent,
  RenderFrame,
  SessionState,
  TipPolicy,
  handleEvent,
  newSession,
  renderAt,
} from "./engine.js";
import { Guidebook } from "./guidebook.js";
import { Recorder, serializeTrace } from "./trace.js";

export class LiveSession {
  private state: SessionState;
  private recorder = new Recorder();
  readonly policy: TipPolicy;

  constructor(
    guidebook: Guidebook,
    wallId: string,
    policy: TipPolicy,
    readonly clock: Clock,
    config: EngineConfig = DEFAULT_CONFIG,
  ) {
    this.policy = policy;
    this.state = newSession(guidebook, wallId, policy, config);
  }

  get wallId(): string {
    return this.state.wallId;
  }

  /** Feed one event through the engine, recording the transition. */
  dispatch(event: EnginePointerEvent): Effect[] {
    const before = this.state;
    const [after, effects] = handleEvent(before, event);
    this.state = after;
    this.recorder.observe(before, event, after, effects);
    return effects;
  }

  /** The overlay frame for the current clock reading. */
  frameNow(): RenderFrame {
    return renderAt(this.state, this.clock.now());
  }

  frameAt(t: number): RenderFrame {
    return renderAt(this.state, t);
  }

  /** The session's trace so far, as .trace.jsonl bytes. */
  exportTrace(): string {
    return serializeTrace(this.recorder.snapshot());
  }

  get hasRecords(): boolean {
    return !this.recorder.isEmpty;
  }
}
