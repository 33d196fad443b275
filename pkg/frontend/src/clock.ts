/** Injectable clocks: the engine only ever sees integer milliseconds. */

export interface Clock {
  /** Milliseconds since the session epoch, as an integer. */
  now(): number;
}

/** Monotonic wall clock anchored at construction time. */
export class SessionClock implements Clock {
  private readonly origin: number;
  private last = 0;

  constructor(performanceNow: () => number = () => performance.now()) {
    this.nowFn = performanceNow;
    this.origin = performanceNow();
  }

  private readonly nowFn: () => number;

  now(): number {
    // Engine timestamps must be non-decreasing integers.
    const t = Math.max(this.last, Math.round(this.nowFn() - this.origin));
    this.last = t;
    return t;
  }
}

/** Hand-cranked clock for tests. */
export class FakeClock implements Clock {
  constructor(private t = 0) {}

  now(): number {
    return this.t;
  }

  set(t: number): void {
    this.t = t;
  }

  advance(dt: number): void {
    this.t += dt;
  }
}
