/**
 * Browser demo: renders a wall, pipes live pointer input into the engine,
 * draws the fading outline overlay, shows descriptions, plays audio,
 * navigates walls, switches policies, and exports replayable traces.
 *
 * All interaction decisions live in the engine port; this file is a renderer
 * and an event pipe.
 */

import { SessionClock } from "./clock.js";
import { ALL_POLICIES, Effect, TipPolicy } from "./engine.js";
import { allWalls, findWall, Guidebook, parseGuidebook, Wall } from "./guidebook.js";
import { drawOverlay, FALLBACK_STYLE, OverlaySurface, WallStyle } from "./render.js";
import { LiveSession } from "./session.js";

const PACK_URL = new URLSearchParams(location.search).get("pack") ?? "../content/demo.gbk.json";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

class App {
  private session!: LiveSession;
  private styles = new Map<string, WallStyle>();
  private scale = 2;
  private readonly baseUrl: string;

  private readonly wallSelect = el("select", { id: "wall-select", title: "Wall" });
  private readonly policySelect = el("select", { id: "policy-select", title: "Tip policy" });
  private readonly image = el("img", { id: "wall-image", draggable: "false" });
  private readonly overlay = el("canvas", { id: "overlay" });
  private readonly descriptionPanel = el("div", { id: "description", hidden: "" });
  private readonly statusLine = el("div", { id: "status" }, "Tap the photograph.");

  constructor(private readonly book: Guidebook) {
    this.baseUrl = new URL(PACK_URL, location.href).href;
  }

  private resource(relative: string): string {
    return new URL(relative, this.baseUrl).href;
  }

  mount(root: HTMLElement): void {
    const bar = el("div", { id: "toolbar" });
    const prev = el("button", {}, "← prev wall");
    const next = el("button", {}, "next wall →");
    const exportBtn = el("button", {}, "export trace");

    for (const { room, wall } of allWalls(this.book)) {
      this.wallSelect.append(el("option", { value: wall.id }, `${room.name} / ${wall.id}`));
    }
    for (const policy of ALL_POLICIES) {
      this.policySelect.append(el("option", { value: policy }, policy));
    }
    const requested = new URLSearchParams(location.search).get("policy");
    this.policySelect.value = ALL_POLICIES.includes(requested as TipPolicy)
      ? (requested as TipPolicy)
      : "tap_tips";

    bar.append(prev, this.wallSelect, next, el("span", { class: "spacer" }), this.policySelect, exportBtn);

    const stage = el("div", { id: "stage" });
    stage.append(this.image, this.overlay);
    root.append(bar, stage, this.statusLine, this.descriptionPanel);

    prev.addEventListener("click", () => this.step(-1));
    next.addEventListener("click", () => this.step(1));
    this.wallSelect.addEventListener("change", () => this.navigateTo(this.wallSelect.value));
    // Switching policy mid-session would mix semantics; start fresh instead.
    this.policySelect.addEventListener("change", () =>
      this.startSession(this.policySelect.value as TipPolicy, this.session.wallId),
    );
    exportBtn.addEventListener("click", () => this.exportTrace());

    this.overlay.addEventListener("pointerdown", (e) => this.pointer("down", e));
    this.overlay.addEventListener("pointermove", (e) => this.pointer("move", e));
    this.overlay.addEventListener("pointerup", (e) => this.pointer("up", e));
    this.overlay.addEventListener("dblclick", () => this.dispatchToggle());
    this.overlay.style.touchAction = "none";

    void this.loadStyles();
    this.startSession(this.policySelect.value as TipPolicy, allWalls(this.book)[0]!.wall.id);
    requestAnimationFrame(() => this.tick());
  }

  private async loadStyles(): Promise<void> {
    try {
      const url = this.resource("demo.styles.json");
      const data = (await (await fetch(url)).json()) as {
        walls: Array<{ wall: string; unvisited: string; visited: string; stroke_width: number }>;
      };
      for (const entry of data.walls) {
        this.styles.set(entry.wall, {
          unvisited: entry.unvisited,
          visited: entry.visited,
          strokeWidth: entry.stroke_width,
        });
      }
    } catch {
      // No styles file: draw with the fallback colors.
    }
  }

  private wall(): Wall {
    return findWall(this.book, this.session.wallId)!;
  }

  private startSession(policy: TipPolicy, wallId: string): void {
    this.session = new LiveSession(this.book, wallId, policy, new SessionClock());
    this.descriptionPanel.hidden = true;
    this.statusLine.textContent = `policy: ${policy} — fresh session`;
    this.showWall();
  }

  private step(direction: number): void {
    const ids = allWalls(this.book).map(({ wall }) => wall.id);
    const index = ids.indexOf(this.session.wallId);
    const nextId = ids[(index + direction + ids.length) % ids.length]!;
    this.navigateTo(nextId);
  }

  private navigateTo(wallId: string): void {
    if (wallId === this.session.wallId) return;
    const effects = this.session.dispatch({
      kind: "navigate",
      t: this.session.clock.now(),
      wall: wallId,
    });
    this.applyEffects(effects);
    this.showWall();
  }

  private dispatchToggle(): void {
    const effects = this.session.dispatch({ kind: "toggle_tip_mode", t: this.session.clock.now() });
    this.applyEffects(effects);
  }

  private showWall(): void {
    const wall = this.wall();
    this.wallSelect.value = wall.id;
    this.image.src = this.resource(wall.image);
    this.image.width = wall.width * this.scale;
    this.image.height = wall.height * this.scale;
    this.overlay.width = wall.width * this.scale;
    this.overlay.height = wall.height * this.scale;
  }

  private pointer(kind: "down" | "move" | "up", e: PointerEvent): void {
    const rect = this.overlay.getBoundingClientRect();
    if (rect.width === 0 || rect.height === 0) return;
    const wall = this.wall();
    // Map display pixels back into wall pixel space.
    const x = ((e.clientX - rect.left) / rect.width) * wall.width;
    const y = ((e.clientY - rect.top) / rect.height) * wall.height;
    if (kind === "down") this.overlay.setPointerCapture(e.pointerId);
    const effects = this.session.dispatch({ kind, t: this.session.clock.now(), x, y });
    this.applyEffects(effects);
  }

  private applyEffects(effects: Effect[]): void {
    for (const effect of effects) {
      switch (effect.kind) {
        case "show_description": {
          const target = this.wall().targets.find((t) => t.id === effect.target);
          this.descriptionPanel.replaceChildren(
            el("strong", {}, target?.label ?? effect.target),
            el("p", {}, effect.text),
            el("button", {}, "dismiss"),
          );
          this.descriptionPanel.querySelector("button")!.addEventListener(
            "click",
            () => (this.descriptionPanel.hidden = true),
          );
          this.descriptionPanel.hidden = false;
          break;
        }
        case "play_audio":
          // Fire and forget; playback never feeds back into engine state.
          void new Audio(this.resource(effect.path)).play().catch(() => undefined);
          this.statusLine.textContent = `playing ${effect.path}`;
          break;
        case "tips_triggered":
          this.statusLine.textContent = "missed — showing tips";
          break;
        case "wall_changed":
          this.statusLine.textContent = `wall: ${effect.wall}`;
          break;
        case "tip_mode_changed":
          this.statusLine.textContent = `tip mode ${effect.on ? "on" : "off"} (double-click toggles)`;
          break;
        default:
          break;
      }
    }
  }

  private exportTrace(): void {
    const text = this.session.exportTrace();
    const blob = new Blob([text], { type: "application/jsonl" });
    const link = el("a", {
      href: URL.createObjectURL(blob),
      download: `session-${this.session.policy}.trace.jsonl`,
    });
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private tick(): void {
    const surface = this.overlay.getContext("2d") as unknown as OverlaySurface | null;
    if (surface !== null) {
      const wall = this.wall();
      const style = this.styles.get(wall.id) ?? FALLBACK_STYLE;
      drawOverlay(surface, this.session.frameNow(), wall, style, this.scale);
    }
    requestAnimationFrame(() => this.tick());
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  try {
    const response = await fetch(PACK_URL);
    if (!response.ok) throw new Error(`${response.status} ${response.statusText}`);
    const book = parseGuidebook(await response.text());
    new App(book).mount(root);
  } catch (err) {
    root.textContent = `failed to load guidebook pack ${PACK_URL}: ${String(err)}`;
  }
}

void boot();
