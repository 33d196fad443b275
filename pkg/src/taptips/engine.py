"""Policy-driven interaction state machine over a guidebook.

Sessions consume timestamped pointer events and emit effects (content actions,
tip triggers); render queries answer "what outline alpha does each target have
at time t". Time never comes from a clock: every transition and query carries
its own timestamp, so identical event sequences always produce identical
effects and frames.

States are immutable snapshots. ``handle_event`` returns a new state; old
snapshots stay valid, which is what makes "query the fade curve after this
miss" trivially expressible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from .geometry import Point
from .imagemap import ActionKind, Guidebook, Target, Wall, hit_test

__all__ = [
    "TipPolicy",
    "EventKind",
    "PointerEvent",
    "EngineConfig",
    "ShowDescription",
    "PlayAudio",
    "TipsTriggered",
    "TipsInterrupted",
    "TargetVisited",
    "WallChanged",
    "TipModeChanged",
    "Effect",
    "RenderEntry",
    "RenderFrame",
    "SessionState",
    "EngineError",
    "new_session",
    "handle_event",
    "completed_tap",
    "render_at",
    "tip_alpha",
    "active_tip_window",
]


class EngineError(ValueError):
    """An event or query violates the engine's contracts."""


class TipPolicy(Enum):
    """When are target outlines visible.

    NONE never shows them; ALWAYS_ON always does; MODAL shows them while an
    explicit tip mode is toggled on; SLIDE_LIFT shows them after the pointer
    has been held down long enough and selects on lift; TAP_TIPS flashes a
    fading display after a tap that hits nothing.
    """

    NONE = "none"
    ALWAYS_ON = "always_on"
    MODAL = "modal"
    SLIDE_LIFT = "slide_lift"
    TAP_TIPS = "tap_tips"


class EventKind(Enum):
    DOWN = "down"
    MOVE = "move"
    UP = "up"
    TOGGLE_TIP_MODE = "toggle_tip_mode"
    NAVIGATE = "navigate"


_POSITIONAL = (EventKind.DOWN, EventKind.MOVE, EventKind.UP)


@dataclass(frozen=True)
class PointerEvent:
    """Timestamped input. The contact model is binary: down, moves, up."""

    kind: EventKind
    t: int
    position: Point | None = None
    wall: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 0:
            raise EngineError(f"event timestamp must be a non-negative integer, got {self.t!r}")
        if self.kind in _POSITIONAL:
            if self.position is None:
                raise EngineError(f"{self.kind.value} event needs a position")
            if self.wall is not None:
                raise EngineError(f"{self.kind.value} event must not carry a wall id")
        else:
            if self.position is not None:
                raise EngineError(f"{self.kind.value} event must not carry a position")
        if self.kind is EventKind.NAVIGATE:
            if not self.wall:
                raise EngineError("navigate event needs a wall id")
        elif self.kind is EventKind.TOGGLE_TIP_MODE and self.wall is not None:
            raise EngineError("toggle_tip_mode event must not carry a wall id")

    @classmethod
    def down(cls, x: float, y: float, t: int) -> PointerEvent:
        return cls(EventKind.DOWN, t, Point(x, y))

    @classmethod
    def move(cls, x: float, y: float, t: int) -> PointerEvent:
        return cls(EventKind.MOVE, t, Point(x, y))

    @classmethod
    def up(cls, x: float, y: float, t: int) -> PointerEvent:
        return cls(EventKind.UP, t, Point(x, y))

    @classmethod
    def toggle_tip_mode(cls, t: int) -> PointerEvent:
        return cls(EventKind.TOGGLE_TIP_MODE, t)

    @classmethod
    def navigate(cls, wall: str, t: int) -> PointerEvent:
        return cls(EventKind.NAVIGATE, t, wall=wall)


@dataclass(frozen=True)
class EngineConfig:
    """Tunable timings. Defaults keep a full tip display under 2 seconds."""

    tip_hold_ms: int = 600
    tip_fade_ms: int = 1200
    slide_hold_threshold_ms: int = 500
    tap_max_travel_px: float = 8.0
    tap_max_duration_ms: int = 400

    def __post_init__(self) -> None:
        for name in ("tip_hold_ms", "tip_fade_ms", "slide_hold_threshold_ms", "tap_max_duration_ms"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise EngineError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.tap_max_travel_px, (int, float)) or self.tap_max_travel_px < 0:
            raise EngineError(f"tap_max_travel_px must be non-negative, got {self.tap_max_travel_px!r}")

    @property
    def tip_total_ms(self) -> int:
        return self.tip_hold_ms + self.tip_fade_ms


# --- effects -----------------------------------------------------------------

@dataclass(frozen=True)
class ShowDescription:
    target: str
    text: str


@dataclass(frozen=True)
class PlayAudio:
    target: str
    path: str


@dataclass(frozen=True)
class TipsTriggered:
    t: int


@dataclass(frozen=True)
class TipsInterrupted:
    t: int


@dataclass(frozen=True)
class TargetVisited:
    target: str


@dataclass(frozen=True)
class WallChanged:
    wall: str


@dataclass(frozen=True)
class TipModeChanged:
    on: bool


Effect = Union[
    ShowDescription,
    PlayAudio,
    TipsTriggered,
    TipsInterrupted,
    TargetVisited,
    WallChanged,
    TipModeChanged,
]


# --- state -------------------------------------------------------------------

@dataclass(frozen=True)
class _PointerDown:
    position: Point
    t: int
    max_travel_px: float


@dataclass(frozen=True)
class SessionState:
    """One session's full state: an immutable snapshot between events."""

    guidebook: Guidebook
    policy: TipPolicy
    config: EngineConfig
    wall_id: str
    visited: frozenset[tuple[str, str]]
    tip_trigger_ms: int | None
    tip_mode_on: bool
    pointer_down: _PointerDown | None
    last_event_ms: int

    def wall(self) -> Wall:
        wall = self.guidebook.find_wall(self.wall_id)
        assert wall is not None  # construction and navigation both validate
        return wall


def new_session(
    guidebook: Guidebook,
    wall_id: str,
    policy: TipPolicy,
    config: EngineConfig | None = None,
) -> SessionState:
    """Fresh session on ``wall_id``: nothing visited, no tips, tip mode off."""
    if guidebook.find_wall(wall_id) is None:
        raise EngineError(f"unknown wall id {wall_id!r}")
    return SessionState(
        guidebook=guidebook,
        policy=policy,
        config=config if config is not None else EngineConfig(),
        wall_id=wall_id,
        visited=frozenset(),
        tip_trigger_ms=None,
        tip_mode_on=False,
        pointer_down=None,
        last_event_ms=-1,
    )


def _distance(a: Point, b: Point) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def completed_tap(state: SessionState, event: PointerEvent) -> Point | None:
    """The up position, if this event ends a gesture that classifies as a tap.

    A tap is a down..up pair whose total travel (max distance from the down
    position at any sampled point of the gesture) stays within
    ``tap_max_travel_px`` and whose duration stays within
    ``tap_max_duration_ms``. Anything else is a drag and selects nothing
    under the tap-driven policies.
    """
    if event.kind is not EventKind.UP or state.pointer_down is None:
        return None
    down = state.pointer_down
    assert event.position is not None
    travel = max(down.max_travel_px, _distance(down.position, event.position))
    duration = event.t - down.t
    cfg = state.config
    if travel <= cfg.tap_max_travel_px and duration <= cfg.tap_max_duration_ms:
        return event.position
    return None


def _tips_live(state: SessionState, t: int) -> bool:
    """Does the active tip window still have nonzero alpha at time t."""
    if state.policy is not TipPolicy.TAP_TIPS or state.tip_trigger_ms is None:
        return False
    return t < state.tip_trigger_ms + state.config.tip_total_ms


def _select(
    state: SessionState, target: Target, effects: list[Effect]
) -> SessionState:
    """Dispatch a target's content action, marking it visited the first time."""
    action = target.action
    if action.kind is ActionKind.TEXT_DESCRIPTION:
        effects.append(ShowDescription(target.id, action.payload))
    else:
        effects.append(PlayAudio(target.id, action.payload))
    key = (state.wall_id, target.id)
    if key not in state.visited:
        effects.append(TargetVisited(target.id))
        state = replace(state, visited=state.visited | {key})
    return state


def handle_event(state: SessionState, event: PointerEvent) -> tuple[SessionState, list[Effect]]:
    """Advance the session by one event; returns the new state and its effects.

    Events must arrive in non-decreasing timestamp order. Stray events (an up
    or move with no preceding down, a tip-mode toggle outside the modal
    policy) are ignored rather than punished.
    """
    if event.t < state.last_event_ms:
        raise EngineError(
            f"out-of-order event: t={event.t} after t={state.last_event_ms}"
        )
    state = replace(state, last_event_ms=event.t)
    kind = event.kind

    if kind is EventKind.DOWN:
        assert event.position is not None
        return replace(state, pointer_down=_PointerDown(event.position, event.t, 0.0)), []

    if kind is EventKind.MOVE:
        if state.pointer_down is None:
            return state, []
        assert event.position is not None
        down = state.pointer_down
        travel = max(down.max_travel_px, _distance(down.position, event.position))
        return replace(state, pointer_down=replace(down, max_travel_px=travel)), []

    if kind is EventKind.TOGGLE_TIP_MODE:
        if state.policy is not TipPolicy.MODAL:
            return state, []
        now_on = not state.tip_mode_on
        return replace(state, tip_mode_on=now_on), [TipModeChanged(now_on)]

    if kind is EventKind.NAVIGATE:
        assert event.wall is not None
        if state.guidebook.find_wall(event.wall) is None:
            raise EngineError(f"unknown wall id {event.wall!r}")
        effects: list[Effect] = []
        if _tips_live(state, event.t):
            effects.append(TipsInterrupted(event.t))
        effects.append(WallChanged(event.wall))
        state = replace(
            state, wall_id=event.wall, tip_trigger_ms=None, pointer_down=None
        )
        return state, effects

    # UP
    if state.pointer_down is None:
        return state, []
    assert event.position is not None
    tap_position = completed_tap(state, event)
    after_up = replace(state, pointer_down=None)
    wall = state.wall()

    if state.policy is TipPolicy.SLIDE_LIFT:
        # Lift-to-do: whatever is under the pointer on lift gets selected,
        # however long or far the slide went.
        target_id = hit_test(wall, event.position)
        if target_id is None:
            return after_up, []
        effects = []
        return _select(after_up, wall.target(target_id), effects), effects

    if tap_position is None:
        return after_up, []
    target_id = hit_test(wall, tap_position)
    effects = []

    if target_id is None:
        if state.policy is TipPolicy.TAP_TIPS:
            # The miss is the trigger; a second miss restarts the timeline.
            if _tips_live(state, event.t):
                effects.append(TipsInterrupted(event.t))
            effects.append(TipsTriggered(event.t))
            return replace(after_up, tip_trigger_ms=event.t), effects
        return after_up, []

    if state.policy is TipPolicy.TAP_TIPS:
        if _tips_live(state, event.t):
            effects.append(TipsInterrupted(event.t))
        after_up = replace(after_up, tip_trigger_ms=None)
    return _select(after_up, wall.target(target_id), effects), effects


# --- render queries ----------------------------------------------------------

@dataclass(frozen=True)
class RenderEntry:
    target: str
    alpha: float
    visited: bool


@dataclass(frozen=True)
class RenderFrame:
    t: int
    entries: tuple[RenderEntry, ...]


def tip_alpha(config: EngineConfig, elapsed_ms: int | float) -> float:
    """Outline alpha ``elapsed_ms`` after a tip trigger.

    Full opacity through the hold phase, then a linear fade to zero.
    """
    if elapsed_ms < 0:
        raise EngineError(f"elapsed time must be non-negative, got {elapsed_ms!r}")
    if elapsed_ms < config.tip_hold_ms:
        return 1.0
    fade_elapsed = elapsed_ms - config.tip_hold_ms
    if fade_elapsed >= config.tip_fade_ms:
        return 0.0
    return 1.0 - fade_elapsed / config.tip_fade_ms


def _policy_alpha(state: SessionState, t: int) -> float:
    policy = state.policy
    if policy is TipPolicy.NONE:
        return 0.0
    if policy is TipPolicy.ALWAYS_ON:
        return 1.0
    if policy is TipPolicy.MODAL:
        return 1.0 if state.tip_mode_on else 0.0
    if policy is TipPolicy.SLIDE_LIFT:
        down = state.pointer_down
        if down is not None and t - down.t >= state.config.slide_hold_threshold_ms:
            return 1.0
        return 0.0
    # TAP_TIPS
    if state.tip_trigger_ms is None:
        return 0.0
    if t < state.tip_trigger_ms:
        raise EngineError(
            f"render time {t} precedes the active tip trigger at {state.tip_trigger_ms}"
        )
    return tip_alpha(state.config, t - state.tip_trigger_ms)


def render_at(state: SessionState, t: int) -> RenderFrame:
    """Pure query: outline alpha and visited flag for every current-wall target."""
    alpha = _policy_alpha(state, t)
    entries = tuple(
        RenderEntry(
            target=target.id,
            alpha=alpha,
            visited=(state.wall_id, target.id) in state.visited,
        )
        for target in state.wall().targets
    )
    return RenderFrame(t=t, entries=entries)


def active_tip_window(
    state: SessionState, at_ms: int | None = None
) -> tuple[int, int] | None:
    """The (start, end) interval of the current tap-tips display, if one is live.

    With ``at_ms`` given, a window whose end is at or before ``at_ms`` has
    already faded out on its own and reports as gone; no dismissing event is
    ever needed.
    """
    if state.policy is not TipPolicy.TAP_TIPS or state.tip_trigger_ms is None:
        return None
    start = state.tip_trigger_ms
    end = start + state.config.tip_total_ms
    if at_ms is not None and at_ms >= end:
        return None
    return (start, end)
