"""Replayable interaction traces and the usability metrics computed from them.

A trace is JSON Lines: one record per line, fields in a fixed order
(t, kind, x, y, wall, target, policy) with absent fields omitted, which makes
serialization byte-stable. Pointer-kind records (down/move/up/navigate/
mode_toggle) are sufficient to replay a session; the remaining kinds are
derived and are reproduced exactly by ``replay``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .engine import (
    Effect,
    EngineConfig,
    EventKind,
    PlayAudio,
    PointerEvent,
    SessionState,
    ShowDescription,
    TipPolicy,
    TipsInterrupted,
    TipsTriggered,
    completed_tap,
    handle_event,
    new_session,
)
from .geometry import Point
from .imagemap import Guidebook, hit_test

__all__ = [
    "RecordKind",
    "TraceRecord",
    "TraceMetrics",
    "TraceError",
    "Recorder",
    "POINTER_KINDS",
    "parse_trace",
    "serialize_trace",
    "compute_metrics",
    "pointer_records",
    "event_of",
    "replay",
]


class TraceError(ValueError):
    """A trace line or record sequence violates the format."""


class RecordKind(Enum):
    DOWN = "down"
    MOVE = "move"
    UP = "up"
    TAP_HIT = "tap_hit"
    TAP_MISS = "tap_miss"
    TIPS_SHOWN = "tips_shown"
    TIPS_FADED = "tips_faded"
    TIPS_INTERRUPTED = "tips_interrupted"
    NAVIGATE = "navigate"
    MODE_TOGGLE = "mode_toggle"
    ACTION_DISPATCHED = "action_dispatched"


POINTER_KINDS = frozenset(
    {
        RecordKind.DOWN,
        RecordKind.MOVE,
        RecordKind.UP,
        RecordKind.NAVIGATE,
        RecordKind.MODE_TOGGLE,
    }
)

_POSITIONAL_KINDS = frozenset(
    {RecordKind.DOWN, RecordKind.MOVE, RecordKind.UP, RecordKind.TAP_HIT, RecordKind.TAP_MISS}
)
_TARGET_KINDS = frozenset({RecordKind.TAP_HIT, RecordKind.ACTION_DISPATCHED})


@dataclass(frozen=True)
class TraceRecord:
    """One logged interaction event."""

    t: int
    kind: RecordKind
    wall: str
    policy: TipPolicy
    x: float | None = None
    y: float | None = None
    target: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 0:
            raise TraceError(f"record timestamp must be a non-negative integer, got {self.t!r}")
        if not self.wall:
            raise TraceError("record needs a wall id")
        has_position = self.x is not None or self.y is not None
        if self.kind in _POSITIONAL_KINDS:
            if self.x is None or self.y is None:
                raise TraceError(f"{self.kind.value} record needs x and y")
            object.__setattr__(self, "x", float(self.x))
            object.__setattr__(self, "y", float(self.y))
        elif has_position:
            raise TraceError(f"{self.kind.value} record must not carry a position")
        if self.kind in _TARGET_KINDS:
            if not self.target:
                raise TraceError(f"{self.kind.value} record needs a target id")
        elif self.target is not None:
            raise TraceError(f"{self.kind.value} record must not carry a target id")


# --- serialization -----------------------------------------------------------

def _record_to_obj(record: TraceRecord) -> dict:
    obj: dict = {"t": record.t, "kind": record.kind.value}
    if record.x is not None:
        obj["x"] = record.x
        obj["y"] = record.y
    obj["wall"] = record.wall
    if record.target is not None:
        obj["target"] = record.target
    obj["policy"] = record.policy.value
    return obj


def serialize_trace(records: list[TraceRecord]) -> str:
    """Render records as JSON Lines; an empty trace is an empty string."""
    return "".join(json.dumps(_record_to_obj(r), separators=(",", ":")) + "\n" for r in records)


_ALLOWED_KEYS = ("t", "kind", "x", "y", "wall", "target", "policy")


def parse_trace(text: str) -> list[TraceRecord]:
    """Parse and validate a JSON Lines trace; errors name the offending line."""
    records: list[TraceRecord] = []
    previous_t: int | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceError(f"line {lineno}: malformed record: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise TraceError(f"line {lineno}: record must be a JSON object")
        for key in obj:
            if key not in _ALLOWED_KEYS:
                raise TraceError(f"line {lineno}: unknown key {key!r}")
        for key in ("t", "kind", "wall", "policy"):
            if key not in obj:
                raise TraceError(f"line {lineno}: missing required key {key!r}")
        try:
            kind = RecordKind(obj["kind"])
        except ValueError:
            raise TraceError(f"line {lineno}: unknown record kind {obj['kind']!r}") from None
        try:
            policy = TipPolicy(obj["policy"])
        except ValueError:
            raise TraceError(f"line {lineno}: unknown policy {obj['policy']!r}") from None
        for key in ("x", "y"):
            if key in obj and (isinstance(obj[key], bool) or not isinstance(obj[key], (int, float))):
                raise TraceError(f"line {lineno}: {key!r} must be a number")
        try:
            record = TraceRecord(
                t=obj["t"],
                kind=kind,
                wall=obj["wall"] if isinstance(obj["wall"], str) else "",
                policy=policy,
                x=obj.get("x"),
                y=obj.get("y"),
                target=obj.get("target"),
            )
        except TraceError as exc:
            raise TraceError(f"line {lineno}: {exc}") from None
        if previous_t is not None and record.t < previous_t:
            raise TraceError(
                f"line {lineno}: timestamp {record.t} decreases below {previous_t}"
            )
        previous_t = record.t
        records.append(record)
    return records


# --- metrics -----------------------------------------------------------------

@dataclass(frozen=True)
class TraceMetrics:
    taps: int
    hits: int
    misses: int
    tips_shown: int
    max_hit_streak: int
    discoveries: int
    tips_per_discovery: float
    checklist_alternations: int

    def as_dict(self) -> dict:
        return {
            "taps": self.taps,
            "hits": self.hits,
            "misses": self.misses,
            "tips_shown": self.tips_shown,
            "max_hit_streak": self.max_hit_streak,
            "discoveries": self.discoveries,
            "tips_per_discovery": self.tips_per_discovery,
            "checklist_alternations": self.checklist_alternations,
        }


def compute_metrics(records: list[TraceRecord]) -> TraceMetrics:
    """Derive the usability quantities a gesture log supports.

    A hit streak is broken by a missed tap or by a tip display (a streak means
    targets were found without needing the tips again). Checklist behavior is
    counted as adjacent show-then-select pairs in the subsequence of
    tips_shown and tap_hit records.
    """
    hits = 0
    misses = 0
    tips_shown = 0
    streak = 0
    max_streak = 0
    discovered: set[tuple[str, str]] = set()
    show_select = [r.kind for r in records if r.kind in (RecordKind.TIPS_SHOWN, RecordKind.TAP_HIT)]
    for record in records:
        if record.kind is RecordKind.TAP_HIT:
            hits += 1
            streak += 1
            max_streak = max(max_streak, streak)
            assert record.target is not None
            discovered.add((record.wall, record.target))
        elif record.kind is RecordKind.TAP_MISS:
            misses += 1
            streak = 0
        elif record.kind is RecordKind.TIPS_SHOWN:
            tips_shown += 1
            streak = 0
    alternations = sum(
        1
        for a, b in zip(show_select, show_select[1:])
        if a is RecordKind.TIPS_SHOWN and b is RecordKind.TAP_HIT
    )
    discoveries = len(discovered)
    return TraceMetrics(
        taps=hits + misses,
        hits=hits,
        misses=misses,
        tips_shown=tips_shown,
        max_hit_streak=max_streak,
        discoveries=discoveries,
        tips_per_discovery=tips_shown / max(discoveries, 1),
        checklist_alternations=alternations,
    )


# --- recording ---------------------------------------------------------------

class Recorder:
    """Builds the full trace of one session, one engine transition at a time.

    The fade-out of an uninterrupted tip window is computable the moment the
    window opens, so a pending tips_faded record is created eagerly and
    spliced into the stream once the timeline passes it (or dropped when the
    window is interrupted). Call :meth:`finish` to flush it at session end.
    """

    def __init__(self) -> None:
        self._records: list[TraceRecord] = []
        self._pending_faded: TraceRecord | None = None

    @property
    def records(self) -> list[TraceRecord]:
        return list(self._records)

    def observe(
        self,
        state_before: SessionState,
        event: PointerEvent,
        state_after: SessionState,
        effects: list[Effect],
    ) -> list[TraceRecord]:
        """Append the records for one transition; returns just the new ones."""
        appended: list[TraceRecord] = []
        policy = state_before.policy
        if self._pending_faded is not None and event.t >= self._pending_faded.t:
            appended.append(self._pending_faded)
            self._pending_faded = None
        wall_before = state_before.wall_id

        if event.kind is not EventKind.NAVIGATE:
            kind = {
                EventKind.DOWN: RecordKind.DOWN,
                EventKind.MOVE: RecordKind.MOVE,
                EventKind.UP: RecordKind.UP,
                EventKind.TOGGLE_TIP_MODE: RecordKind.MODE_TOGGLE,
            }[event.kind]
            position = event.position
            appended.append(
                TraceRecord(
                    t=event.t,
                    kind=kind,
                    wall=wall_before,
                    policy=policy,
                    x=None if position is None else position.x,
                    y=None if position is None else position.y,
                )
            )
            tap_position = completed_tap(state_before, event)
            if tap_position is not None:
                target_id = hit_test(state_before.wall(), tap_position)
                appended.append(
                    TraceRecord(
                        t=event.t,
                        kind=RecordKind.TAP_MISS if target_id is None else RecordKind.TAP_HIT,
                        wall=wall_before,
                        policy=policy,
                        x=tap_position.x,
                        y=tap_position.y,
                        target=target_id,
                    )
                )

        for effect in effects:
            if isinstance(effect, TipsTriggered):
                appended.append(
                    TraceRecord(t=effect.t, kind=RecordKind.TIPS_SHOWN, wall=wall_before, policy=policy)
                )
                self._pending_faded = TraceRecord(
                    t=effect.t + state_before.config.tip_total_ms,
                    kind=RecordKind.TIPS_FADED,
                    wall=wall_before,
                    policy=policy,
                )
            elif isinstance(effect, TipsInterrupted):
                appended.append(
                    TraceRecord(
                        t=effect.t, kind=RecordKind.TIPS_INTERRUPTED, wall=wall_before, policy=policy
                    )
                )
                self._pending_faded = None
            elif isinstance(effect, (ShowDescription, PlayAudio)):
                appended.append(
                    TraceRecord(
                        t=event.t,
                        kind=RecordKind.ACTION_DISPATCHED,
                        wall=wall_before,
                        policy=policy,
                        target=effect.target,
                    )
                )

        if event.kind is EventKind.NAVIGATE:
            # The interruption (recorded above) belongs to the old wall; the
            # navigate record itself carries the destination.
            appended.append(
                TraceRecord(
                    t=event.t, kind=RecordKind.NAVIGATE, wall=state_after.wall_id, policy=policy
                )
            )

        self._records.extend(appended)
        return appended

    def finish(self) -> list[TraceRecord]:
        """Flush any pending fade-out record and return the complete trace."""
        if self._pending_faded is not None:
            self._records.append(self._pending_faded)
            self._pending_faded = None
        return list(self._records)


# --- replay ------------------------------------------------------------------

def pointer_records(records: list[TraceRecord]) -> list[TraceRecord]:
    """The replayable subset of a trace: raw gestures, no derived records."""
    return [r for r in records if r.kind in POINTER_KINDS]


def event_of(record: TraceRecord) -> PointerEvent:
    """Convert a pointer-kind record back into the engine event it logged."""
    if record.kind is RecordKind.NAVIGATE:
        return PointerEvent.navigate(record.wall, record.t)
    if record.kind is RecordKind.MODE_TOGGLE:
        return PointerEvent.toggle_tip_mode(record.t)
    kind = {
        RecordKind.DOWN: EventKind.DOWN,
        RecordKind.MOVE: EventKind.MOVE,
        RecordKind.UP: EventKind.UP,
    }[record.kind]
    assert record.x is not None and record.y is not None
    return PointerEvent(kind, record.t, Point(record.x, record.y))


def replay(
    guidebook: Guidebook,
    policy: TipPolicy,
    config: EngineConfig,
    records: list[TraceRecord],
    start_wall: str | None = None,
) -> tuple[list[Effect], list[TraceRecord]]:
    """Feed pointer records through a fresh session; returns (effects, full trace).

    The starting wall defaults to the wall of the first record (a session's
    records all carry the wall they happened on), falling back to the
    guidebook's first wall for an empty trace.
    """
    for record in records:
        if record.kind not in POINTER_KINDS:
            raise TraceError(
                f"replay input must contain only pointer records, found {record.kind.value!r}"
            )
    if start_wall is None:
        if records:
            start_wall = records[0].wall
        else:
            start_wall = next(iter(guidebook.walls()))[1].id
    state = new_session(guidebook, start_wall, policy, config)
    recorder = Recorder()
    effects: list[Effect] = []
    for record in records:
        event = event_of(record)
        state_before = state
        state, step_effects = handle_event(state, event)
        recorder.observe(state_before, event, state, step_effects)
        effects.extend(step_effects)
    return effects, recorder.finish()
