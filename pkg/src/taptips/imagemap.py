"""Guidebook data model: rooms of walls of polygonal targets, plus the on-disk format.

A guidebook file (``*.gbk.json``) is strict UTF-8 JSON: unknown keys are
rejected so authoring typos surface early. Parsing validates every structural
invariant; parsed values are immutable and safe to share between threads.
"""

from __future__ import annotations

import json
import posixpath
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator

from .geometry import Point, Polygon, point_in_polygon

__all__ = [
    "ActionKind",
    "ContentAction",
    "Target",
    "Wall",
    "Room",
    "Guidebook",
    "GuidebookError",
    "GuidebookParseError",
    "parse_guidebook",
    "serialize_guidebook",
    "hit_test",
]

FORMAT_VERSION = 1


class GuidebookError(ValueError):
    """A guidebook document or value violates the format or its invariants."""


class GuidebookParseError(GuidebookError):
    """The document is not even well-formed JSON; carries line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line} column {column}: {message}")
        self.line = line
        self.column = column


class ActionKind(Enum):
    TEXT_DESCRIPTION = "text_description"
    AUDIO_CLIP = "audio_clip"


@dataclass(frozen=True)
class ContentAction:
    """What selecting a target does: show a text description or play an audio clip."""

    kind: ActionKind
    payload: str

    def __post_init__(self) -> None:
        if self.kind is ActionKind.TEXT_DESCRIPTION:
            if not self.payload.strip():
                raise GuidebookError("text_description action needs non-empty text")
        elif self.kind is ActionKind.AUDIO_CLIP:
            if not self.payload:
                raise GuidebookError("audio_clip action needs a non-empty path")
            if posixpath.isabs(self.payload):
                raise GuidebookError(f"audio_clip path must be relative, got {self.payload!r}")
        else:  # pragma: no cover - enum is closed
            raise GuidebookError(f"unknown action kind {self.kind!r}")


@dataclass(frozen=True)
class Target:
    """A hot region of a wall: tapping inside its shape dispatches its action."""

    id: str
    label: str
    shape: Polygon
    action: ContentAction

    def __post_init__(self) -> None:
        if not self.id:
            raise GuidebookError("target id must be non-empty")


@dataclass(frozen=True)
class Wall:
    """One imagemap: a background image with an ordered list of targets."""

    id: str
    image: str
    width: int
    height: int
    targets: tuple[Target, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.id:
            raise GuidebookError("wall id must be non-empty")
        if not self.image:
            raise GuidebookError(f"wall {self.id!r}: missing image reference")
        for dim, name in ((self.width, "width"), (self.height, "height")):
            if not isinstance(dim, int) or isinstance(dim, bool) or dim <= 0:
                raise GuidebookError(f"wall {self.id!r}: {name} must be a positive integer, got {dim!r}")
        seen: set[str] = set()
        for target in self.targets:
            if target.id in seen:
                raise GuidebookError(f"wall {self.id!r}: duplicate target id {target.id!r}")
            seen.add(target.id)
            for v in target.shape.vertices:
                if not (0 <= v.x <= self.width and 0 <= v.y <= self.height):
                    raise GuidebookError(
                        f"wall {self.id!r}: target {target.id!r} shape vertex ({v.x}, {v.y}) "
                        f"outside wall bounds {self.width}x{self.height}"
                    )

    def target(self, target_id: str) -> Target:
        for t in self.targets:
            if t.id == target_id:
                return t
        raise KeyError(target_id)


@dataclass(frozen=True)
class Room:
    id: str
    name: str
    walls: tuple[Wall, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "walls", tuple(self.walls))
        if not self.id:
            raise GuidebookError("room id must be non-empty")
        if len(self.walls) < 1:
            raise GuidebookError(f"room {self.id!r}: needs at least one wall")
        seen: set[str] = set()
        for wall in self.walls:
            if wall.id in seen:
                raise GuidebookError(f"room {self.id!r}: duplicate wall id {wall.id!r}")
            seen.add(wall.id)


@dataclass(frozen=True)
class Guidebook:
    """The whole content pack a session runs against."""

    rooms: tuple[Room, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rooms", tuple(self.rooms))
        if len(self.rooms) < 1:
            raise GuidebookError("guidebook needs at least one room")
        seen: set[str] = set()
        for room in self.rooms:
            if room.id in seen:
                raise GuidebookError(f"duplicate room id {room.id!r}")
            seen.add(room.id)

    def walls(self) -> Iterator[tuple[Room, Wall]]:
        for room in self.rooms:
            for wall in room.walls:
                yield room, wall

    def find_wall(self, wall_id: str) -> Wall | None:
        """First wall with this id, scanning rooms in document order."""
        for _room, wall in self.walls():
            if wall.id == wall_id:
                return wall
        return None


def hit_test(wall: Wall, p: Point) -> str | None:
    """Id of the first target (in document order) whose shape contains ``p``.

    Points outside the wall bounds simply miss; they are not an error.
    """
    if not (0 <= p.x <= wall.width and 0 <= p.y <= wall.height):
        return None
    for target in wall.targets:
        if point_in_polygon(p, target.shape):
            return target.id
    return None


# --- parsing -----------------------------------------------------------------

def _expect_object(value: Any, ctx: str) -> dict:
    if not isinstance(value, dict):
        raise GuidebookError(f"{ctx}: expected an object, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, allowed: tuple[str, ...], required: tuple[str, ...], ctx: str) -> None:
    for key in obj:
        if key not in allowed:
            raise GuidebookError(f"{ctx}: unknown key {key!r}")
    for key in required:
        if key not in obj:
            raise GuidebookError(f"{ctx}: missing required key {key!r}")


def _string(obj: dict, key: str, ctx: str) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise GuidebookError(f"{ctx}: {key!r} must be a string, got {type(value).__name__}")
    return value


def _coord(value: Any, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GuidebookError(f"{ctx}: coordinate must be a number, got {value!r}")
    return float(value)


def _parse_action(value: Any, ctx: str) -> ContentAction:
    obj = _expect_object(value, ctx)
    if "kind" not in obj:
        raise GuidebookError(f"{ctx}: missing required key 'kind'")
    kind = _string(obj, "kind", ctx)
    if kind == "text_description":
        _check_keys(obj, ("kind", "text"), ("kind", "text"), ctx)
        return ContentAction(ActionKind.TEXT_DESCRIPTION, _string(obj, "text", ctx))
    if kind == "audio_clip":
        _check_keys(obj, ("kind", "path"), ("kind", "path"), ctx)
        return ContentAction(ActionKind.AUDIO_CLIP, _string(obj, "path", ctx))
    raise GuidebookError(f"{ctx}: unknown action kind {kind!r}")


def _parse_shape(value: Any, ctx: str) -> Polygon:
    obj = _expect_object(value, ctx)
    _check_keys(obj, ("polygon",), ("polygon",), ctx)
    coords = obj["polygon"]
    if not isinstance(coords, list):
        raise GuidebookError(f"{ctx}: 'polygon' must be a list of [x, y] pairs")
    points = []
    for pair in coords:
        if not isinstance(pair, list) or len(pair) != 2:
            raise GuidebookError(f"{ctx}: each polygon vertex must be an [x, y] pair, got {pair!r}")
        points.append(Point(_coord(pair[0], ctx), _coord(pair[1], ctx)))
    try:
        return Polygon(tuple(points))
    except ValueError as exc:
        raise GuidebookError(f"{ctx}: {exc}") from exc


def _parse_target(value: Any, ctx: str) -> Target:
    obj = _expect_object(value, ctx)
    _check_keys(obj, ("id", "label", "shape", "action"), ("id", "label", "shape", "action"), ctx)
    target_id = _string(obj, "id", ctx)
    ctx = f"{ctx} {target_id!r}"
    return Target(
        id=target_id,
        label=_string(obj, "label", ctx),
        shape=_parse_shape(obj["shape"], f"{ctx} shape"),
        action=_parse_action(obj["action"], f"{ctx} action"),
    )


def _parse_wall(value: Any, ctx: str) -> Wall:
    obj = _expect_object(value, ctx)
    _check_keys(
        obj,
        ("id", "image", "width", "height", "targets"),
        ("id", "image", "width", "height", "targets"),
        ctx,
    )
    wall_id = _string(obj, "id", ctx)
    ctx = f"{ctx} {wall_id!r}"
    dims = {}
    for key in ("width", "height"):
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, int):
            raise GuidebookError(f"{ctx}: {key!r} must be an integer, got {v!r}")
        dims[key] = v
    if not isinstance(obj["targets"], list):
        raise GuidebookError(f"{ctx}: 'targets' must be a list")
    targets = tuple(
        _parse_target(t, f"{ctx} target") for t in obj["targets"]
    )
    return Wall(
        id=wall_id,
        image=_string(obj, "image", ctx),
        width=dims["width"],
        height=dims["height"],
        targets=targets,
    )


def _parse_room(value: Any, ctx: str) -> Room:
    obj = _expect_object(value, ctx)
    _check_keys(obj, ("id", "name", "walls"), ("id", "name", "walls"), ctx)
    room_id = _string(obj, "id", ctx)
    ctx = f"{ctx} {room_id!r}"
    if not isinstance(obj["walls"], list):
        raise GuidebookError(f"{ctx}: 'walls' must be a list")
    return Room(
        id=room_id,
        name=_string(obj, "name", ctx),
        walls=tuple(_parse_wall(w, f"{ctx} wall") for w in obj["walls"]),
    )


def parse_guidebook(document: str) -> Guidebook:
    """Parse and validate one guidebook document. Target order is preserved."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GuidebookParseError(exc.msg, exc.lineno, exc.colno) from exc
    obj = _expect_object(data, "document")
    _check_keys(obj, ("version", "rooms"), ("version", "rooms"), "document")
    if obj["version"] != FORMAT_VERSION:
        raise GuidebookError(f"unsupported format version {obj['version']!r} (expected {FORMAT_VERSION})")
    if not isinstance(obj["rooms"], list):
        raise GuidebookError("document: 'rooms' must be a list")
    return Guidebook(rooms=tuple(_parse_room(r, "room") for r in obj["rooms"]))


# --- serialization -----------------------------------------------------------

def _num(value: float) -> int | float:
    return int(value) if value.is_integer() else value


def _action_json(action: ContentAction) -> dict:
    if action.kind is ActionKind.TEXT_DESCRIPTION:
        return {"kind": "text_description", "text": action.payload}
    return {"kind": "audio_clip", "path": action.payload}


def serialize_guidebook(guidebook: Guidebook) -> str:
    """Render a guidebook back to its canonical document form.

    ``parse_guidebook`` maps the output back to an equal Guidebook, and the
    output is byte-stable under a parse/serialize round trip.
    """
    doc = {
        "version": FORMAT_VERSION,
        "rooms": [
            {
                "id": room.id,
                "name": room.name,
                "walls": [
                    {
                        "id": wall.id,
                        "image": wall.image,
                        "width": wall.width,
                        "height": wall.height,
                        "targets": [
                            {
                                "id": target.id,
                                "label": target.label,
                                "shape": {
                                    "polygon": [[_num(v.x), _num(v.y)] for v in target.shape.vertices]
                                },
                                "action": _action_json(target.action),
                            }
                            for target in wall.targets
                        ],
                    }
                    for wall in room.walls
                ],
            }
            for room in guidebook.rooms
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
