from __future__ import annotations

import math
import random
from pathlib import Path

import pytest

from taptips.engine import EngineConfig, EventKind, PointerEvent, TipPolicy
from taptips.geometry import Point, Polygon
from taptips.imagemap import (
    ActionKind,
    ContentAction,
    Guidebook,
    Room,
    Target,
    Wall,
    parse_guidebook,
)

from oracles import star_polygon

REPO = Path(__file__).resolve().parents[1]
CONTENT = REPO / "content"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def demo_map_path() -> Path:
    return CONTENT / "demo.gbk.json"


@pytest.fixture(scope="session")
def demo_guidebook(demo_map_path: Path) -> Guidebook:
    return parse_guidebook(demo_map_path.read_text(encoding="utf-8"))


def make_target(target_id: str, coords, text: str | None = None, audio: str | None = None) -> Target:
    if audio is not None:
        action = ContentAction(ActionKind.AUDIO_CLIP, audio)
    else:
        action = ContentAction(ActionKind.TEXT_DESCRIPTION, text or f"About {target_id}.")
    return Target(
        id=target_id,
        label=target_id.replace("-", " "),
        shape=Polygon(tuple(Point(x, y) for x, y in coords)),
        action=action,
    )


def single_wall_guidebook(targets, width: int = 240, height: int = 320) -> Guidebook:
    wall = Wall(id="w1", image="images/w1.png", width=width, height=height, targets=tuple(targets))
    return Guidebook(rooms=(Room(id="r1", name="Room one", walls=(wall,)),))


def square_target(target_id: str, x0: float, y0: float, size: float) -> Target:
    return make_target(
        target_id, [(x0, y0), (x0 + size, y0), (x0 + size, y0 + size), (x0, y0 + size)]
    )


def random_guidebook(rng: random.Random, max_targets: int = 10) -> Guidebook:
    rooms = []
    for ri in range(rng.randint(1, 2)):
        walls = []
        for wi in range(rng.randint(1, 3)):
            width = rng.randint(160, 400)
            height = rng.randint(160, 400)
            targets = []
            for ti in range(rng.randint(0, max_targets)):
                radius = rng.uniform(8.0, 40.0)
                cx = rng.uniform(radius + 1, width - radius - 1)
                cy = rng.uniform(radius + 1, height - radius - 1)
                coords = star_polygon(rng, rng.randint(3, 8), cx, cy, radius * 0.4, radius)
                if rng.random() < 0.25:
                    targets.append(
                        make_target(f"t{ti}", coords, audio=f"audio/t{ti}.wav")
                    )
                else:
                    targets.append(make_target(f"t{ti}", coords))
            walls.append(
                Wall(
                    id=f"r{ri}-w{wi}",
                    image=f"images/r{ri}-w{wi}.png",
                    width=width,
                    height=height,
                    targets=tuple(targets),
                )
            )
        rooms.append(Room(id=f"r{ri}", name=f"Room {ri}", walls=tuple(walls)))
    return Guidebook(rooms=tuple(rooms))


def random_pointer_events(
    rng: random.Random, guidebook: Guidebook, max_events: int = 200
) -> list[PointerEvent]:
    """A plausible gesture stream: mostly taps, some drags, strays, toggles, jumps."""
    wall_ids = [w.id for _r, w in guidebook.walls()]
    wall = guidebook.find_wall(wall_ids[0])
    events: list[PointerEvent] = []
    t = 0
    down = None
    for _ in range(rng.randint(0, max_events)):
        t += rng.randint(0, 250)
        roll = rng.random()
        if down is None:
            if roll < 0.70:
                x = rng.uniform(-5, wall.width + 5)
                y = rng.uniform(-5, wall.height + 5)
                events.append(PointerEvent.down(x, y, t))
                down = (x, y)
            elif roll < 0.80:
                events.append(PointerEvent.toggle_tip_mode(t))
            elif roll < 0.90 and wall_ids:
                wall_id = rng.choice(wall_ids)
                events.append(PointerEvent.navigate(wall_id, t))
                wall = guidebook.find_wall(wall_id)
            else:
                # stray up/move with no contact; must be ignored
                x = rng.uniform(0, wall.width)
                y = rng.uniform(0, wall.height)
                kind = EventKind.UP if rng.random() < 0.5 else EventKind.MOVE
                events.append(PointerEvent(kind, t, Point(x, y)))
        else:
            if roll < 0.55:
                jitter = rng.uniform(0, 12)
                angle = rng.uniform(0, 6.283)
                x = down[0] + jitter * math.cos(angle)
                y = down[1] + jitter * math.sin(angle)
                events.append(PointerEvent.up(x, y, t))
                down = None
            elif roll < 0.85:
                x = down[0] + rng.uniform(-20, 20)
                y = down[1] + rng.uniform(-20, 20)
                events.append(PointerEvent.move(x, y, t))
            elif roll < 0.95:
                events.append(PointerEvent.toggle_tip_mode(t))
            else:
                wall_id = rng.choice(wall_ids)
                events.append(PointerEvent.navigate(wall_id, t))
                wall = guidebook.find_wall(wall_id)
                down = None
    return events


DEFAULT_CONFIG = EngineConfig()
ALL_POLICIES = tuple(TipPolicy)
