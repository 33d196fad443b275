"""Build the bundled demo content pack from scratch.

Produces everything under content/: wall images, audio clips, the guidebook
document, the recorded pointer-log fixtures, the policy-matrix frame script,
and the per-wall outline styles JSON. Everything is deterministic, so
re-running this script reproduces the committed files byte for byte.
"""

from __future__ import annotations

import math
import wave
from pathlib import Path

from PIL import Image, ImageDraw

from taptips.cli import main as cli_main
from taptips.geometry import Point, Polygon, point_in_polygon
from taptips.imagemap import parse_guidebook
from taptips.tracelog import RecordKind, TipPolicy, TraceRecord, serialize_trace

ROOT = Path(__file__).resolve().parents[1]
CONTENT = ROOT / "content"

WALL_W, WALL_H = 320, 240


def interior_point(coords: list[list[float]]) -> tuple[float, float]:
    """A tap point inside the polygon (vertex mean works for our convex-ish shapes)."""
    xs = [c[0] for c in coords]
    ys = [c[1] for c in coords]
    p = (sum(xs) / len(xs), sum(ys) / len(ys))
    poly = Polygon(tuple(Point(x, y) for x, y in coords))
    assert point_in_polygon(Point(*p), poly), f"computed point {p} not inside polygon"
    return p


# Target layout per wall: id, label, polygon, fill color, action.
PARLOR_NORTH = [
    ("wood-panel", "Carved wood panel", [[18, 96], [92, 96], [92, 216], [18, 216]],
     (118, 86, 56), {"kind": "text_description",
                     "text": "Oak panelling carved in 1781 by an apprentice whose initials hide in the lower scrollwork."}),
    ("portrait", "Portrait of the founder", [[116, 30], [176, 30], [176, 108], [116, 108]],
     (64, 74, 112), {"kind": "text_description",
                     "text": "The founder, painted at sixty. The chipped frame corner dates from the 1906 earthquake."}),
    ("doorway", "Servants' doorway", [[214, 60], [286, 52], [292, 226], [208, 226]],
     (92, 66, 44), {"kind": "text_description",
                    "text": "A servants' doorway, papered over to keep staff invisible to guests."}),
    ("mirror", "Gilt mirror", [[120, 128], [172, 128], [172, 206], [120, 206]],
     (150, 166, 178), {"kind": "text_description",
                       "text": "Venetian glass; the waviness is original. Families judged wealth by mirror size."}),
    ("sconce", "Gas sconce", [[36, 28], [66, 44], [66, 80], [36, 64]],
     (190, 160, 70), {"kind": "text_description",
                      "text": "A gas sconce converted to electricity in 1912, one of the first in the county."}),
    ("mantel-clock", "Mantel clock", [[230, 14], [272, 14], [272, 44], [230, 44]],
     (60, 54, 48), {"kind": "audio_clip", "path": "audio/mantel-clock.wav"}),
]

PARLOR_WEST = [
    ("tapestry", "Flemish tapestry", [[30, 30], [150, 30], [150, 150], [30, 150]],
     (96, 84, 68), {"kind": "text_description",
                    "text": "A Flemish hunting tapestry, hung to cover damp plaster rather than for art's sake."}),
    ("armchair", "Wing armchair", [[190, 120], [270, 120], [282, 220], [178, 220]],
     (110, 60, 58), {"kind": "text_description",
                     "text": "The lady of the house read here each evening; the left arm is worn bare."}),
    ("music-box", "Swiss music box", [[196, 48], [262, 48], [262, 86], [196, 86]],
     (140, 116, 62), {"kind": "audio_clip", "path": "audio/music-box.wav"}),
]

STUDY_EAST = [
    ("writing-desk", "Writing desk", [[48, 110], [200, 110], [200, 214], [48, 214]],
     (104, 76, 48), {"kind": "text_description",
                     "text": "Letters found in this desk's hidden drawer settled the estate dispute of 1889."}),
    ("globe", "Terrestrial globe", [[236, 90], [296, 120], [296, 180], [236, 210], [216, 150]],
     (82, 96, 82), {"kind": "audio_clip", "path": "audio/globe.wav"}),
]

WALLS = [
    ("parlor", "The Parlor", "parlor-north", PARLOR_NORTH, (201, 192, 177)),
    ("parlor", "The Parlor", "parlor-west", PARLOR_WEST, (196, 186, 168)),
    ("study", "The Study", "study-east", STUDY_EAST, (184, 178, 160)),
]


def draw_wall(path: Path, targets: list, base: tuple[int, int, int]) -> None:
    image = Image.new("RGB", (WALL_W, WALL_H), base)
    draw = ImageDraw.Draw(image)
    # Soft vertical shading so the "photograph" is not one flat color.
    for y in range(WALL_H):
        shade = int(18 * y / WALL_H)
        draw.line(
            [(0, y), (WALL_W, y)],
            fill=(base[0] - shade, base[1] - shade, base[2] - shade),
        )
    draw.rectangle([0, WALL_H - 18, WALL_W, WALL_H], fill=(120, 104, 84))  # skirting board
    for _tid, _label, coords, fill, _action in targets:
        pts = [tuple(c) for c in coords]
        outline = tuple(max(0, c - 36) for c in fill)
        draw.polygon(pts, fill=fill, outline=outline)
    image.save(path, format="PNG")


def write_tone(path: Path, frequency: float, seconds: float = 0.4) -> None:
    rate = 8000
    count = int(rate * seconds)
    samples = bytes(
        int(127 + 100 * math.sin(2 * math.pi * frequency * i / rate) * (1 - i / count))
        for i in range(count)
    )
    with wave.open(str(path), "wb") as handle:
        handle.setnchannels(1)
        handle.setsampwidth(1)
        handle.setframerate(rate)
        handle.writeframes(samples)


def guidebook_doc() -> dict:
    rooms: dict[str, dict] = {}
    for room_id, room_name, wall_id, targets, _base in WALLS:
        room = rooms.setdefault(room_id, {"id": room_id, "name": room_name, "walls": []})
        room["walls"].append(
            {
                "id": wall_id,
                "image": f"images/{wall_id}.png",
                "width": WALL_W,
                "height": WALL_H,
                "targets": [
                    {"id": tid, "label": label, "shape": {"polygon": coords}, "action": action}
                    for tid, label, coords, _fill, action in targets
                ],
            }
        )
    return {"version": 1, "rooms": list(rooms.values())}


def tap(records: list, x: float, y: float, t: int, wall: str) -> None:
    for kind, at in ((RecordKind.DOWN, t), (RecordKind.UP, t + 80)):
        records.append(
            TraceRecord(t=at, kind=kind, wall=wall, policy=TipPolicy.TAP_TIPS, x=x, y=y)
        )


def main() -> None:
    import json

    for sub in ("images", "audio", "traces", "scripts"):
        (CONTENT / sub).mkdir(parents=True, exist_ok=True)

    print("drawing wall images ...")
    for _room_id, _room_name, wall_id, targets, base in WALLS:
        draw_wall(CONTENT / "images" / f"{wall_id}.png", targets, base)

    print("writing audio clips ...")
    write_tone(CONTENT / "audio" / "mantel-clock.wav", 440.0)
    write_tone(CONTENT / "audio" / "music-box.wav", 660.0)
    write_tone(CONTENT / "audio" / "globe.wav", 330.0)

    print("writing guidebook ...")
    doc = json.dumps(guidebook_doc(), indent=2, ensure_ascii=False) + "\n"
    (CONTENT / "demo.gbk.json").write_text(doc, encoding="utf-8")
    parse_guidebook(doc)  # sanity: the pack must validate

    wall = "parlor-north"
    centers = {tid: interior_point(coords) for tid, _l, coords, _f, _a in PARLOR_NORTH}
    miss = (106.0, 120.0)  # gap between the panel and the mirror
    poly_all = [Polygon(tuple(Point(*c) for c in coords)) for _t, _l, coords, _f, _a in PARLOR_NORTH]
    assert not any(point_in_polygon(Point(*miss), poly) for poly in poly_all)

    print("writing trace fixtures ...")
    # One look at the tips, then six targets selected in a row.
    records: list[TraceRecord] = []
    tap(records, *miss, 0, wall)
    for i, tid in enumerate(centers):
        x, y = centers[tid]
        tap(records, x, y, 1000 * (i + 1), wall)
    (CONTENT / "traces" / "six_streak.trace.jsonl").write_text(
        serialize_trace(records), encoding="utf-8"
    )

    # Tips viewed before every single selection: checklist behavior.
    records = []
    for i, tid in enumerate(["portrait", "mirror", "doorway"]):
        tap(records, *miss, 2000 * i, wall)
        x, y = centers[tid]
        tap(records, x, y, 2000 * i + 1000, wall)
    (CONTENT / "traces" / "checklist.trace.jsonl").write_text(
        serialize_trace(records), encoding="utf-8"
    )

    # One script that makes all five policies show their visibility contracts:
    # a quick missed tap, a mode toggle, a long slide, a second toggle, a hit.
    hit = centers["portrait"]
    records = []
    records.append(TraceRecord(t=0, kind=RecordKind.DOWN, wall=wall, policy=TipPolicy.TAP_TIPS, x=miss[0], y=miss[1]))
    records.append(TraceRecord(t=50, kind=RecordKind.UP, wall=wall, policy=TipPolicy.TAP_TIPS, x=miss[0], y=miss[1]))
    records.append(TraceRecord(t=2000, kind=RecordKind.MODE_TOGGLE, wall=wall, policy=TipPolicy.TAP_TIPS))
    records.append(TraceRecord(t=2500, kind=RecordKind.DOWN, wall=wall, policy=TipPolicy.TAP_TIPS, x=miss[0], y=miss[1]))
    records.append(TraceRecord(t=2700, kind=RecordKind.MOVE, wall=wall, policy=TipPolicy.TAP_TIPS, x=miss[0] + 30, y=miss[1]))
    records.append(TraceRecord(t=3400, kind=RecordKind.UP, wall=wall, policy=TipPolicy.TAP_TIPS, x=miss[0], y=miss[1] + 2))
    records.append(TraceRecord(t=4000, kind=RecordKind.MODE_TOGGLE, wall=wall, policy=TipPolicy.TAP_TIPS))
    records.append(TraceRecord(t=4200, kind=RecordKind.DOWN, wall=wall, policy=TipPolicy.TAP_TIPS, x=hit[0], y=hit[1]))
    records.append(TraceRecord(t=4300, kind=RecordKind.UP, wall=wall, policy=TipPolicy.TAP_TIPS, x=hit[0], y=hit[1]))
    (CONTENT / "scripts" / "policy_matrix.trace.jsonl").write_text(
        serialize_trace(records), encoding="utf-8"
    )

    print("choosing outline styles ...")
    status = cli_main(
        ["style", "--map", str(CONTENT / "demo.gbk.json"), "--out", str(CONTENT / "demo.styles.json")]
    )
    assert status == 0

    print(f"done; content pack written under {CONTENT}")


if __name__ == "__main__":
    main()
