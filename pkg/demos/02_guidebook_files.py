"""Guidebook files: parse the demo pack, walk its structure, prove the round trip.

Run with: python demos/02_guidebook_files.py
"""

from pathlib import Path

from taptips.geometry import Point
from taptips.imagemap import GuidebookError, hit_test, parse_guidebook, serialize_guidebook

CONTENT = Path(__file__).resolve().parents[1] / "content"

text = (CONTENT / "demo.gbk.json").read_text(encoding="utf-8")
book = parse_guidebook(text)

for room in book.rooms:
    print(f"room {room.id!r} ({room.name})")
    for wall in room.walls:
        print(f"  wall {wall.id!r}: {wall.width}x{wall.height}, image {wall.image}")
        for target in wall.targets:
            kind = target.action.kind.value
            print(f"    target {target.id!r} [{kind}] - {target.label}")

# Hit-testing is first-match in document order; a point in no target misses.
wall = book.rooms[0].walls[0]
print("\ntap (55, 156):", hit_test(wall, Point(55, 156)))
print("tap (106, 120):", hit_test(wall, Point(106, 120)))

# Serialization is canonical: parse . serialize is the identity, and the
# output re-serializes byte for byte.
again = serialize_guidebook(book)
assert parse_guidebook(again) == book
assert serialize_guidebook(parse_guidebook(again)) == again
print("\nround trip: parse(serialize(book)) == book and bytes are stable")

# The parser is strict so authoring typos surface immediately.
try:
    parse_guidebook(text.replace('"label"', '"lable"', 1))
except GuidebookError as err:
    print(f"a typo is caught early: {err}")
