"""Hit-testing tour: polygons, the even-odd rule, and batch rasterization.

Run with: python demos/01_hit_testing.py
"""

import numpy as np

from taptips.geometry import Point, bounding_box, point_in_polygon, points_in_polygon, polygon

# A target can be any simple polygon. This one is a square with a slot cut
# into its top edge, so it is concave: the slot belongs to the outside.
notched = polygon((0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (4, 4), (4, 10), (0, 10))

print("A 10x10 square with a notch cut from (4,4) up to the top edge.\n")
for p in [(2, 2), (5, 5), (5, 2), (8, 8), (12, 5)]:
    inside = point_in_polygon(Point(*p), notched)
    print(f"  tap at {p}: {'HIT ' if inside else 'miss'}")

low, high = bounding_box(notched)
print(f"\nbounding box: ({low.x}, {low.y}) .. ({high.x}, {high.y})")

# The boundary counts as inside: a tap landing exactly on an outline is
# generous to the user.
print("on-edge tap at (0, 5):", point_in_polygon(Point(0, 5), notched))

# The vectorized form rasterizes a whole grid in one call. Sampling at
# half-pixel offsets shows the notch clearly.
xs, ys = np.meshgrid(np.arange(12) + 0.5, np.arange(12) + 0.5)
grid = points_in_polygon(xs, ys, notched)
print("\nrasterized at 0.5 px cell centers ('#' = inside):")
for row in reversed(range(12)):  # y grows upward
    print("  " + "".join("#" if grid[row, col] else "." for col in range(12)))
