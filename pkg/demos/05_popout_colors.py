"""Popout color choice: outline colors picked against the wall's color cloud.

Run with: python demos/05_popout_colors.py
"""

from pathlib import Path

import numpy as np
from PIL import Image

from taptips.styling import (
    choose_outline_style,
    default_palette,
    delta_e,
    image_color_stats,
    popout_score,
)

ROOT = Path(__file__).resolve().parents[1]

# The color statistics treat the wall photo as a distractor distribution in
# CIELAB; the score is plain Mahalanobis distance, so a color pops out to the
# degree the image's own colors fail to explain it.
with Image.open(ROOT / "content" / "images" / "parlor-north.png") as img:
    pixels = np.asarray(img.convert("RGB")).reshape(-1, 3)
stride = max(1, len(pixels) // 10_000)
stats = image_color_stats(pixels[::stride])

print("wall: parlor-north")
print(f"mean Lab: ({stats.mean[0]:.1f}, {stats.mean[1]:.1f}, {stats.mean[2]:.1f})")

palette = default_palette()
scored = sorted(
    ((popout_score(c, stats), c) for c in palette.candidates), reverse=True
)
print("\ncandidates by popout score:")
for score, color in scored:
    bar = "#" * int(score / scored[0][0] * 40)
    print(f"  {color}  {score:8.2f}  {bar}")

style = choose_outline_style(stats, palette)
print(f"\nchosen: unvisited={style.unvisited}  visited={style.visited}")
print(f"visited/unvisited separation: deltaE = {delta_e(style.unvisited, style.visited):.1f} (>= 25)")

# A uniform image has zero covariance; the ridge term keeps the score finite
# and the ranking sane: anything saturated beats the background itself.
flat = image_color_stats([[128, 128, 128]] * 100)
print("\nuniform mid-gray wall:")
print(f"  gray on gray scores {popout_score('#808080', flat):.3f}")
print(f"  saturated red scores {popout_score('#FF0000', flat):.1f}")
