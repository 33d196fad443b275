"""Outline color choice by perceptual popout against a wall image's colors.

A candidate color pops out to the degree it is an outlier of the image's
color distribution; that outlier-ness is measured as Mahalanobis distance in
CIELAB. The chooser picks the strongest candidate for unvisited outlines and
a clearly distinguishable second color for targets already selected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

__all__ = [
    "ColorStats",
    "Palette",
    "OutlineStyle",
    "PaletteError",
    "MIN_VISITED_DELTA_E",
    "COVARIANCE_EPSILON",
    "srgb_to_lab",
    "hex_to_rgb",
    "rgb_to_hex",
    "delta_e",
    "image_color_stats",
    "popout_score",
    "choose_outline_style",
    "load_palette",
    "default_palette",
]

MIN_VISITED_DELTA_E = 25.0
COVARIANCE_EPSILON = 1e-3

# sRGB (D65) linear RGB -> XYZ.
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_D65_WHITE = np.array([0.95047, 1.0, 1.08883])


class PaletteError(ValueError):
    """A palette is malformed or cannot satisfy the separation constraint."""


def hex_to_rgb(color: str) -> tuple[int, int, int]:
    if not (isinstance(color, str) and len(color) == 7 and color[0] == "#"):
        raise PaletteError(f"colors must look like '#RRGGBB', got {color!r}")
    try:
        return tuple(int(color[i : i + 2], 16) for i in (1, 3, 5))  # type: ignore[return-value]
    except ValueError as exc:
        raise PaletteError(f"colors must look like '#RRGGBB', got {color!r}") from exc


def rgb_to_hex(rgb) -> str:
    r, g, b = (int(c) for c in rgb)
    return f"#{r:02X}{g:02X}{b:02X}"


def srgb_to_lab(rgb) -> np.ndarray:
    """Convert sRGB samples (0..255, any leading shape) to CIELAB, D65 white."""
    rgb = np.asarray(rgb, dtype=float)
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {rgb.shape}")
    c = rgb / 255.0
    linear = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = linear @ _RGB_TO_XYZ.T
    ratio = xyz / _D65_WHITE
    delta = 6.0 / 29.0
    f = np.where(ratio > delta**3, np.cbrt(ratio), ratio / (3 * delta**2) + 4.0 / 29.0)
    lab = np.empty_like(xyz)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def delta_e(color_a: str, color_b: str) -> float:
    """CIELAB difference (Euclidean) between two '#RRGGBB' colors."""
    lab_a = srgb_to_lab(np.array(hex_to_rgb(color_a)))
    lab_b = srgb_to_lab(np.array(hex_to_rgb(color_b)))
    return float(np.linalg.norm(lab_a - lab_b))


@dataclass(frozen=True, eq=False)
class ColorStats:
    """Mean and covariance of an image's colors in CIELAB."""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.covariance, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)
        if mean.shape != (3,):
            raise ValueError(f"mean must be a 3-vector, got shape {mean.shape}")
        if cov.shape != (3, 3):
            raise ValueError(f"covariance must be 3x3, got shape {cov.shape}")
        if not np.allclose(cov, cov.T, atol=1e-9):
            raise ValueError("covariance must be symmetric")
        eigenvalues = np.linalg.eigvalsh(0.5 * (cov + cov.T))
        if eigenvalues.min() < -1e-9:
            raise ValueError("covariance must be positive semi-definite")


def image_color_stats(pixels) -> ColorStats:
    """Color statistics of sRGB samples (an N x 3 array-like of 0..255 values)."""
    samples = np.asarray(pixels, dtype=float).reshape(-1, 3)
    if samples.size == 0:
        raise ValueError("need at least one pixel sample")
    lab = srgb_to_lab(samples)
    mean = lab.mean(axis=0)
    centered = lab - mean
    covariance = centered.T @ centered / lab.shape[0]
    covariance = 0.5 * (covariance + covariance.T)
    return ColorStats(mean=mean, covariance=covariance)


def popout_score(candidate, stats: ColorStats) -> float:
    """Mahalanobis distance of a candidate color from the image's color cloud.

    Zero iff the candidate sits exactly on the mean; a small ridge term keeps
    the covariance invertible even for single-color images.
    """
    if isinstance(candidate, str):
        candidate = hex_to_rgb(candidate)
    lab = srgb_to_lab(np.asarray(candidate, dtype=float))
    diff = lab - stats.mean
    regularized = stats.covariance + COVARIANCE_EPSILON * np.eye(3)
    solved = np.linalg.solve(regularized, diff)
    return float(np.sqrt(diff @ solved))


@dataclass(frozen=True)
class Palette:
    """Ordered candidate outline colors; index order breaks score ties."""

    candidates: tuple[str, ...]

    def __post_init__(self) -> None:
        candidates = tuple(self.candidates)
        object.__setattr__(self, "candidates", candidates)
        if len(candidates) < 1:
            raise PaletteError("palette must have at least one candidate")
        normalized = []
        for color in candidates:
            hex_to_rgb(color)  # validates
            normalized.append(color.upper())
        if len(set(normalized)) != len(normalized):
            raise PaletteError("palette candidates must be distinct")
        object.__setattr__(self, "candidates", tuple(normalized))


def load_palette(document: str) -> Palette:
    """Parse a palette file: {"palette": ["#RRGGBB", ...]}."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise PaletteError(f"palette file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"palette"}:
        raise PaletteError('palette file must be an object with a single "palette" key')
    colors = data["palette"]
    if not isinstance(colors, list):
        raise PaletteError('"palette" must be a list of "#RRGGBB" strings')
    return Palette(tuple(colors))


def default_palette() -> Palette:
    """The bundled palette: 16 high-chroma hues plus black and white."""
    text = resources.files("taptips").joinpath("data/default_palette.json").read_text("utf-8")
    return load_palette(text)


@dataclass(frozen=True)
class OutlineStyle:
    """Outline colors for unvisited and already-visited targets."""

    unvisited: str
    visited: str
    stroke_width: int = 2

    def __post_init__(self) -> None:
        separation = delta_e(self.unvisited, self.visited)
        if separation < MIN_VISITED_DELTA_E:
            raise ValueError(
                f"visited/unvisited colors too close: deltaE {separation:.2f} < {MIN_VISITED_DELTA_E}"
            )


def choose_outline_style(
    stats: ColorStats,
    palette: Palette,
    min_delta_e: float = MIN_VISITED_DELTA_E,
) -> OutlineStyle:
    """Pick (unvisited, visited) colors maximizing popout.

    Over all ordered candidate pairs separated by at least ``min_delta_e``,
    maximize (unvisited score, visited score) lexicographically; ties go to
    the lowest palette index. Raises if no pair is separated enough.
    """
    colors = palette.candidates
    labs = srgb_to_lab(np.array([hex_to_rgb(c) for c in colors], dtype=float))
    scores = [popout_score(c, stats) for c in colors]

    best: tuple[int, int] | None = None
    best_key: tuple[float, float] | None = None
    for i in range(len(colors)):
        for j in range(len(colors)):
            if i == j:
                continue
            if float(np.linalg.norm(labs[i] - labs[j])) < min_delta_e:
                continue
            key = (scores[i], scores[j])
            if best_key is None or key > best_key:
                best, best_key = (i, j), key
    if best is None:
        raise PaletteError(
            f"no palette pair is separated by deltaE >= {min_delta_e}; add more distinct colors"
        )
    return OutlineStyle(unvisited=colors[best[0]], visited=colors[best[1]])
