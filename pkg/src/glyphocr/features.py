"""Shape features of a normalized glyph.

Raw geometric moments M_pq = sum of x^p * y^q over foreground pixels
(x = column, y = row, zero-based from the glyph's top left) feed four
scalar shape features; row, column, and radial histograms complete the
recognition vector. On an integer pixel grid every moment is an exact
integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .glyphnorm import Glyph

DEFAULT_RINGS = 8


@dataclass(frozen=True)
class FeatureConfig:
    """Extraction parameters: glyph canvas size and radial ring count."""

    size: int = 32
    rings: int = DEFAULT_RINGS

    def __post_init__(self):
        if self.size < 4:
            raise ValueError("glyph size must be >= 4")
        if self.rings < 1:
            raise ValueError("ring count must be >= 1")

    @property
    def dimension(self) -> int:
        return 4 + 2 * self.size + self.rings


@dataclass(frozen=True)
class MomentSet:
    """Raw moments up to third order for one glyph."""

    m00: int
    m10: int
    m01: int
    m11: int
    m20: int
    m02: int
    m30: int
    m03: int


@dataclass(frozen=True)
class FeatureVector:
    """Recognition features in fixed order: f1..f4, rows, columns, rings."""

    f1: int
    f2: int
    f3: int
    f4: int
    h: tuple[int, ...]
    v: tuple[int, ...]
    radial: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return 4 + len(self.h) + len(self.v) + len(self.radial)

    def to_array(self) -> np.ndarray:
        return np.array(
            [self.f1, self.f2, self.f3, self.f4, *self.h, *self.v, *self.radial],
            dtype=np.float64,
        )


def _coords(glyph: Glyph) -> tuple[np.ndarray, np.ndarray]:
    ys, xs = np.nonzero(glyph.raster.pixels)
    return xs.astype(np.int64), ys.astype(np.int64)


def raw_moment(glyph: Glyph, p: int, q: int) -> int:
    """M_pq = sum over foreground pixels of x^p * y^q; 0 for empty glyphs."""
    if p not in (0, 1, 2, 3) or q not in (0, 1, 2, 3):
        raise ValueError("moment orders must lie in 0..3")
    xs, ys = _coords(glyph)
    return int((xs ** p * ys ** q).sum())


def moment_set(glyph: Glyph) -> MomentSet:
    """All eight raw moments of a nonempty glyph."""
    xs, ys = _coords(glyph)
    if len(xs) == 0:
        raise ValueError("glyph has empty foreground")
    return MomentSet(
        m00=len(xs),
        m10=int(xs.sum()),
        m01=int(ys.sum()),
        m11=int((xs * ys).sum()),
        m20=int((xs ** 2).sum()),
        m02=int((ys ** 2).sum()),
        m30=int((xs ** 3).sum()),
        m03=int((ys ** 3).sum()),
    )


def centroid(moments: MomentSet) -> tuple[float, float]:
    """Center of mass (M10/M00, M01/M00)."""
    if moments.m00 <= 0:
        raise ValueError("centroid undefined for an empty glyph")
    return moments.m10 / moments.m00, moments.m01 / moments.m00


def shape_features(moments: MomentSet) -> tuple[int, int, int, int]:
    """The four scalar features derived from low-order moments.

    f1 = M20 + M02 + M00, f2 = |M20 - M02| + M11, f3 = |M10 - M01|,
    f4 = M30 + M03.
    """
    return (
        moments.m20 + moments.m02 + moments.m00,
        abs(moments.m20 - moments.m02) + moments.m11,
        abs(moments.m10 - moments.m01),
        moments.m30 + moments.m03,
    )


def horizontal_histogram(glyph: Glyph) -> tuple[int, ...]:
    """Foreground count per glyph row."""
    return tuple(int(c) for c in glyph.raster.pixels.sum(axis=1))


def vertical_histogram(glyph: Glyph) -> tuple[int, ...]:
    """Foreground count per glyph column."""
    return tuple(int(c) for c in glyph.raster.pixels.sum(axis=0))


def radial_histogram(glyph: Glyph, rings: int = DEFAULT_RINGS) -> tuple[int, ...]:
    """Foreground counts in equal-width rings around the centroid.

    Ring width is d_max / rings where d_max is the distance from the
    centroid to the farthest canvas corner, so every pixel lands in a
    ring and the counts sum to M00.
    """
    if rings < 1:
        raise ValueError("ring count must be >= 1")
    xs, ys = _coords(glyph)
    if len(xs) == 0:
        raise ValueError("glyph has empty foreground")
    cx = xs.sum() / len(xs)
    cy = ys.sum() / len(ys)
    s = glyph.raster.width
    d_max = max(
        math.hypot(corner_x - cx, corner_y - cy)
        for corner_x in (0, s - 1)
        for corner_y in (0, glyph.raster.height - 1)
    )
    width = d_max / rings
    dists = np.hypot(xs - cx, ys - cy)
    idx = np.minimum(rings - 1, (dists // width).astype(np.int64))
    return tuple(int(c) for c in np.bincount(idx, minlength=rings))


def feature_vector(glyph: Glyph, config: FeatureConfig = FeatureConfig()) -> FeatureVector:
    """Full feature vector: f-block, row and column histograms, rings."""
    if glyph.raster.width != config.size or glyph.raster.height != config.size:
        raise ValueError(
            f"glyph is {glyph.raster.width}x{glyph.raster.height}, "
            f"extraction expects {config.size}x{config.size}"
        )
    f1, f2, f3, f4 = shape_features(moment_set(glyph))
    return FeatureVector(
        f1=f1, f2=f2, f3=f3, f4=f4,
        h=horizontal_histogram(glyph),
        v=vertical_histogram(glyph),
        radial=radial_histogram(glyph, config.rings),
    )
