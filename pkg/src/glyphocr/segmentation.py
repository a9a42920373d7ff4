"""Page decomposition into text lines, words, and character boxes.

Everything here is driven by projection profiles: per-row foreground
counts locate text lines (maximal nonzero runs), the profile's first
derivative locates the two baselines inside each line, and per-column
counts inside a line band separate characters. Characters are only split
where fully blank columns separate them; touching characters stay one
box.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, replace

import numpy as np

from .raster import BinaryRaster

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class Profile:
    """Foreground counts per row (horizontal) or per column (vertical)."""

    counts: tuple[int, ...]
    axis: str

    def __post_init__(self):
        if self.axis not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"unknown profile axis {self.axis!r}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise ValueError("profile counts must be non-negative")


@dataclass(frozen=True)
class Band:
    """Half-open row interval [start, end) of a text line."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"band [{self.start}, {self.end}) is empty or negative")

    @property
    def height(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class TextLine:
    """A line band plus the two baseline rows found inside it."""

    band: Band
    upper_baseline: int
    lower_baseline: int

    def __post_init__(self):
        if not self.band.start <= self.upper_baseline <= self.lower_baseline < self.band.end:
            raise ValueError("baselines must be ordered and lie inside the band")


@dataclass(frozen=True)
class CharBox:
    """Half-open pixel box [x0, x1) x [y0, y1) for one character."""

    x0: int
    y0: int
    x1: int
    y1: int
    line_index: int = 0
    word_index: int = 0

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0 or self.x0 >= self.x1 or self.y0 >= self.y1:
            raise ValueError(f"degenerate box ({self.x0},{self.y0},{self.x1},{self.y1})")

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0


def horizontal_profile(raster: BinaryRaster) -> Profile:
    """Count foreground pixels in every row."""
    return Profile(tuple(int(c) for c in raster.pixels.sum(axis=1)), HORIZONTAL)


def vertical_profile(raster: BinaryRaster, band: Band) -> Profile:
    """Count foreground pixels per column, restricted to the band's rows."""
    if band.end > raster.height:
        raise ValueError(f"band [{band.start}, {band.end}) exceeds raster height {raster.height}")
    counts = raster.pixels[band.start:band.end, :].sum(axis=0)
    return Profile(tuple(int(c) for c in counts), VERTICAL)


def _nonzero_runs(counts: tuple[int, ...]) -> list[tuple[int, int]]:
    runs = []
    start = None
    for i, c in enumerate(counts):
        if c and start is None:
            start = i
        elif not c and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(counts)))
    return runs


def find_line_bands(profile: Profile, min_height: int = 2) -> list[Band]:
    """Maximal nonzero runs of a horizontal profile, top to bottom.

    Runs shorter than ``min_height`` rows are dropped as speckle noise.
    """
    if profile.axis != HORIZONTAL:
        raise ValueError("line bands require a horizontal profile")
    return [Band(s, e) for s, e in _nonzero_runs(profile.counts) if e - s >= min_height]


def find_baselines(profile: Profile, band: Band) -> tuple[int, int]:
    """Locate the upper and lower baselines of one line band.

    The upper baseline is the row in the band's top half with the largest
    first-derivative rise into it (counts[y] - counts[y-1]); the lower
    baseline is the row in the bottom half with the largest fall out of
    it (counts[y+1] - counts[y]). Ties resolve toward the band's vertical
    center, then toward the smaller row. A height-1 band degenerates to
    (start, start).
    """
    if band.end > len(profile.counts):
        raise ValueError("band exceeds profile length")
    if band.height == 1:
        return band.start, band.start

    counts = profile.counts

    def at(i: int) -> int:
        return counts[i] if 0 <= i < len(counts) else 0

    center = (band.start + band.end - 1) / 2.0

    def pick(rows: range, key, best) -> int:
        scored = [(key(r), abs(r - center), r) for r in rows]
        target = best(s[0] for s in scored)
        return min((s for s in scored if s[0] == target), key=lambda s: (s[1], s[2]))[2]

    half = band.height // 2
    top = range(band.start, band.start + band.height - half)
    bottom = range(band.start + half, band.end)
    upper = pick(top, lambda r: at(r) - at(r - 1), max)
    lower = pick(bottom, lambda r: at(r + 1) - at(r), min)
    return upper, lower


def tight_bounding_box(raster: BinaryRaster, box: CharBox) -> CharBox:
    """Shrink a box to the smallest one containing all its foreground."""
    if box.x1 > raster.width or box.y1 > raster.height:
        raise ValueError("box exceeds raster bounds")
    region = raster.pixels[box.y0:box.y1, box.x0:box.x1]
    ys, xs = np.nonzero(region)
    if len(ys) == 0:
        raise ValueError(
            f"box ({box.x0},{box.y0},{box.x1},{box.y1}) has no foreground; segmentation bug"
        )
    return replace(
        box,
        x0=box.x0 + int(xs.min()),
        x1=box.x0 + int(xs.max()) + 1,
        y0=box.y0 + int(ys.min()),
        y1=box.y0 + int(ys.max()) + 1,
    )


def segment_characters(raster: BinaryRaster, band: Band, line_index: int = 0) -> list[CharBox]:
    """Cut one line band into per-character boxes, left to right.

    Maximal nonzero column runs of the band's vertical profile become
    boxes, each tightened to its foreground. Characters are separated
    only by fully blank columns; touching characters remain one box.
    """
    profile = vertical_profile(raster, band)
    boxes = []
    for x0, x1 in _nonzero_runs(profile.counts):
        raw = CharBox(x0, band.start, x1, band.end, line_index=line_index)
        boxes.append(tight_bounding_box(raster, raw))
    return boxes


def group_words(boxes: list[CharBox], gap_factor: float = 2.0) -> list[CharBox]:
    """Assign word indices by splitting at unusually wide gaps.

    A word break falls before box i+1 when the gap to box i is at least
    ``gap_factor`` times the median of all gaps on the line. A single box
    forms word 0.
    """
    if gap_factor <= 0:
        raise ValueError("gap_factor must be positive")
    if len(boxes) <= 1:
        return [replace(b, word_index=0) for b in boxes]
    gaps = [boxes[i + 1].x0 - boxes[i].x1 for i in range(len(boxes) - 1)]
    cutoff = gap_factor * statistics.median(gaps)
    out = [replace(boxes[0], word_index=0)]
    word = 0
    for box, gap in zip(boxes[1:], gaps):
        if gap >= cutoff:
            word += 1
        out.append(replace(box, word_index=word))
    return out
