import numpy as np
import pytest

from glyphocr import BinaryRaster, CharBox, Glyph, GrayRaster


def binary(rows: list[str]) -> BinaryRaster:
    """Build a raster from strings; '1' or '#' is foreground."""
    grid = [[1 if ch in "1#" else 0 for ch in row] for row in rows]
    return BinaryRaster(np.array(grid, dtype=np.uint8))


def gray(rows: list[list[int]]) -> GrayRaster:
    return GrayRaster(np.array(rows, dtype=np.uint8))


def stamp_disc(pixels: np.ndarray, cx: int, cy: int, r: int) -> None:
    h, w = pixels.shape
    yy, xx = np.mgrid[0:h, 0:w]
    pixels[(xx - cx) ** 2 + (yy - cy) ** 2 <= r * r] = 1


def stamp_stroke(pixels: np.ndarray, p0, p1, r: int) -> None:
    steps = int(max(abs(p1[0] - p0[0]), abs(p1[1] - p0[1]))) * 2 + 1
    for t in np.linspace(0.0, 1.0, steps):
        cx = int(round(p0[0] + t * (p1[0] - p0[0])))
        cy = int(round(p0[1] + t * (p1[1] - p0[1])))
        stamp_disc(pixels, cx, cy, r)


def random_blob(rng: np.random.Generator, size: int = 32) -> BinaryRaster:
    """Organic test blob: a few discs and thick strokes, possibly overlapping."""
    pixels = np.zeros((size, size), dtype=np.uint8)
    for _ in range(int(rng.integers(1, 4))):
        cx, cy = (int(v) for v in rng.integers(2, size - 2, 2))
        stamp_disc(pixels, cx, cy, int(rng.integers(1, 5)))
    for _ in range(int(rng.integers(0, 3))):
        p0 = tuple(int(v) for v in rng.integers(2, size - 2, 2))
        p1 = tuple(int(v) for v in rng.integers(2, size - 2, 2))
        stamp_stroke(pixels, p0, p1, int(rng.integers(1, 3)))
    return BinaryRaster(pixels)


def random_glyph(rng: np.random.Generator, size: int = 32, density: float = 0.3) -> Glyph:
    """Unstructured random glyph; guaranteed at least one foreground pixel."""
    pixels = (rng.random((size, size)) < density).astype(np.uint8)
    if not pixels.any():
        pixels[int(rng.integers(size)), int(rng.integers(size))] = 1
    return Glyph(raster=BinaryRaster(pixels), source_box=CharBox(0, 0, size, size))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
