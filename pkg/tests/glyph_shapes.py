"""Machine-drawn glyph shapes for end-to-end recognition tests.

Each shape is a set of stroke segments in unit coordinates, rendered
onto a page canvas at a chosen origin, box size, and stroke thickness.
Rendering at a different box size gives a genuinely rescaled drawing,
not a resampled raster.
"""

import numpy as np

from glyphocr import BinaryRaster

SHAPES: dict[str, list[tuple[tuple[float, float], tuple[float, float]]]] = {
    "I": [((0.5, 0.0), (0.5, 1.0))],
    "-": [((0.0, 0.5), (1.0, 0.5))],
    "+": [((0.5, 0.0), (0.5, 1.0)), ((0.0, 0.5), (1.0, 0.5))],
    "X": [((0.0, 0.0), (1.0, 1.0)), ((1.0, 0.0), (0.0, 1.0))],
    "T": [((0.0, 0.0), (1.0, 0.0)), ((0.5, 0.0), (0.5, 1.0))],
    "L": [((0.0, 0.0), (0.0, 1.0)), ((0.0, 1.0), (1.0, 1.0))],
    "U": [((0.0, 0.0), (0.0, 1.0)), ((0.0, 1.0), (1.0, 1.0)), ((1.0, 1.0), (1.0, 0.0))],
    "H": [((0.0, 0.0), (0.0, 1.0)), ((1.0, 0.0), (1.0, 1.0)), ((0.0, 0.5), (1.0, 0.5))],
    "Z": [((0.0, 0.0), (1.0, 0.0)), ((1.0, 0.0), (0.0, 1.0)), ((0.0, 1.0), (1.0, 1.0))],
    "N": [((0.0, 1.0), (0.0, 0.0)), ((0.0, 0.0), (1.0, 1.0)), ((1.0, 1.0), (1.0, 0.0))],
    "O": [((0.0, 0.0), (1.0, 0.0)), ((1.0, 0.0), (1.0, 1.0)),
          ((1.0, 1.0), (0.0, 1.0)), ((0.0, 1.0), (0.0, 0.0))],
    "V": [((0.0, 0.0), (0.5, 1.0)), ((0.5, 1.0), (1.0, 0.0))],
    "Y": [((0.0, 0.0), (0.5, 0.5)), ((1.0, 0.0), (0.5, 0.5)), ((0.5, 0.5), (0.5, 1.0))],
}


def _stamp(pixels: np.ndarray, cx: float, cy: float, r: int) -> None:
    h, w = pixels.shape
    x0 = max(0, int(round(cx)) - r)
    x1 = min(w, int(round(cx)) + r + 1)
    y0 = max(0, int(round(cy)) - r)
    y1 = min(h, int(round(cy)) + r + 1)
    pixels[y0:y1, x0:x1] = 1


def draw_shape(label: str, canvas: int = 64, origin: tuple[int, int] = (14, 14),
               box: int = 36, thickness: int = 4) -> BinaryRaster:
    """Render one shape onto a blank canvas."""
    pixels = np.zeros((canvas, canvas), dtype=np.uint8)
    r = max(0, thickness // 2)
    ox, oy = origin
    for (ux0, uy0), (ux1, uy1) in SHAPES[label]:
        x0, y0 = ox + ux0 * (box - 1), oy + uy0 * (box - 1)
        x1, y1 = ox + ux1 * (box - 1), oy + uy1 * (box - 1)
        steps = int(max(abs(x1 - x0), abs(y1 - y0))) * 2 + 1
        for t in np.linspace(0.0, 1.0, steps):
            _stamp(pixels, x0 + t * (x1 - x0), y0 + t * (y1 - y0), r)
    return BinaryRaster(pixels)


def scaled_shape(label: str, scale: float, canvas: int = 64) -> BinaryRaster:
    """Render a shape drawn at a fraction of its base size."""
    box = max(6, int(round(36 * scale)))
    thickness = max(2, int(round(4 * scale)))
    origin = ((canvas - box) // 2, (canvas - box) // 2)
    return draw_shape(label, canvas=canvas, origin=origin, box=box, thickness=thickness)
