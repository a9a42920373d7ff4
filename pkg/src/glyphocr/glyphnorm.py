"""Character cropping and size normalization.

A glyph is a character raster scaled onto a fixed square canvas: the
larger source dimension maps to the canvas size, aspect ratio is kept,
sampling is nearest neighbor (so the raster stays strictly binary), and
the scaled pattern is centered with background padding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BinaryRaster
from .segmentation import CharBox

DEFAULT_GLYPH_SIZE = 32


@dataclass(frozen=True)
class Glyph:
    """Fixed-size normalized raster for one character, with provenance."""

    raster: BinaryRaster
    source_box: CharBox

    @property
    def size(self) -> int:
        return self.raster.width


def crop(raster: BinaryRaster, box: CharBox) -> BinaryRaster:
    """Copy the sub-region covered by ``box``."""
    if box.x1 > raster.width or box.y1 > raster.height:
        raise ValueError(
            f"box ({box.x0},{box.y0},{box.x1},{box.y1}) exceeds "
            f"{raster.width}x{raster.height} raster"
        )
    return BinaryRaster(raster.pixels[box.y0:box.y1, box.x0:box.x1])


def _scaled_extent(extent: int, longest: int, size: int) -> int:
    # round(extent * size / longest), half away from zero, never below 1
    return max(1, (2 * extent * size + longest) // (2 * longest))


def normalize(raster: BinaryRaster, size: int = DEFAULT_GLYPH_SIZE,
              source_box: CharBox | None = None) -> Glyph:
    """Scale a character crop onto a size x size canvas.

    Output pixel (u, v) reads input pixel (floor(u*w/w'), floor(v*h/h'))
    where w' x h' is the aspect-preserving scaled extent; the result is
    centered via floor((size - extent) / 2) offsets. ``source_box``
    records where the crop came from and defaults to the whole input.
    """
    if size < 4:
        raise ValueError(f"glyph size {size} too small; need >= 4")
    if not raster.pixels.any():
        raise ValueError("cannot normalize a glyph with empty foreground")
    w, h = raster.width, raster.height
    longest = max(w, h)
    sw = _scaled_extent(w, longest, size)
    sh = _scaled_extent(h, longest, size)

    src_x = (np.arange(sw) * w) // sw
    src_y = (np.arange(sh) * h) // sh
    scaled = raster.pixels[src_y][:, src_x]

    canvas = np.zeros((size, size), dtype=np.uint8)
    ox = (size - sw) // 2
    oy = (size - sh) // 2
    canvas[oy:oy + sh, ox:ox + sw] = scaled

    if source_box is None:
        source_box = CharBox(0, 0, w, h)
    return Glyph(raster=BinaryRaster(canvas), source_box=source_box)
