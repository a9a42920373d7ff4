"""Skeletonization of binary rasters by iterative boundary peeling.

A pixel's eight neighbors are labeled clockwise from north:

    p9 p2 p3
    p8 p1 p4
    p7 p6 p5

with out-of-raster positions reading 0. A foreground pixel p1 is
removable when all four conditions hold against the current pass's
frozen snapshot:

    1. 2 <= B(p1) <= 6, where B counts nonzero neighbors;
    2. X(p1) == 1, where X counts 0->1 transitions in the cyclic
       sequence p2, p3, ..., p9, p2;
    3. p2*p4*p8 == 0 or X(p2) != 1;
    4. p2*p4*p6 == 0 or X(p4) != 1.

Conditions 3 and 4 evaluate X at the north and east neighbor positions
of the snapshot; they keep two-pixel-wide vertical lines from eroding
away entirely. Each pass marks every removable pixel first and clears
them simultaneously, so the result is independent of scan order; passes
repeat until one removes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BinaryRaster


@dataclass(frozen=True)
class Neighborhood:
    """The eight neighbor values around one pixel, p2=north clockwise."""

    p2: int
    p3: int
    p4: int
    p5: int
    p6: int
    p7: int
    p8: int
    p9: int

    def __post_init__(self):
        for name in ("p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"neighbor {name} must be 0 or 1")

    @classmethod
    def from_raster(cls, raster: BinaryRaster, x: int, y: int) -> "Neighborhood":
        """Read the neighborhood centered at (x, y); outside pixels are 0.

        The center itself may lie outside the raster, which happens when
        a border pixel's condition refers to a neighbor's neighborhood.
        """
        px = raster.pixels
        h, w = px.shape

        def at(cx: int, cy: int) -> int:
            return int(px[cy, cx]) if 0 <= cx < w and 0 <= cy < h else 0

        return cls(
            p2=at(x, y - 1), p3=at(x + 1, y - 1), p4=at(x + 1, y), p5=at(x + 1, y + 1),
            p6=at(x, y + 1), p7=at(x - 1, y + 1), p8=at(x - 1, y), p9=at(x - 1, y - 1),
        )

    def ring(self) -> tuple[int, ...]:
        return (self.p2, self.p3, self.p4, self.p5, self.p6, self.p7, self.p8, self.p9)


def nonzero_neighbor_count(n: Neighborhood) -> int:
    """Number of foreground pixels among the eight neighbors."""
    return sum(n.ring())


def crossing_number(n: Neighborhood) -> int:
    """Number of 0->1 transitions around the cyclic neighbor sequence."""
    ring = n.ring()
    return sum(ring[i] == 0 and ring[(i + 1) % 8] == 1 for i in range(8))


def deletable(raster: BinaryRaster, x: int, y: int) -> bool:
    """Whether the pixel at (x, y) would be removed by one thinning pass."""
    if not (0 <= x < raster.width and 0 <= y < raster.height):
        raise ValueError(f"pixel ({x}, {y}) outside {raster.width}x{raster.height} raster")
    if raster.pixels[y, x] == 0:
        return False
    n = Neighborhood.from_raster(raster, x, y)
    if not 2 <= nonzero_neighbor_count(n) <= 6:
        return False
    if crossing_number(n) != 1:
        return False
    if n.p2 and n.p4 and n.p8:
        if crossing_number(Neighborhood.from_raster(raster, x, y - 1)) == 1:
            return False
    if n.p2 and n.p4 and n.p6:
        if crossing_number(Neighborhood.from_raster(raster, x + 1, y)) == 1:
            return False
    return True


def _neighbor_planes(fg: np.ndarray) -> list[np.ndarray]:
    p = np.pad(fg, 1)
    return [
        p[:-2, 1:-1],   # p2 north
        p[:-2, 2:],     # p3 north-east
        p[1:-1, 2:],    # p4 east
        p[2:, 2:],      # p5 south-east
        p[2:, 1:-1],    # p6 south
        p[2:, :-2],     # p7 south-west
        p[1:-1, :-2],   # p8 west
        p[:-2, :-2],    # p9 north-west
    ]


def _pass_mask(fg: np.ndarray) -> np.ndarray:
    """Removable-pixel mask for one pass, all pixels judged at once."""
    ring = _neighbor_planes(fg)
    counts = np.zeros(fg.shape, dtype=np.uint8)
    for plane in ring:
        counts += plane
    crossings = np.zeros(fg.shape, dtype=np.uint8)
    for i in range(8):
        crossings += (~ring[i]) & ring[(i + 1) % 8]

    padded = np.pad(crossings, 1)
    crossings_north = padded[:-2, 1:-1]
    crossings_east = padded[1:-1, 2:]

    cond1 = (counts >= 2) & (counts <= 6)
    cond2 = crossings == 1
    cond3 = ~(ring[0] & ring[2] & ring[6]) | (crossings_north != 1)
    cond4 = ~(ring[0] & ring[2] & ring[4]) | (crossings_east != 1)
    return fg & cond1 & cond2 & cond3 & cond4


def thin_passes(raster: BinaryRaster):
    """Yield the raster after every pass that removed something."""
    fg = raster.pixels.astype(bool)
    while True:
        mask = _pass_mask(fg)
        if not mask.any():
            return
        fg = fg & ~mask
        yield BinaryRaster(fg.astype(np.uint8))


def hilditch_thin(raster: BinaryRaster, max_passes: int | None = None) -> BinaryRaster:
    """Peel the raster down to a one-pixel-wide skeleton.

    Stops when a pass removes nothing. ``max_passes`` caps the total
    number of passes, the final no-change pass included, and raises if
    convergence takes longer; it exists only to surface bugs and is
    unlimited by default.
    """
    fg = raster.pixels.astype(bool)
    passes = 0
    while True:
        if max_passes is not None and passes >= max_passes:
            raise RuntimeError(f"thinning did not converge within {max_passes} passes")
        passes += 1
        mask = _pass_mask(fg)
        if not mask.any():
            return BinaryRaster(fg.astype(np.uint8))
        fg = fg & ~mask
