"""Raster images and PNM (PBM/PGM) file support.

Rasters are immutable wrappers around 2-D numpy arrays indexed
``pixels[y, x]``. Binary rasters store 1 for foreground and 0 for
background; following the PBM convention, 1 means black ink. Grayscale
rasters hold intensities in 0..255.

Supported file formats: P1/P4 (bitmaps) and P2/P5 (graymaps) on input,
P4 on output. Headers are whitespace-separated tokens with ``#``
comments running to end of line; graymaps with a maxval other than 255
are rescaled to the full 0..255 range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParseError

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PnmParseError(ParseError):
    """Malformed PNM input; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class UnsupportedFormatError(PnmParseError):
    """The magic number names a format this reader does not handle."""


class MalformedHeaderError(PnmParseError):
    """Header tokens are missing, non-numeric, or out of range."""


class TruncatedDataError(PnmParseError):
    """The pixel payload ends before width x height pixels are read."""


def _validated(pixels, binary: bool) -> np.ndarray:
    px = np.asarray(pixels)
    if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
        raise ValueError("raster requires a 2-D grid with width, height >= 1")
    if px.dtype != np.uint8:
        if px.size and (px.min() < 0 or px.max() > 255):
            raise ValueError("raster values must lie in 0..255")
        px = px.astype(np.uint8)
    else:
        px = px.copy()
    if binary and px.max(initial=0) > 1:
        raise ValueError("binary raster values must be 0 or 1")
    px.setflags(write=False)
    return px


@dataclass(frozen=True, eq=False)
class GrayRaster:
    """Grayscale image with intensities in 0..255."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _validated(self.pixels, binary=False))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayRaster) and np.array_equal(self.pixels, other.pixels)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BinaryRaster:
    """Two-level image; 1 is foreground (ink), 0 is background."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _validated(self.pixels, binary=True))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def foreground_count(self) -> int:
        return int(self.pixels.sum())

    @classmethod
    def blank(cls, width: int, height: int) -> "BinaryRaster":
        return cls(np.zeros((height, width), dtype=np.uint8))

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryRaster) and np.array_equal(self.pixels, other.pixels)

    __hash__ = None


Raster = Union[GrayRaster, BinaryRaster]


class _TokenReader:
    """Pulls whitespace-separated header tokens, skipping # comments."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def _skip_separators(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            if data[self.pos] in _WHITESPACE:
                self.pos += 1
            elif data[self.pos] == 0x23:  # '#'
                while self.pos < n and data[self.pos] != 0x0A:
                    self.pos += 1
            else:
                return

    def next_token(self) -> tuple[bytes, int]:
        self._skip_separators()
        if self.pos >= len(self.data):
            raise MalformedHeaderError("header ended unexpectedly", self.pos)
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos] not in _WHITESPACE:
            if self.data[self.pos] == 0x23:
                break
            self.pos += 1
        return self.data[start:self.pos], start

    def next_int(self, what: str, lo: int, hi: int) -> int:
        token, start = self.next_token()
        if not token.isdigit():
            raise MalformedHeaderError(f"expected {what}, got {token!r}", start)
        value = int(token)
        if not lo <= value <= hi:
            raise MalformedHeaderError(f"{what} {value} out of range {lo}..{hi}", start)
        return value


def _begin_raw_payload(reader: _TokenReader) -> int:
    # Raw formats mandate exactly one whitespace byte after the header.
    data = reader.data
    if reader.pos >= len(data) or data[reader.pos] not in _WHITESPACE:
        raise MalformedHeaderError("expected single whitespace before raw pixel data", reader.pos)
    return reader.pos + 1


def _load_p1(reader: _TokenReader, width: int, height: int) -> BinaryRaster:
    data = reader.data
    out = np.empty(width * height, dtype=np.uint8)
    filled = 0
    pos = reader.pos
    n = len(data)
    while filled < width * height:
        while pos < n and (data[pos] in _WHITESPACE or data[pos] == 0x23):
            if data[pos] == 0x23:
                while pos < n and data[pos] != 0x0A:
                    pos += 1
            else:
                pos += 1
        if pos >= n:
            raise TruncatedDataError("bitmap pixel data ended early", pos)
        ch = data[pos]
        if ch not in (0x30, 0x31):
            raise MalformedHeaderError(f"invalid bitmap pixel {chr(ch)!r}", pos)
        out[filled] = ch - 0x30
        filled += 1
        pos += 1
    return BinaryRaster(out.reshape(height, width))


def _load_p2(reader: _TokenReader, width: int, height: int, maxval: int) -> GrayRaster:
    out = np.empty(width * height, dtype=np.int64)
    for i in range(width * height):
        try:
            token, start = reader.next_token()
        except MalformedHeaderError as exc:
            raise TruncatedDataError("graymap pixel data ended early", exc.offset) from None
        if not token.isdigit():
            raise MalformedHeaderError(f"invalid graymap pixel {token!r}", start)
        value = int(token)
        if value > maxval:
            raise MalformedHeaderError(f"pixel value {value} exceeds maxval {maxval}", start)
        out[i] = value
    return GrayRaster(_rescale(out, maxval).reshape(height, width))


def _load_p4(data: bytes, pos: int, width: int, height: int) -> BinaryRaster:
    row_bytes = (width + 7) // 8
    expected = row_bytes * height
    payload = data[pos:pos + expected]
    if len(payload) != expected:
        raise TruncatedDataError("bitmap pixel data ended early", len(data))
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes), axis=1)
    return BinaryRaster(bits[:, :width])


def _load_p5(data: bytes, pos: int, width: int, height: int, maxval: int) -> GrayRaster:
    bytes_per = 1 if maxval < 256 else 2
    expected = width * height * bytes_per
    payload = data[pos:pos + expected]
    if len(payload) != expected:
        raise TruncatedDataError("graymap pixel data ended early", len(data))
    dtype = np.uint8 if bytes_per == 1 else ">u2"
    values = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    if values.size and values.max() > maxval:
        raise MalformedHeaderError("pixel value exceeds maxval", pos)
    return GrayRaster(_rescale(values, maxval).reshape(height, width))


def _rescale(values: np.ndarray, maxval: int) -> np.ndarray:
    """Map 0..maxval onto 0..255 by round-half-up; exact in integers."""
    if maxval == 255:
        return values.astype(np.uint8)
    return ((values * 510 + maxval) // (2 * maxval)).astype(np.uint8)


def load_pnm(data: bytes) -> Raster:
    """Parse PNM bytes into a raster.

    P1/P4 yield a :class:`BinaryRaster` (1 = black = foreground); P2/P5
    yield a :class:`GrayRaster` rescaled to 0..255 when maxval differs
    from 255.
    """
    if len(data) < 2:
        raise MalformedHeaderError("missing magic number", 0)
    magic = data[:2]
    if magic in (b"P3", b"P6"):
        raise UnsupportedFormatError(f"unsupported PNM format {magic.decode()}", 0)
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise MalformedHeaderError(f"unrecognized magic {magic!r}", 0)

    reader = _TokenReader(data, 2)
    width = reader.next_int("width", 1, 1 << 30)
    height = reader.next_int("height", 1, 1 << 30)

    if magic == b"P1":
        return _load_p1(reader, width, height)
    if magic == b"P2":
        maxval = reader.next_int("maxval", 1, 65535)
        return _load_p2(reader, width, height, maxval)
    if magic == b"P4":
        return _load_p4(data, _begin_raw_payload(reader), width, height)
    maxval = reader.next_int("maxval", 1, 65535)
    return _load_p5(data, _begin_raw_payload(reader), width, height, maxval)


def save_pbm(raster: BinaryRaster) -> bytes:
    """Encode a binary raster as a packed P4 bitmap.

    ``load_pnm(save_pbm(r)) == r`` for every raster; row padding bits
    are written as zero.
    """
    header = b"P4\n%d %d\n" % (raster.width, raster.height)
    packed = np.packbits(raster.pixels, axis=1)
    return header + packed.tobytes()


def otsu_threshold(gray: GrayRaster) -> int:
    """Threshold maximizing between-class variance over the 256-bin histogram.

    The split at ``t`` puts intensities <= t in the low class. Scoring is
    done in exact integer arithmetic, so ties are broken toward the
    smallest t deterministically. A single-intensity image yields that
    intensity.
    """
    hist = np.bincount(gray.pixels.ravel(), minlength=256)
    total = int(hist.sum())
    total_sum = int(np.dot(hist, np.arange(256)))

    best_t = -1
    best_num = -1  # squared mean gap numerator
    best_den = 1
    w0 = 0
    s0 = 0
    for t in range(256):
        w0 += int(hist[t])
        s0 += t * int(hist[t])
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        s1 = total_sum - s0
        # between-class variance = (s0*w1 - s1*w0)^2 / (w0*w1*total^2);
        # the constant total^2 drops out of comparisons
        num = (s0 * w1 - s1 * w0) ** 2
        den = w0 * w1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    if best_t < 0:
        return int(np.nonzero(hist)[0][0])
    return best_t


def binarize(gray: GrayRaster, threshold: int | None = None, invert: bool = False) -> BinaryRaster:
    """Threshold a grayscale image to ink/background.

    With a fixed threshold t, pixels darker than t (< t) become
    foreground; ``invert`` flips the polarity for light-on-dark sources.
    With ``threshold=None`` the Otsu threshold t is computed and the cut
    is taken at t + 1 so the two classes split exactly as
    :func:`otsu_threshold` defines them.
    """
    if threshold is None:
        cut = otsu_threshold(gray) + 1
    else:
        if not 0 <= threshold <= 255:
            raise ValueError(f"fixed threshold {threshold} outside 0..255")
        cut = threshold
    fg = gray.pixels >= cut if invert else gray.pixels < cut
    return BinaryRaster(fg.astype(np.uint8))
