"""End-to-end page processing shared by the CLI and tests.

The recognition path per character box is: tight bounding box -> crop ->
normalize -> thin -> features -> classify. Tight-cropping before
normalization is what makes recognition invariant to where a character
sits on the page.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .classifier import Match, TemplateStore, classify
from .features import FeatureConfig
from .glyphnorm import Glyph, crop, normalize
from .raster import BinaryRaster, GrayRaster, Raster, binarize
from .segmentation import (
    Band,
    CharBox,
    Profile,
    TextLine,
    find_baselines,
    find_line_bands,
    group_words,
    horizontal_profile,
    segment_characters,
    tight_bounding_box,
)
from .thinning import hilditch_thin


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the full page-to-transcript pipeline."""

    threshold: int | None = None  # None selects Otsu
    invert: bool = False
    min_line_height: int = 2
    gap_factor: float = 2.0
    size: int = 32
    rings: int = 8
    k: int = 1
    reject_dist: float | None = None
    char_sep: str = ""
    debug_dir: Path | None = None

    def __post_init__(self):
        if self.size < 4:
            raise ValueError("glyph size must be >= 4")
        if self.rings < 1:
            raise ValueError("ring count must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.gap_factor <= 0:
            raise ValueError("gap factor must be positive")
        if self.min_line_height < 1:
            raise ValueError("minimum line height must be >= 1")
        if self.threshold is not None and not 0 <= self.threshold <= 255:
            raise ValueError("fixed threshold must lie in 0..255")

    @property
    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(size=self.size, rings=self.rings)


@dataclass(frozen=True)
class SegmentedLine:
    """One text line with its word-grouped character boxes."""

    index: int
    line: TextLine
    boxes: tuple[CharBox, ...]


@dataclass(frozen=True)
class RecognizedChar:
    box: CharBox
    glyph: Glyph
    match: Match
    label: str


@dataclass(frozen=True)
class RecognizedLine:
    segmented: SegmentedLine
    words: tuple[tuple[RecognizedChar, ...], ...]


def ensure_binary(raster: Raster, config: PipelineConfig) -> BinaryRaster:
    """Binarize grayscale input; pass binary input through."""
    if isinstance(raster, GrayRaster):
        return binarize(raster, threshold=config.threshold, invert=config.invert)
    return raster


def segment_page(page: BinaryRaster, config: PipelineConfig = PipelineConfig()) -> list[SegmentedLine]:
    """Split a binary page into lines with word-grouped character boxes."""
    profile = horizontal_profile(page)
    out = []
    for index, band in enumerate(find_line_bands(profile, config.min_line_height)):
        upper, lower = find_baselines(profile, band)
        boxes = segment_characters(page, band, line_index=index)
        boxes = group_words(boxes, config.gap_factor)
        out.append(SegmentedLine(
            index=index,
            line=TextLine(band=band, upper_baseline=upper, lower_baseline=lower),
            boxes=tuple(boxes),
        ))
    return out


def prepare_glyph(page: BinaryRaster, box: CharBox, size: int) -> tuple[Glyph, Glyph]:
    """Extract a character: tight box, crop, normalize, thin.

    Returns (normalized, thinned) glyphs; features run on the thinned
    one, the normalized one is kept for debug dumps.
    """
    tight = tight_bounding_box(page, box)
    normalized = normalize(crop(page, tight), size=size, source_box=tight)
    skeleton = Glyph(raster=hilditch_thin(normalized.raster), source_box=tight)
    return normalized, skeleton


def recognize_page(page: BinaryRaster, store: TemplateStore,
                   config: PipelineConfig = PipelineConfig()) -> list[RecognizedLine]:
    """Run the full pipeline over every character box of a page."""
    if store.config.size != config.size or store.config.rings != config.rings:
        raise ValueError(
            f"store was built with size {store.config.size} rings {store.config.rings}, "
            f"pipeline is configured for size {config.size} rings {config.rings}"
        )
    recognized = []
    for segmented in segment_page(page, config):
        words: list[list[RecognizedChar]] = []
        for box in segmented.boxes:
            normalized, skeleton = prepare_glyph(page, box, config.size)
            match = classify(store, skeleton, k=config.k)
            label = match.label
            if config.reject_dist is not None and match.distance > config.reject_dist:
                label = "?"
            if box.word_index >= len(words):
                words.append([])
            words[box.word_index].append(
                RecognizedChar(box=box, glyph=normalized, match=match, label=label)
            )
        recognized.append(RecognizedLine(
            segmented=segmented,
            words=tuple(tuple(word) for word in words),
        ))
    return recognized


def transcript(lines: list[RecognizedLine], char_sep: str = "") -> str:
    """Render recognized lines as plain text, one page line per row."""
    rows = []
    for line in lines:
        rows.append(" ".join(
            char_sep.join(ch.label for ch in word) for word in line.words
        ))
    return "\n".join(rows) + ("\n" if rows else "")
