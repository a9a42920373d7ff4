"""Debug figures for the segmentation stage.

Rendered to files under the CLI's --debug-dir, next to the JSON records:
a projection-profile plot with detected bands and baselines, and a page
overlay with character boxes colored by word parity.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .pipeline import SegmentedLine
from .raster import BinaryRaster
from .segmentation import Profile

_WORD_COLORS = ("#d62728", "#1f77b4")


def profile_figure(profile: Profile, lines: list[SegmentedLine]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.step(range(len(profile.counts)), profile.counts, where="mid",
            color="black", linewidth=0.9)
    for seg in lines:
        band = seg.line.band
        ax.axvspan(band.start - 0.5, band.end - 0.5, color="#ffd27f", alpha=0.4)
        ax.axvline(seg.line.upper_baseline, color="#2ca02c", linestyle="--", linewidth=0.8)
        ax.axvline(seg.line.lower_baseline, color="#9467bd", linestyle="--", linewidth=0.8)
    ax.set_xlabel("row")
    ax.set_ylabel("foreground pixels")
    ax.set_title("horizontal projection profile")
    fig.tight_layout()
    return fig


def overlay_figure(page: BinaryRaster, lines: list[SegmentedLine]) -> plt.Figure:
    height = max(2.0, 6.0 * page.height / max(page.width, 1))
    fig, ax = plt.subplots(figsize=(6, min(height, 10.0)))
    ax.imshow(page.pixels, cmap="gray_r", interpolation="nearest", vmin=0, vmax=1)
    for seg in lines:
        for row in (seg.line.upper_baseline, seg.line.lower_baseline):
            ax.axhline(row, color="#2ca02c", linewidth=0.6, alpha=0.7)
        for box in seg.boxes:
            ax.add_patch(Rectangle(
                (box.x0 - 0.5, box.y0 - 0.5), box.width, box.height,
                fill=False, linewidth=0.9,
                edgecolor=_WORD_COLORS[box.word_index % len(_WORD_COLORS)],
            ))
    ax.set_title("lines, baselines, and character boxes")
    fig.tight_layout()
    return fig


def write_segmentation_figures(page: BinaryRaster, profile: Profile,
                               lines: list[SegmentedLine], out_dir: Path) -> list[Path]:
    """Render both figures into ``out_dir``; returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fig in (("profile.png", profile_figure(profile, lines)),
                      ("overlay.png", overlay_figure(page, lines))):
        path = out_dir / name
        fig.savefig(path, dpi=100)
        plt.close(fig)
        written.append(path)
    return written
