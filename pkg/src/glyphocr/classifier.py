"""Nearest-neighbor recognition over labeled feature vectors.

A template store keeps every training exemplar's raw feature vector plus
per-dimension normalization statistics. Queries are z-scored with the
store's statistics and matched by Euclidean distance; ties are resolved
deterministically (record order for equal distances, then summed
distance and lexicographic label for k > 1 majority votes).

Store file format (UTF-8 text, LF line endings):

    GLYPHSTORE v1
    dim <D> size <S> rings <R>
    mean <D decimals>
    std <D decimals>
    <label>\\t<D space-separated decimals>     (one line per record)

Floats are written with full round-trip precision, so save -> load ->
classify reproduces labels and distances bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError
from .features import FeatureConfig, feature_vector
from .glyphnorm import Glyph

MAGIC = "GLYPHSTORE v1"


class StoreFormatError(ParseError):
    """A template store file does not match the v1 format."""


@dataclass(frozen=True)
class Match:
    """Classification outcome: winning label plus the ranked neighbors."""

    label: str
    distance: float
    ranked: tuple[tuple[str, float], ...]


@dataclass(frozen=True, eq=False)
class TemplateStore:
    """Immutable labeled exemplars plus their normalization statistics."""

    config: FeatureConfig
    records: tuple[tuple[str, np.ndarray], ...]
    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        if not self.records:
            raise ValueError("template store needs at least one record")
        dim = self.config.dimension
        for label, vec in self.records:
            if vec.shape != (dim,):
                raise ValueError(f"record {label!r} has dimension {vec.shape}, expected {dim}")
        if self.mean.shape != (dim,) or self.std.shape != (dim,):
            raise ValueError("normalization statistics must match the feature dimension")
        if np.any(self.std <= 0):
            raise ValueError("normalization std entries must be positive")

    @property
    def dim(self) -> int:
        return self.config.dimension

    def __len__(self) -> int:
        return len(self.records)


def fit_normalization(vectors: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension mean and population standard deviation.

    Zero-variance dimensions get std 1 so z-scoring stays defined.
    """
    if len(vectors) == 0:
        raise ValueError("cannot fit normalization on an empty vector set")
    stacked = np.stack([np.asarray(v, dtype=np.float64) for v in vectors])
    mean = stacked.mean(axis=0)
    std = stacked.std(axis=0)
    std[std == 0] = 1.0
    return mean, std


def _check_label(label: str) -> str:
    if not label:
        raise ValueError("labels must be nonempty")
    if "\t" in label or "\n" in label or "\r" in label:
        raise ValueError(f"label {label!r} may not contain tabs or line breaks")
    return label


def train(samples: Iterable[tuple[str, Glyph]],
          config: FeatureConfig = FeatureConfig()) -> TemplateStore:
    """Extract features for every labeled glyph and fit the store."""
    records = []
    for index, (label, glyph) in enumerate(samples):
        _check_label(label)
        if not glyph.raster.pixels.any():
            raise ValueError(f"sample {index} ({label!r}) has empty foreground")
        records.append((label, feature_vector(glyph, config).to_array()))
    if not records:
        raise ValueError("training set is empty")
    mean, std = fit_normalization([vec for _, vec in records])
    return TemplateStore(config=config, records=tuple(records), mean=mean, std=std)


def classify(store: TemplateStore, glyph: Glyph, k: int = 1) -> Match:
    """Label a glyph by its k nearest stored exemplars.

    k = 1 returns the nearest record's label. k > 1 takes the majority
    label among the k nearest; majority ties go to the smallest summed
    distance, then the lexicographically smallest label. Records at equal
    distance rank in store order. The reported distance is the nearest
    exemplar of the winning label.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if glyph.raster.width != store.config.size or glyph.raster.height != store.config.size:
        raise ValueError(
            f"glyph size {glyph.raster.width} does not match store size {store.config.size}"
        )
    query = (feature_vector(glyph, store.config).to_array() - store.mean) / store.std
    normalized = (np.stack([vec for _, vec in store.records]) - store.mean) / store.std
    dists = np.sqrt(((normalized - query) ** 2).sum(axis=1))
    order = np.argsort(dists, kind="stable")[:k]
    ranked = tuple((store.records[i][0], float(dists[i])) for i in order)

    if k == 1:
        return Match(label=ranked[0][0], distance=ranked[0][1], ranked=ranked)

    votes: dict[str, list[float]] = {}
    for label, dist in ranked:
        votes.setdefault(label, []).append(dist)
    best = min(votes.items(), key=lambda item: (-len(item[1]), sum(item[1]), item[0]))
    return Match(label=best[0], distance=min(best[1]), ranked=ranked)


def _format(value: float) -> str:
    return repr(float(value))


def dumps_store(store: TemplateStore) -> str:
    lines = [
        MAGIC,
        f"dim {store.dim} size {store.config.size} rings {store.config.rings}",
        "mean " + " ".join(_format(v) for v in store.mean),
        "std " + " ".join(_format(v) for v in store.std),
    ]
    for label, vec in store.records:
        lines.append(label + "\t" + " ".join(_format(v) for v in vec))
    return "\n".join(lines) + "\n"


def loads_store(text: str) -> TemplateStore:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise StoreFormatError(f"not a {MAGIC} file")
    if len(lines) < 5:
        raise StoreFormatError("store file is missing header lines or records")

    head = lines[1].split()
    if len(head) != 6 or head[0] != "dim" or head[2] != "size" or head[4] != "rings":
        raise StoreFormatError(f"bad dimension line: {lines[1]!r}")
    try:
        dim, size, rings = int(head[1]), int(head[3]), int(head[5])
    except ValueError:
        raise StoreFormatError(f"bad dimension line: {lines[1]!r}") from None
    config = FeatureConfig(size=size, rings=rings)
    if config.dimension != dim:
        raise StoreFormatError(
            f"dim {dim} inconsistent with size {size} and rings {rings}"
        )

    def vector_line(line: str, prefix: str) -> np.ndarray:
        if not line.startswith(prefix + " "):
            raise StoreFormatError(f"expected {prefix!r} line, got {line!r}")
        try:
            values = np.array([float(v) for v in line[len(prefix) + 1:].split()])
        except ValueError:
            raise StoreFormatError(f"non-numeric value on {prefix!r} line") from None
        if values.shape != (dim,):
            raise StoreFormatError(f"{prefix!r} line has {len(values)} values, expected {dim}")
        return values

    mean = vector_line(lines[2], "mean")
    std = vector_line(lines[3], "std")

    records = []
    for line in lines[4:]:
        label, sep, payload = line.partition("\t")
        if not sep or not label:
            raise StoreFormatError(f"bad record line: {line!r}")
        try:
            vec = np.array([float(v) for v in payload.split()])
        except ValueError:
            raise StoreFormatError(f"non-numeric value in record {label!r}") from None
        if vec.shape != (dim,):
            raise StoreFormatError(f"record {label!r} has {len(vec)} values, expected {dim}")
        records.append((label, vec))
    if not records:
        raise StoreFormatError("store file has no records")
    try:
        return TemplateStore(config=config, records=tuple(records), mean=mean, std=std)
    except ValueError as exc:
        raise StoreFormatError(str(exc)) from None


def save_store(store: TemplateStore, path: Path | str) -> None:
    Path(path).write_text(dumps_store(store), encoding="utf-8", newline="\n")


def load_store(path: Path | str) -> TemplateStore:
    return loads_store(Path(path).read_text(encoding="utf-8"))
