"""Scanned-page character recognition pipeline.

A page image goes through binarization, projection-profile line and
character segmentation, fixed-size glyph normalization, skeleton
thinning, moment and histogram feature extraction, and nearest-neighbor
template matching. All types are immutable and all operations pure, so
any stage can be used concurrently.
"""

from .classifier import (
    Match,
    TemplateStore,
    classify,
    dumps_store,
    fit_normalization,
    load_store,
    loads_store,
    save_store,
    train,
)
from .errors import ParseError
from .features import (
    FeatureConfig,
    FeatureVector,
    MomentSet,
    centroid,
    feature_vector,
    horizontal_histogram,
    moment_set,
    radial_histogram,
    raw_moment,
    shape_features,
    vertical_histogram,
)
from .glyphnorm import Glyph, crop, normalize
from .pipeline import (
    PipelineConfig,
    RecognizedChar,
    RecognizedLine,
    SegmentedLine,
    recognize_page,
    segment_page,
    transcript,
)
from .raster import (
    BinaryRaster,
    GrayRaster,
    PnmParseError,
    binarize,
    load_pnm,
    otsu_threshold,
    save_pbm,
)
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
    vertical_profile,
)
from .thinning import (
    Neighborhood,
    crossing_number,
    deletable,
    hilditch_thin,
    nonzero_neighbor_count,
    thin_passes,
)

__all__ = [
    "Band",
    "BinaryRaster",
    "CharBox",
    "FeatureConfig",
    "FeatureVector",
    "Glyph",
    "GrayRaster",
    "Match",
    "MomentSet",
    "Neighborhood",
    "ParseError",
    "PipelineConfig",
    "PnmParseError",
    "Profile",
    "RecognizedChar",
    "RecognizedLine",
    "SegmentedLine",
    "TemplateStore",
    "TextLine",
    "binarize",
    "centroid",
    "classify",
    "crop",
    "crossing_number",
    "deletable",
    "dumps_store",
    "feature_vector",
    "find_baselines",
    "find_line_bands",
    "fit_normalization",
    "group_words",
    "hilditch_thin",
    "horizontal_histogram",
    "horizontal_profile",
    "load_pnm",
    "load_store",
    "loads_store",
    "moment_set",
    "normalize",
    "nonzero_neighbor_count",
    "otsu_threshold",
    "radial_histogram",
    "raw_moment",
    "recognize_page",
    "save_pbm",
    "save_store",
    "segment_characters",
    "segment_page",
    "shape_features",
    "thin_passes",
    "tight_bounding_box",
    "train",
    "transcript",
    "vertical_histogram",
    "vertical_profile",
]
