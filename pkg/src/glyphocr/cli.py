"""Command-line interface.

Subcommands: binarize, segment, thin, features, train, recognize.
Exit codes: 0 success, 1 usage, 2 unreadable or malformed input,
3 violated pipeline precondition. Diagnostics go to stderr as one line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classifier, pipeline
from .errors import ParseError
from .features import FeatureConfig, feature_vector
from .glyphnorm import Glyph
from .raster import BinaryRaster, GrayRaster, binarize, load_pnm, save_pbm
from .segmentation import CharBox, horizontal_profile
from .thinning import hilditch_thin

USAGE_EXIT = 1
PARSE_EXIT = 2
PRECONDITION_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _threshold(text: str):
    if text == "otsu":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threshold must be 'otsu' or an integer, got {text!r}")
    if not 0 <= value <= 255:
        raise argparse.ArgumentTypeError(f"threshold {value} outside 0..255")
    return value


def _load_raster(path: Path):
    return load_pnm(Path(path).read_bytes())


def _require_binary(raster, path: Path) -> BinaryRaster:
    if isinstance(raster, GrayRaster):
        raise ValueError(f"{path} is grayscale; binarize it first")
    return raster


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="glyphocr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    thresh = _Parser(add_help=False)
    thresh.add_argument("--threshold", type=_threshold, default=None, metavar="otsu|0..255",
                        help="binarization policy (default: otsu)")
    thresh.add_argument("--invert", action="store_true",
                        help="treat light pixels as ink (light-on-dark sources)")

    seg = _Parser(add_help=False)
    seg.add_argument("--min-line-height", type=int, default=2, metavar="N",
                     help="discard line bands shorter than N rows (default 2)")
    seg.add_argument("--gap-factor", type=float, default=2.0, metavar="F",
                     help="word break at gaps >= F x median gap (default 2.0)")

    extract = _Parser(add_help=False)
    extract.add_argument("--size", type=int, default=None, metavar="S",
                         help="normalized glyph size (default 32, or the store's)")
    extract.add_argument("--rings", type=int, default=None, metavar="R",
                         help="radial histogram rings (default 8, or the store's)")

    debug = _Parser(add_help=False)
    debug.add_argument("--debug-dir", type=Path, default=None, metavar="PATH",
                       help="write segmentation records, glyph dumps, and figures here")

    p = sub.add_parser("binarize", parents=[thresh], help="threshold a graymap to a bitmap")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.set_defaults(func=cmd_binarize)

    p = sub.add_parser("segment", parents=[thresh, seg, debug],
                       help="list character boxes of a page as TSV")
    p.add_argument("page", type=Path)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("thin", help="skeletonize a bitmap")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.add_argument("--max-passes", type=int, default=None, metavar="N",
                   help="abort if thinning needs more than N passes (default: unlimited)")
    p.set_defaults(func=cmd_thin)

    p = sub.add_parser("features", parents=[extract],
                       help="print the feature vector of a normalized glyph")
    p.add_argument("glyph", type=Path)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("train", parents=[thresh, extract],
                       help="build a template store from a manifest of labeled glyphs")
    p.add_argument("glyph_dir", type=Path,
                   help="directory holding manifest.tsv (<relative-path>\\t<label> lines)")
    p.add_argument("store", type=Path)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("recognize", parents=[thresh, seg, extract, debug],
                       help="transcribe a page using a template store")
    p.add_argument("page", type=Path)
    p.add_argument("store", type=Path)
    p.add_argument("--k", type=int, default=1, metavar="N", help="neighbor count (default 1)")
    p.add_argument("--reject-dist", type=float, default=None, metavar="F",
                   help="emit '?' for matches farther than F")
    p.add_argument("--char-sep", default="", metavar="SEP",
                   help="separator between characters inside a word (default: none)")
    p.set_defaults(func=cmd_recognize)

    return parser


def cmd_binarize(args) -> int:
    raster = _load_raster(args.input)
    if isinstance(raster, GrayRaster):
        raster = binarize(raster, threshold=args.threshold, invert=args.invert)
    elif args.invert:
        raster = BinaryRaster(1 - raster.pixels)
    args.output.write_bytes(save_pbm(raster))
    return 0


def _write_segment_debug(page: BinaryRaster, lines, debug_dir: Path) -> None:
    debug_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for seg in lines:
        records.append({
            "line": seg.index,
            "band": [seg.line.band.start, seg.line.band.end],
            "baselines": [seg.line.upper_baseline, seg.line.lower_baseline],
            "boxes": [[b.x0, b.y0, b.x1, b.y1, b.word_index] for b in seg.boxes],
        })
    text = "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
    (debug_dir / "segmentation.jsonl").write_text(text, encoding="utf-8")

    from . import report  # matplotlib import deferred until figures are wanted

    report.write_segmentation_figures(page, horizontal_profile(page), lines, debug_dir)


def _pipeline_config(args, size: int, rings: int) -> pipeline.PipelineConfig:
    return pipeline.PipelineConfig(
        threshold=args.threshold,
        invert=args.invert,
        min_line_height=args.min_line_height,
        gap_factor=args.gap_factor,
        size=size,
        rings=rings,
        k=getattr(args, "k", 1),
        reject_dist=getattr(args, "reject_dist", None),
        char_sep=getattr(args, "char_sep", ""),
        debug_dir=args.debug_dir,
    )


def cmd_segment(args) -> int:
    config = _pipeline_config(args, size=32, rings=8)
    page = pipeline.ensure_binary(_load_raster(args.page), config)
    lines = pipeline.segment_page(page, config)
    for seg in lines:
        for box in seg.boxes:
            print(f"{box.line_index}\t{box.word_index}\t{box.x0}\t{box.y0}\t{box.x1}\t{box.y1}")
    if args.debug_dir is not None:
        _write_segment_debug(page, lines, args.debug_dir)
    return 0


def cmd_thin(args) -> int:
    raster = _require_binary(_load_raster(args.input), args.input)
    args.output.write_bytes(save_pbm(hilditch_thin(raster, max_passes=args.max_passes)))
    return 0


def cmd_features(args) -> int:
    config = FeatureConfig(size=args.size or 32, rings=args.rings or 8)
    raster = _require_binary(_load_raster(args.glyph), args.glyph)
    if raster.width != config.size or raster.height != config.size:
        raise ValueError(
            f"{args.glyph} is {raster.width}x{raster.height}, expected a "
            f"{config.size}x{config.size} normalized glyph"
        )
    glyph = Glyph(raster=raster, source_box=CharBox(0, 0, raster.width, raster.height))
    vector = feature_vector(glyph, config)
    print(" ".join(repr(float(v)) for v in vector.to_array()))
    return 0


def _read_manifest(glyph_dir: Path) -> list[tuple[Path, str]]:
    manifest = glyph_dir / "manifest.tsv"
    entries = []
    for lineno, line in enumerate(manifest.read_text(encoding="utf-8").splitlines(), start=1):
        if not line:
            continue
        rel, sep, label = line.partition("\t")
        if not sep or not rel or not label:
            raise ParseError(f"{manifest}:{lineno}: expected <path>\\t<label>, got {line!r}")
        entries.append((glyph_dir / rel, label))
    if not entries:
        raise ValueError(f"{manifest} lists no glyphs")
    return entries


def cmd_train(args) -> int:
    config = pipeline.PipelineConfig(
        threshold=args.threshold,
        invert=args.invert,
        size=args.size or 32,
        rings=args.rings or 8,
    )
    samples = []
    for path, label in _read_manifest(args.glyph_dir):
        raster = pipeline.ensure_binary(_load_raster(path), config)
        full = CharBox(0, 0, raster.width, raster.height)
        try:
            _, skeleton = pipeline.prepare_glyph(raster, full, config.size)
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from None
        samples.append((label, skeleton))
    store = classifier.train(samples, config.feature_config)
    classifier.save_store(store, args.store)
    return 0


def _write_recognize_debug(page, lines, debug_dir: Path) -> None:
    _write_segment_debug(page, [line.segmented for line in lines], debug_dir)
    for line in lines:
        for word_index, word in enumerate(line.words):
            for char_index, char in enumerate(word):
                name = f"line{line.segmented.index}_word{word_index}_char{char_index}.pbm"
                (debug_dir / name).write_bytes(save_pbm(char.glyph.raster))


def cmd_recognize(args) -> int:
    store = classifier.load_store(args.store)
    size = args.size if args.size is not None else store.config.size
    rings = args.rings if args.rings is not None else store.config.rings
    config = _pipeline_config(args, size=size, rings=rings)
    page = pipeline.ensure_binary(_load_raster(args.page), config)
    lines = pipeline.recognize_page(page, store, config)
    sys.stdout.write(pipeline.transcript(lines, config.char_sep))
    if args.debug_dir is not None:
        _write_recognize_debug(page, lines, args.debug_dir)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION_EXIT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
