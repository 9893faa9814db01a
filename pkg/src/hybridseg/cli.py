"""Command-line interface.

Subcommands:

* ``segment``  - segment one image with one algorithm and write the mask
* ``evaluate`` - compare two mask files and print every metric
* ``batch``    - run a full config file; flags override config values
* ``phantom``  - write a synthetic image and its ground-truth mask

Exit codes: 0 on success, 1 when any case failed, 2 for an invalid config.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ALGORITHMS, ConfigError, RunConfig, parse_config
from .io import load_image, load_mask, save_image, save_mask
from .metrics import metric_report
from .phantom import Phantom, make_phantom
from .pipeline import run_pipeline
from .preprocess import PreprocessConfig, preprocess
from .segment import (
    DEFAULT_DELTA_T,
    RegionGrowParams,
    center_seed,
    iterative_threshold,
    region_grow,
)

_METRIC_ORDER = (
    "jaccard",
    "jaccard_distance",
    "dice",
    "accuracy",
    "precision",
    "recall",
    "specificity",
    "f_measure",
    "g_measure",
)


def _add_preprocess_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stretch-low-pct", type=float, default=None, metavar="P")
    parser.add_argument("--stretch-high-pct", type=float, default=None, metavar="P")
    parser.add_argument("--median-window", type=int, default=None, metavar="N")
    parser.add_argument("--swt-levels", type=int, default=None, metavar="N")


def _add_segment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tolerance", type=float, default=None, metavar="T")
    parser.add_argument("--connectivity", choices=("four", "eight"), default=None)
    parser.add_argument("--delta-t", type=float, default=None, metavar="DT")


def _preprocess_config(args: argparse.Namespace) -> PreprocessConfig:
    base = PreprocessConfig()
    updates = {
        "stretch_low_pct": args.stretch_low_pct,
        "stretch_high_pct": args.stretch_high_pct,
        "median_window": args.median_window,
        "swt_levels": args.swt_levels,
    }
    return replace(base, **{k: v for k, v in updates.items() if v is not None})


def _grow_params(args: argparse.Namespace) -> RegionGrowParams:
    base = RegionGrowParams()
    updates = {"tolerance": args.tolerance, "connectivity": args.connectivity}
    return replace(base, **{k: v for k, v in updates.items() if v is not None})


def _cmd_segment(args: argparse.Namespace) -> int:
    img = load_image(args.image)
    if not args.no_preprocess:
        img = preprocess(img, _preprocess_config(args))
    delta_t = args.delta_t if args.delta_t is not None else DEFAULT_DELTA_T
    if args.algorithm == "region_growing":
        mask = region_grow(img, center_seed(img), _grow_params(args))
        trace = None
    elif args.algorithm == "threshold":
        trace, mask = iterative_threshold(img, delta_t)
    else:
        region = region_grow(img, center_seed(img), _grow_params(args))
        trace, thresholded = iterative_threshold(img, delta_t)
        mask = region & thresholded
    save_mask(mask, args.output)
    summary = f"wrote {args.output} ({int(mask.sum())} foreground pixels)"
    if trace is not None:
        summary += f", final_t={trace.final_t:.6f} after {trace.iterations} iterations"
    print(summary)
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    report = metric_report(load_mask(args.observed), load_mask(args.truth))
    for name in _METRIC_ORDER:
        value = getattr(report, name)
        print(f"{name}: " + ("n/a" if value is None else f"{value:.6f}"))
    return 0


def _cmd_batch(args: argparse.Namespace) -> int:
    try:
        cfg = parse_config(args.config)
        cfg = _apply_overrides(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    results = run_pipeline(cfg)
    expected = len(cfg.cases) * len(cfg.algorithms)
    print(
        f"{len(results)}/{expected} rows written to "
        f"{cfg.output_dir}/report.{cfg.report_format}"
    )
    return 0 if len(results) == expected else 1


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    pre_updates = {
        "stretch_low_pct": args.stretch_low_pct,
        "stretch_high_pct": args.stretch_high_pct,
        "median_window": args.median_window,
        "swt_levels": args.swt_levels,
    }
    pre_updates = {k: v for k, v in pre_updates.items() if v is not None}
    grow_updates = {"tolerance": args.tolerance, "connectivity": args.connectivity}
    grow_updates = {k: v for k, v in grow_updates.items() if v is not None}
    top_updates = {
        "delta_t": args.delta_t,
        "output_dir": args.output_dir,
        "report_format": args.report_format,
    }
    top_updates = {k: v for k, v in top_updates.items() if v is not None}
    if args.algorithms is not None:
        top_updates["algorithms"] = tuple(
            item.strip() for item in args.algorithms.split(",") if item.strip()
        )
    if args.emit_masks:
        top_updates["emit_masks"] = True
    try:
        if pre_updates:
            top_updates["preprocess"] = replace(cfg.preprocess, **pre_updates)
        if grow_updates:
            top_updates["grow"] = replace(cfg.grow, **grow_updates)
        return replace(cfg, **top_updates) if top_updates else cfg
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _cmd_phantom(args: argparse.Namespace) -> int:
    spec = Phantom(
        side=args.side,
        axes=(args.axes[0], args.axes[1]),
        intensity=args.intensity,
        background=args.background,
        hole_radius=args.hole_radius,
        hole_center=tuple(args.hole_center) if args.hole_center else None,
        noise=args.noise,
        seed=args.seed,
    )
    image, truth = make_phantom(spec)
    save_image(image, args.image)
    save_mask(truth, args.truth)
    print(f"wrote {args.image} and {args.truth} ({int(truth.sum())} truth pixels)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridseg",
        description="Grayscale segmentation toolkit: region growing, iterative "
        "thresholding, and their hybrid, with batch evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="segment one image and write the mask")
    seg.add_argument("image")
    seg.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    seg.add_argument("--output", required=True, help="mask path (.pgm or .png)")
    seg.add_argument("--no-preprocess", action="store_true", help="skip the enhancement chain")
    _add_preprocess_flags(seg)
    _add_segment_flags(seg)
    seg.set_defaults(func=_cmd_segment)

    ev = sub.add_parser("evaluate", help="print metrics for two mask files")
    ev.add_argument("observed")
    ev.add_argument("truth")
    ev.set_defaults(func=_cmd_evaluate)

    batch = sub.add_parser("batch", help="run a config file end to end")
    batch.add_argument("config")
    batch.add_argument("--output-dir", default=None)
    batch.add_argument("--emit-masks", action="store_true", default=False)
    batch.add_argument("--report-format", choices=("csv", "json"), default=None)
    batch.add_argument("--algorithms", default=None, help="comma-separated subset")
    _add_preprocess_flags(batch)
    _add_segment_flags(batch)
    batch.set_defaults(func=_cmd_batch)

    ph = sub.add_parser("phantom", help="write a synthetic image and its truth mask")
    ph.add_argument("image", help="output image path")
    ph.add_argument("truth", help="output truth-mask path")
    ph.add_argument("--side", type=int, default=128)
    ph.add_argument("--axes", type=float, nargs=2, default=(20.0, 30.0), metavar=("ROW", "COL"))
    ph.add_argument("--intensity", type=float, default=0.85)
    ph.add_argument("--background", type=float, default=0.15)
    ph.add_argument("--hole-radius", type=float, default=6.0)
    ph.add_argument("--hole-center", type=float, nargs=2, default=None, metavar=("ROW", "COL"))
    ph.add_argument("--noise", type=float, default=0.03)
    ph.add_argument("--seed", type=int, default=42)
    ph.set_defaults(func=_cmd_phantom)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # surface runtime failures as exit code 1
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
