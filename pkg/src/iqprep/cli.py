"""Command-line front-end: ``bench``, ``verify``, and ``score``.

Exit codes: 0 on success / within tolerance, 1 on a tolerance violation
(so ``verify`` is usable as a CI gate), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from iqprep.bench import emit_report, run_bench
from iqprep.colorspace import ChannelSet, builtin_matrix
from iqprep.downsample import compute_factor
from iqprep.image import PnmParseError, load_pnm, synth_image
from iqprep.metrics import MetricConfig, score
from iqprep.pipeline import Strategy, preprocess, select_strategy, verify_equivalence

_STRATEGY_CHOICES = {
    "auto": Strategy.AUTO,
    "convert-first": Strategy.CONVERT_FIRST,
    "downsample-first": Strategy.DOWNSAMPLE_FIRST,
}


def _parse_size(text: str) -> tuple[int, int]:
    try:
        h_text, w_text = text.lower().split("x")
        height, width = int(h_text), int(w_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected HxW, got {text!r}") from None
    if height < 1 or width < 1:
        raise argparse.ArgumentTypeError(f"dimensions must be >= 1, got {text!r}")
    return height, width


def _parse_size_list(text: str) -> list[tuple[int, int]]:
    return [_parse_size(part) for part in text.split(",") if part]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqprep",
        description="Preprocessing front-end of full-reference image quality metrics: "
        "benchmark, verify, and score with either stage ordering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="time both strategies across image sizes")
    bench.add_argument(
        "--sizes",
        type=_parse_size_list,
        default="384x512,1080x1920,2160x3840",
        help="comma-separated HxW list (default: %(default)s)",
    )
    bench.add_argument("--seed", type=int, default=1, help="synthetic image seed")
    bench.add_argument("--reps", type=int, default=5, help="timed repetitions, >= 3")
    bench.add_argument("--out", default="report.csv", help="CSV output path")

    verify = sub.add_parser("verify", help="check score equivalence of the two orderings")
    verify.add_argument("--size", type=_parse_size, required=True, help="image size HxW")
    verify.add_argument("--seed", type=int, default=1, help="synthetic image seed")
    verify.add_argument("--matrix", default="yiq", help="built-in matrix name")
    verify.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance")

    scorer = sub.add_parser("score", help="score a distorted image against a reference")
    scorer.add_argument("--ref", required=True, help="reference image (binary PNM, P6)")
    scorer.add_argument("--dst", required=True, help="distorted image (binary PNM, P6)")
    scorer.add_argument(
        "--strategy",
        choices=sorted(_STRATEGY_CHOICES),
        default="auto",
        help="stage ordering (default: auto)",
    )
    scorer.add_argument(
        "--luma-only",
        action="store_true",
        help="score the luminance channel only (skips the chroma terms)",
    )
    scorer.add_argument("--matrix", default="yiq", help="built-in matrix name")
    return parser


def _cmd_bench(args) -> int:
    if args.reps < 3:
        print("error: --reps must be at least 3", file=sys.stderr)
        return 2
    sizes = args.sizes if isinstance(args.sizes, list) else _parse_size_list(args.sizes)
    if not sizes:
        print("error: --sizes must name at least one HxW size", file=sys.stderr)
        return 2
    records = run_bench(sizes, seed=args.seed, reps=args.reps)
    report = emit_report(records)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.csv)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    print(report.markdown)
    print(f"CSV written to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        matrix = builtin_matrix(args.matrix)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    height, width = args.size
    channels = ChannelSet.all_channels()
    spec = compute_factor(height, width)
    ref = synth_image(height, width, args.seed)
    dst = synth_image(height, width, args.seed + 1)

    per_channel: dict[str, float] = {}
    for image in (ref, dst):
        report = verify_equivalence(image, matrix, channels, spec, tolerance=args.tol)
        for name, diff in report.per_channel.items():
            per_channel[name] = max(diff, per_channel.get(name, 0.0))

    config = MetricConfig()
    score_cf = score(
        preprocess(ref, matrix, channels, Strategy.CONVERT_FIRST, spec),
        preprocess(dst, matrix, channels, Strategy.CONVERT_FIRST, spec),
        config,
    )
    score_df = score(
        preprocess(ref, matrix, channels, Strategy.DOWNSAMPLE_FIRST, spec),
        preprocess(dst, matrix, channels, Strategy.DOWNSAMPLE_FIRST, spec),
        config,
    )
    score_delta = abs(score_cf.value - score_df.value)

    print(f"size {height}x{width}  matrix {matrix.name}  M {spec.factor}  tol {args.tol:g}")
    print("max |convert-first - downsample-first| per channel:")
    for name, diff in per_channel.items():
        print(f"  {name:8s} {diff:.3e}")
    print(f"score delta: {score_delta:.3e}")
    passed = max(per_channel.values()) <= args.tol and score_delta <= args.tol
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


def _cmd_score(args) -> int:
    try:
        matrix = builtin_matrix(args.matrix)
        ref = load_pnm(args.ref)
        dst = load_pnm(args.dst)
    except (PnmParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if (ref.height, ref.width) != (dst.height, dst.width):
        print(
            f"error: image dimensions differ: {ref.height}x{ref.width} vs "
            f"{dst.height}x{dst.width}",
            file=sys.stderr,
        )
        return 2

    channels = ChannelSet.luma_only() if args.luma_only else ChannelSet.all_channels()
    spec = compute_factor(ref.height, ref.width)
    strategy = _STRATEGY_CHOICES[args.strategy]
    if strategy is Strategy.AUTO:
        strategy = select_strategy(channels, spec)

    pre_ref = preprocess(ref, matrix, channels, strategy, spec)
    pre_dst = preprocess(dst, matrix, channels, strategy, spec)
    result = score(pre_ref, pre_dst, MetricConfig())
    ops = pre_ref.ops + pre_dst.ops

    print(f"score {result.value:.9f}")
    print(f"  gradient {result.gradient:.9f}")
    if result.chroma1 is not None:
        print(f"  chroma1  {result.chroma1:.9f}")
    if result.chroma2 is not None:
        print(f"  chroma2  {result.chroma2:.9f}")
    print(f"strategy {strategy.value}  M {spec.factor}")
    print(f"conversion ops: {ops.conversion.multiplies} mul, {ops.conversion.adds} add")
    print(f"filtering ops:  {ops.filtering.multiplies} mul, {ops.filtering.adds} add")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_score(args)


if __name__ == "__main__":
    raise SystemExit(main())
