"""Benchmark harness: timed strategy comparison with counter-backed reports.

Timings and operation counts are kept strictly separate in the report
schema: counters are exact and reproduce on any machine, wall-clock
numbers do not. Each timed quantity is one full metric evaluation, i.e.
preprocessing of the reference and distorted images under one strategy
followed by scoring, repeated after an untimed warm-up pass with the
median (plus min/max) reported. Timing runs one strategy at a time on the
main thread so the comparison is fair.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

from iqprep.colorspace import ChannelSet, ColorMatrix, builtin_matrix
from iqprep.downsample import OpCounter, compute_factor
from iqprep.image import synth_image
from iqprep.metrics import MetricConfig, score
from iqprep.pipeline import StageOps, Strategy, run_convert_first, run_downsample_first

__all__ = [
    "PipelineConfig",
    "BenchRecord",
    "BenchReport",
    "default_pipelines",
    "run_bench",
    "emit_report",
]

CSV_HEADER = (
    "size,pipeline,strategy,ms_median,ms_min,ms_max,"
    "conv_mul,conv_add,filt_mul,filt_add,M,speedup"
)


@dataclass(frozen=True)
class PipelineConfig:
    """A named metric front-end configuration to benchmark."""

    name: str
    matrix: ColorMatrix
    channels: ChannelSet
    metric: MetricConfig = MetricConfig()


def default_pipelines() -> list[PipelineConfig]:
    """Three configurations spanning the interesting cost shapes.

    Two three-channel variants on different color spaces, plus a
    luminance-only variant that exercises the convert-first branch of the
    strategy selector.
    """
    yiq = builtin_matrix("yiq")
    lmn = builtin_matrix("lmn")
    return [
        PipelineConfig("yiq-full", yiq, ChannelSet.all_channels()),
        PipelineConfig("lmn-full", lmn, ChannelSet.all_channels()),
        PipelineConfig("yiq-luma", yiq, ChannelSet.luma_only()),
    ]


@dataclass(frozen=True)
class BenchRecord:
    """One (size, pipeline, strategy) measurement row.

    Counters cover one full evaluation (both images of the pair);
    ``speedup`` is the convert-first median divided by the
    downsample-first median of the same (size, pipeline) pair, so it
    repeats on both rows of a pair.
    """

    size_label: str
    pipeline: str
    strategy: Strategy
    ms_median: float
    ms_min: float
    ms_max: float
    conversion: OpCounter
    filtering: OpCounter
    factor: int
    speedup: float


@dataclass(frozen=True)
class BenchReport:
    """Ordered records plus the rendered machine and human outputs."""

    records: tuple[BenchRecord, ...]
    rankings: dict[str, tuple[tuple[str, ...], tuple[str, ...]]]
    csv: str
    markdown: str


_STRATEGIES = (Strategy.CONVERT_FIRST, Strategy.DOWNSAMPLE_FIRST)
_RUNNERS = {
    Strategy.CONVERT_FIRST: run_convert_first,
    Strategy.DOWNSAMPLE_FIRST: run_downsample_first,
}


def _evaluate(ref, dst, config: PipelineConfig, strategy: Strategy) -> StageOps:
    """One full metric evaluation; returns the combined stage counters."""
    runner = _RUNNERS[strategy]
    spec = compute_factor(ref.height, ref.width)
    pre_ref = runner(ref, config.matrix, config.channels, spec)
    pre_dst = runner(dst, config.matrix, config.channels, spec)
    score(pre_ref, pre_dst, config.metric)
    return pre_ref.ops + pre_dst.ops


def run_bench(
    sizes: list[tuple[int, int]],
    seed: int = 1,
    reps: int = 5,
    pipelines: list[PipelineConfig] | None = None,
) -> list[BenchRecord]:
    """Time every configured pipeline under both strategies at every size.

    For each size a reference/distorted synthetic pair is generated from
    ``seed`` and ``seed + 1``; image content does not affect the cost
    model, only dimensions do.
    """
    if reps < 3:
        raise ValueError(f"need at least 3 repetitions for a median, got {reps}")
    if pipelines is None:
        pipelines = default_pipelines()

    records: list[BenchRecord] = []
    for height, width in sizes:
        label = f"{height}x{width}"
        ref = synth_image(height, width, seed)
        dst = synth_image(height, width, seed + 1)
        factor = compute_factor(height, width).factor
        for config in pipelines:
            timed: dict[Strategy, tuple[float, float, float, StageOps]] = {}
            for strategy in _STRATEGIES:
                ops = _evaluate(ref, dst, config, strategy)  # warm-up, untimed
                elapsed = []
                for _ in range(reps):
                    start = time.perf_counter()
                    _evaluate(ref, dst, config, strategy)
                    elapsed.append((time.perf_counter() - start) * 1e3)
                if min(elapsed) <= 0.0:
                    raise RuntimeError("timer returned a non-positive duration")
                timed[strategy] = (
                    statistics.median(elapsed),
                    min(elapsed),
                    max(elapsed),
                    ops,
                )
            speedup = timed[Strategy.CONVERT_FIRST][0] / timed[Strategy.DOWNSAMPLE_FIRST][0]
            for strategy in _STRATEGIES:
                ms_median, ms_min, ms_max, ops = timed[strategy]
                records.append(
                    BenchRecord(
                        size_label=label,
                        pipeline=config.name,
                        strategy=strategy,
                        ms_median=ms_median,
                        ms_min=ms_min,
                        ms_max=ms_max,
                        conversion=ops.conversion,
                        filtering=ops.filtering,
                        factor=factor,
                        speedup=speedup,
                    )
                )
    return records


def _sizes_in_order(records: list[BenchRecord]) -> list[str]:
    seen: list[str] = []
    for record in records:
        if record.size_label not in seen:
            seen.append(record.size_label)
    return seen


def _pipelines_in_order(records: list[BenchRecord]) -> list[str]:
    seen: list[str] = []
    for record in records:
        if record.pipeline not in seen:
            seen.append(record.pipeline)
    return seen


def _lookup(records: list[BenchRecord], size: str, pipeline: str, strategy: Strategy):
    for record in records:
        if (
            record.size_label == size
            and record.pipeline == pipeline
            and record.strategy is strategy
        ):
            return record
    return None


def _ranking(records: list[BenchRecord], size: str, strategy: Strategy) -> tuple[str, ...]:
    rows = [r for r in records if r.size_label == size and r.strategy is strategy]
    rows.sort(key=lambda r: (r.ms_median, r.pipeline))  # name breaks exact ties
    return tuple(r.pipeline for r in rows)


def emit_report(records: list[BenchRecord]) -> BenchReport:
    """Render records as CSV (machine) and Markdown (human), deterministically.

    Column order and float formatting are fixed so that a counter-only run
    with zeroed timings reproduces byte for byte. The Markdown mirrors the
    classic run-time comparison layout: one row per pipeline, two columns
    per size, an asterisk on the strictly faster strategy, followed by a
    fastest-first ranking per size under each strategy with a change arrow
    where the two orders disagree.
    """
    if not records:
        raise ValueError("emit_report needs at least one record")
    sizes = _sizes_in_order(records)
    pipelines = _pipelines_in_order(records)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for record in records:
        writer.writerow(
            [
                record.size_label,
                record.pipeline,
                record.strategy.value,
                f"{record.ms_median:.3f}",
                f"{record.ms_min:.3f}",
                f"{record.ms_max:.3f}",
                record.conversion.multiplies,
                record.conversion.adds,
                record.filtering.multiplies,
                record.filtering.adds,
                record.factor,
                f"{record.speedup:.3f}",
            ]
        )
    csv_text = buffer.getvalue()

    lines: list[str] = []
    lines.append("# Strategy run-time comparison")
    lines.append("")
    lines.append(
        "Median milliseconds per full evaluation; '*' marks the strictly "
        "faster strategy of each pair."
    )
    lines.append("")
    header = "| pipeline |"
    divider = "|---|"
    for size in sizes:
        header += f" {size} convert-first | {size} downsample-first |"
        divider += "---|---|"
    lines.append(header)
    lines.append(divider)
    for pipeline in pipelines:
        row = f"| {pipeline} |"
        for size in sizes:
            cf = _lookup(records, size, pipeline, Strategy.CONVERT_FIRST)
            df = _lookup(records, size, pipeline, Strategy.DOWNSAMPLE_FIRST)
            cf_ms = cf.ms_median if cf else float("nan")
            df_ms = df.ms_median if df else float("nan")
            cf_mark = "*" if cf and df and cf_ms < df_ms else ""
            df_mark = "*" if cf and df and df_ms < cf_ms else ""
            row += f" {cf_ms:.3f}{cf_mark} | {df_ms:.3f}{df_mark} |"
        lines.append(row)
    lines.append("")

    lines.append("## Speedup (convert-first ms / downsample-first ms)")
    lines.append("")
    for size in sizes:
        parts = []
        for pipeline in pipelines:
            record = _lookup(records, size, pipeline, Strategy.CONVERT_FIRST)
            if record is not None:
                parts.append(f"{pipeline} {record.speedup:.3f}")
        lines.append(f"- {size}: " + ", ".join(parts))
    lines.append("")

    rankings: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {}
    lines.append("## Ranking (fastest first)")
    lines.append("")
    for index, size in enumerate(sizes, start=1):
        cf_order = _ranking(records, size, Strategy.CONVERT_FIRST)
        df_order = _ranking(records, size, Strategy.DOWNSAMPLE_FIRST)
        rankings[size] = (cf_order, df_order)
        if cf_order == df_order:
            lines.append(f"{index}. {size}: {', '.join(cf_order)} (no change)")
        else:
            lines.append(f"{index}. {size}: {', '.join(cf_order)} ⇒ {', '.join(df_order)}")
    lines.append("")

    return BenchReport(
        records=tuple(records),
        rankings=rankings,
        csv=csv_text,
        markdown="\n".join(lines),
    )
