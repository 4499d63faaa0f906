"""Shared preprocessing front-end of full-reference image quality metrics.

The package implements the two stages every transform-and-reduce metric
front-end runs, a pointwise linear color transform and a uniform
box-filter reduction, in both possible orders, proves their outputs
equivalent, and counts exactly how many multiply/add operations each
order spends.
"""

from iqprep.colorspace import (
    ChannelSet,
    ColorMatrix,
    builtin_matrices,
    builtin_matrix,
    count_transform_ops,
    load_matrix_file,
    parse_matrix_config,
    transform,
)
from iqprep.downsample import (
    DownsampleSpec,
    OpCounter,
    block_mean_decimate,
    compute_factor,
    count_decimate_ops,
    separate_filter_then_decimate,
)
from iqprep.image import (
    PnmParseError,
    RgbImage8,
    load_pnm,
    synth_image,
    to_planes,
    write_pnm,
)
from iqprep.metrics import (
    MetricConfig,
    QualityScore,
    chroma_similarity,
    gradient_similarity,
    score,
)
from iqprep.pipeline import (
    EquivalenceReport,
    PipelinePlan,
    PreprocessedChannels,
    StageOps,
    Strategy,
    plan_pipeline,
    predict_ops,
    preprocess,
    run_convert_first,
    run_downsample_first,
    select_strategy,
    verify_equivalence,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelSet",
    "ColorMatrix",
    "DownsampleSpec",
    "EquivalenceReport",
    "MetricConfig",
    "OpCounter",
    "PipelinePlan",
    "PnmParseError",
    "PreprocessedChannels",
    "QualityScore",
    "RgbImage8",
    "StageOps",
    "Strategy",
    "block_mean_decimate",
    "builtin_matrices",
    "builtin_matrix",
    "chroma_similarity",
    "compute_factor",
    "count_decimate_ops",
    "count_transform_ops",
    "gradient_similarity",
    "load_matrix_file",
    "load_pnm",
    "parse_matrix_config",
    "plan_pipeline",
    "predict_ops",
    "preprocess",
    "run_convert_first",
    "run_downsample_first",
    "score",
    "select_strategy",
    "separate_filter_then_decimate",
    "synth_image",
    "to_planes",
    "transform",
    "verify_equivalence",
    "write_pnm",
]
