"""Network estimation from sampled cognitive social structure (CSS) slices.

A CSS study asks every actor in a bounded network to report not only their
own ties but their perception of every other dyad.  This package derives the
true network from such data by the intersection rule, profiles each
respondent's omission/commission errors, estimates the complete network from
a random sample of perception slices by threshold aggregation (fixed,
type-1-controlling, or ROC-distance-minimizing threshold choice), and runs
seeded Monte Carlo experiments of estimation quality versus sample size.
"""

from .model import (
    CssArray,
    DiagonalPolicy,
    Network,
    RegionPartition,
    SampleDesign,
    average_sample_density,
    derive_truth,
    draw_sample,
    partition_regions,
    slice_density,
    third_party_counts,
)
from .errors import (
    ActorErrorProfile,
    CellScope,
    ErrorSummary,
    actor_errors,
    error_breakdown_table,
    error_summary,
)
from .estimate import (
    CalibrationCounts,
    EstimateReport,
    RocRow,
    RocTable,
    atm,
    calibrate,
    ftm,
    roc_table,
    rtm,
    s14,
    select_atm_threshold,
    select_rtm_threshold,
)
from .simulate import (
    ExperimentConfig,
    ExperimentResult,
    ExperimentRow,
    MethodSpec,
    SummaryRow,
    derive_seed,
    run_experiment,
    summarize,
)
from .io import CssFormatError, parse_css, write_css

__version__ = "0.1.0"

__all__ = [
    "CssArray",
    "Network",
    "SampleDesign",
    "RegionPartition",
    "DiagonalPolicy",
    "CellScope",
    "ActorErrorProfile",
    "ErrorSummary",
    "CalibrationCounts",
    "RocRow",
    "RocTable",
    "EstimateReport",
    "MethodSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "ExperimentRow",
    "SummaryRow",
    "CssFormatError",
    "derive_truth",
    "slice_density",
    "average_sample_density",
    "partition_regions",
    "third_party_counts",
    "draw_sample",
    "actor_errors",
    "error_summary",
    "error_breakdown_table",
    "ftm",
    "calibrate",
    "roc_table",
    "select_atm_threshold",
    "select_rtm_threshold",
    "atm",
    "rtm",
    "s14",
    "derive_seed",
    "run_experiment",
    "summarize",
    "parse_css",
    "write_css",
]
