"""Index of increase of a function observed with measurement error.

The ungrouped index of a noisy sample drifts to 1/2 as sampling gets
denser. Averaging consecutive observations into ``~n**alpha`` groups
restores consistency for ``alpha < 1/3``. The package chooses ``alpha`` by
kernel-regression cross-validation and attaches m-out-of-n bootstrap
intervals.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bootstrap import BootstrapReport, bootstrap_ci, quantile, subsample_size
from .core import (
    IndexValue,
    ProjectionResult,
    SampledSeries,
    exact_index,
    increments,
    index_numeric,
    monotone_projection,
)
from .errors import (
    DegenerateSeries,
    InsufficientTrace,
    InvalidAlpha,
    InvalidBandwidth,
    InvalidGamma,
    InvalidGroupSize,
    InvalidSeries,
    MonoidxError,
    PlanMismatch,
    ResampleExhausted,
    TooFewPoints,
    UnknownFunction,
)
from .functions import BANK, FunctionSpec, get_function, sample_on_grid
from .grouping import (
    GroupingPlan,
    RateExponents,
    alpha_for_group_size,
    alpha_max,
    group_average,
    grouped_index,
    plan_groups,
    rate_exponents,
)
from .smoothing import (
    BandwidthGrid,
    CvReport,
    SyntheticSource,
    alpha_from_bandwidth,
    cv_score,
    kernel_smooth,
    select_bandwidth,
)
from .studies import StudyConfig, convergence_trace, rate_estimate, surface_study, table_report
from .synth import NoiseSpec, generate_series
