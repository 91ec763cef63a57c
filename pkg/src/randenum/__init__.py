"""Enumerate every element of a finite set by repeated uniform sampling.

The stopping rule gives a provable success guarantee: with a checkpoint
schedule whose largest entry covers the true set size and a failure
tolerance ``eps`` in (0, 1/e], the improved driver returns the complete set
with probability at least ``1 - eps``, and in success runs its draw count is
a deterministic constant of the schedule.  Exact analysis routines verify
every quantity the guarantee rests on.
"""

from .policy import (
    EPSILON_MAX,
    CheckpointSchedule,
    DomainError,
    FailureTolerance,
    checkpoint_threshold,
    draw_threshold,
)
from .drivers import (
    CheckpointRecord,
    CountingSampler,
    EnumerationOutcome,
    RecordingSampler,
    StopReason,
    StreamFormatError,
    UniformSampler,
    enumerate_baseline,
    enumerate_improved,
    enumerate_stream,
    iter_tokens,
)
from .exact import (
    TailTable,
    expected_draws,
    failure_probability,
    log_falling_ratio,
    log_tightness_ratio,
    tail_probability,
    tail_probability_grid,
    tail_upper_bound,
)
from .experiments import (
    ComparisonReport,
    ExperimentConfig,
    ExperimentReport,
    TightnessPoint,
    default_schedule,
    reference_config,
    run_comparison,
    run_fig1,
    run_fig2,
    simulate_baseline_trials,
    simulate_improved_trials,
    write_compare_csv,
    write_fig1_csv,
    write_fig2_csv,
)

__version__ = "0.1.0"

__all__ = [
    "EPSILON_MAX",
    "CheckpointSchedule",
    "DomainError",
    "FailureTolerance",
    "checkpoint_threshold",
    "draw_threshold",
    "CheckpointRecord",
    "CountingSampler",
    "EnumerationOutcome",
    "RecordingSampler",
    "StopReason",
    "StreamFormatError",
    "UniformSampler",
    "enumerate_baseline",
    "enumerate_improved",
    "enumerate_stream",
    "iter_tokens",
    "TailTable",
    "expected_draws",
    "failure_probability",
    "log_falling_ratio",
    "log_tightness_ratio",
    "tail_probability",
    "tail_probability_grid",
    "tail_upper_bound",
    "ComparisonReport",
    "ExperimentConfig",
    "ExperimentReport",
    "TightnessPoint",
    "default_schedule",
    "reference_config",
    "run_comparison",
    "run_fig1",
    "run_fig2",
    "simulate_baseline_trials",
    "simulate_improved_trials",
    "write_compare_csv",
    "write_fig1_csv",
    "write_fig2_csv",
    "__version__",
]
