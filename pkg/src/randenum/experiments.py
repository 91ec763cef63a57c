"""Monte Carlo harness: success draw counts, failure rates, overhead, tightness.

Trials are reproducible units of work: the seed of trial ``j`` for set size
``n`` is ``SeedSequence((master_seed, n, j))``, so a run can be split across
any number of workers, or re-run years later, and aggregate to the identical
report.  The per-trial simulators here are vectorized replicas of the
drivers in :mod:`randenum.drivers`; the test suite pins them to the drivers
draw for draw.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import exact
from .policy import CheckpointSchedule, DomainError, draw_threshold

__all__ = [
    "DEFAULT_CHECKPOINTS",
    "DEFAULT_EPSILON",
    "DEFAULT_SET_SIZES",
    "DEFAULT_SEED",
    "REFERENCE_RUNS",
    "WORKERS_ENV_VAR",
    "ExperimentConfig",
    "CaseReport",
    "ComparisonCase",
    "TightnessPoint",
    "ExperimentReport",
    "ComparisonReport",
    "default_schedule",
    "reference_config",
    "simulate_improved_trials",
    "simulate_baseline_trials",
    "run_fig1",
    "run_fig2",
    "run_comparison",
    "write_fig1_csv",
    "write_fig2_csv",
    "write_compare_csv",
    "FIG1_HEADER",
    "FIG2_HEADER",
    "COMPARE_HEADER",
]

DEFAULT_CHECKPOINTS = tuple(2 ** k for k in range(1, 11))
DEFAULT_EPSILON = 0.01
DEFAULT_SET_SIZES = tuple(range(50, 1001, 50))
DEFAULT_SEED = 20260810
REFERENCE_RUNS = 100_000

WORKERS_ENV_VAR = "RANDENUM_WORKERS"

FIG1_HEADER = (
    "n,k,theoretical_samples,mean_samples_success,std_samples_success,"
    "failure_rate,failure_stderr,exact_failure,runs,seed"
)
FIG2_HEADER = "m,n,tau,log10_rho"
COMPARE_HEADER = "n,mean_diff,diff_stderr,predicted_diff,runs,seed"

_ALGORITHMS = ("improved", "baseline", "both")


def default_schedule(epsilon: float = DEFAULT_EPSILON) -> CheckpointSchedule:
    """Powers of two 2..1024 with the given failure tolerance."""
    return CheckpointSchedule(DEFAULT_CHECKPOINTS, epsilon)


@dataclass(frozen=True)
class ExperimentConfig:
    schedule: CheckpointSchedule
    set_sizes: tuple[int, ...]
    runs_per_case: int
    master_seed: int
    algorithm: str = "improved"

    def __post_init__(self):
        if not isinstance(self.schedule, CheckpointSchedule):
            raise DomainError("schedule must be a CheckpointSchedule")
        sizes = tuple(int(n) for n in self.set_sizes)
        if not sizes or any(n < 1 for n in sizes):
            raise DomainError(f"set_sizes must be non-empty positive integers, got {sizes}")
        object.__setattr__(self, "set_sizes", sizes)
        if self.runs_per_case < 1:
            raise DomainError(f"runs_per_case must be >= 1, got {self.runs_per_case}")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise DomainError(f"master_seed must be a u64, got {self.master_seed}")
        if self.algorithm not in _ALGORITHMS:
            raise DomainError(f"algorithm must be one of {_ALGORITHMS}, got {self.algorithm!r}")


def reference_config(runs_per_case: int = REFERENCE_RUNS, master_seed: int = DEFAULT_SEED,
                     algorithm: str = "improved") -> ExperimentConfig:
    """The reference test setup: checkpoints 2..1024, eps 0.01, sizes
    50..1000 step 50, ``10**5`` runs per case."""
    return ExperimentConfig(default_schedule(), DEFAULT_SET_SIZES, runs_per_case,
                            master_seed, algorithm)


@dataclass(frozen=True)
class CaseReport:
    n: int
    k: int
    theoretical_samples: int
    mean_samples_success: float
    std_samples_success: float
    failure_rate: float
    failure_stderr: float
    exact_failure: float
    runs: int
    seed: int
    # Rule-of-three one-sided bound, reported when no failure was observed
    # (the binomial standard error degenerates to zero there).
    failure_rate_upper: float | None = None


@dataclass(frozen=True)
class ComparisonCase:
    n: int
    mean_diff: float
    diff_stderr: float
    predicted_diff: float
    runs: int
    seed: int


@dataclass(frozen=True)
class TightnessPoint:
    m: int
    n: int
    tau: int
    log10_rho: float


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    cases: tuple[CaseReport, ...]


@dataclass(frozen=True)
class ComparisonReport:
    config: ExperimentConfig
    cases: tuple[ComparisonCase, ...]


def _trial_rng(master_seed, n, trial):
    return np.random.default_rng(np.random.SeedSequence((master_seed, n, trial)))


def _improved_chunk(args):
    n, checkpoints, deadlines, master_seed, start, stop = args
    totals = np.empty(stop - start, dtype=np.int64)
    collected = np.empty(stop - start, dtype=np.int64)
    for pos, trial in enumerate(range(start, stop)):
        rng = _trial_rng(master_seed, n, trial)
        seen = np.zeros(n, dtype=bool)
        t = 0
        distinct = 0
        for m_i, deadline in zip(checkpoints, deadlines):
            if t < deadline:
                seen[rng.integers(0, n, size=deadline - t)] = True
                t = deadline
            distinct = int(np.count_nonzero(seen))
            if distinct < m_i:
                break
        totals[pos] = t
        collected[pos] = distinct
    return totals, collected


def _baseline_chunk(args):
    n, checkpoints, deadlines, master_seed, start, stop = args
    m_count = len(checkpoints)
    totals = np.empty(stop - start, dtype=np.int64)
    collected = np.empty(stop - start, dtype=np.int64)
    for pos, trial in enumerate(range(start, stop)):
        rng = _trial_rng(master_seed, n, trial)
        seen = np.zeros(n, dtype=bool)
        new_positions: list[int] = []  # 1-based draw index of each first sighting
        generated = 0

        def extend_to(target):
            nonlocal generated
            if generated >= target:
                return
            block = rng.integers(0, n, size=target - generated)
            values, first_index = np.unique(block, return_index=True)
            fresh = ~seen[values]
            if fresh.any():
                positions = np.sort(first_index[fresh]) + generated + 1
                new_positions.extend(positions.tolist())
                seen[values[fresh]] = True
            generated = target

        i = 0
        window_start = 0
        while True:
            deadline = window_start + deadlines[i]
            extend_to(deadline)
            # The window survives only if the collection outgrows m_i by the
            # deadline; the (m_i + 1)-th distinct sighting is that event.
            target_rank = checkpoints[i] + 1
            if len(new_positions) < target_rank or new_positions[target_rank - 1] > deadline:
                break
            j = bisect_left(checkpoints, target_rank)
            if j >= m_count:
                break
            i = j
            window_start = new_positions[target_rank - 1]
        totals[pos] = deadline
        collected[pos] = len(new_positions)
    return totals, collected


_CHUNK_FNS = {"improved": _improved_chunk, "baseline": _baseline_chunk}


def _resolve_workers(workers):
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    return workers


def _simulate(kind, n, schedule, master_seed, runs, workers):
    if runs < 1:
        raise DomainError(f"runs must be >= 1, got {runs}")
    chunk_fn = _CHUNK_FNS[kind]
    bounds = np.linspace(0, runs, min(workers, runs) + 1).astype(int)
    jobs = [
        (n, schedule.checkpoints, schedule.thresholds(), master_seed, int(a), int(b))
        for a, b in zip(bounds, bounds[1:])
    ]
    if len(jobs) == 1:
        parts = [chunk_fn(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(chunk_fn, jobs))
    totals = np.concatenate([p[0] for p in parts])
    collected = np.concatenate([p[1] for p in parts])
    return totals, collected


def simulate_improved_trials(n, schedule, master_seed, runs, workers=None):
    """Per-trial (total draws, collected count) for the improved driver.

    Exactly reproduces ``enumerate_improved`` with
    ``UniformSampler.for_trial(n, master_seed, j)`` for ``j = 0..runs-1``.
    """
    return _simulate("improved", n, schedule, master_seed, runs, _resolve_workers(workers))


def simulate_baseline_trials(n, schedule, master_seed, runs, workers=None):
    """Per-trial (total draws, collected count) for the counter-reset driver."""
    return _simulate("baseline", n, schedule, master_seed, runs, _resolve_workers(workers))


def _case_index(schedule: CheckpointSchedule, n: int) -> int:
    """1-based k with m_{k-1} < n <= m_k."""
    return bisect_left(schedule.checkpoints, n) + 1


def _require_covering(config: ExperimentConfig):
    top = config.schedule.max_checkpoint
    bad = [n for n in config.set_sizes if n > top]
    if bad:
        raise DomainError(
            f"set sizes {bad} exceed the largest checkpoint {top}; the success guarantee needs m_M >= n"
        )


def run_fig1(config: ExperimentConfig, workers=None) -> ExperimentReport:
    """Success draw-count and failure-rate statistics per set size.

    Runs the configured algorithm (``improved`` or ``baseline``)
    ``runs_per_case`` times per size with independent derived seeds, and
    attaches the exact stop-early probability for each case.
    """
    if config.algorithm == "both":
        raise DomainError("run_fig1 needs a single algorithm; use run_comparison for both")
    _require_covering(config)
    workers = _resolve_workers(workers)
    cases = []
    for n in config.set_sizes:
        totals, collected = _simulate(config.algorithm, n, config.schedule,
                                      config.master_seed, config.runs_per_case, workers)
        successes = totals[collected == n]
        failures = config.runs_per_case - successes.size
        rate = failures / config.runs_per_case
        stderr = math.sqrt(rate * (1.0 - rate) / config.runs_per_case)
        k = _case_index(config.schedule, n)
        cases.append(CaseReport(
            n=n,
            k=k,
            theoretical_samples=config.schedule.threshold(k),
            mean_samples_success=float(successes.mean()) if successes.size else math.nan,
            std_samples_success=float(successes.std()) if successes.size else math.nan,
            failure_rate=rate,
            failure_stderr=stderr,
            exact_failure=exact.failure_probability(n, config.schedule),
            runs=config.runs_per_case,
            seed=config.master_seed,
            failure_rate_upper=(3.0 / config.runs_per_case) if failures == 0 else None,
        ))
    return ExperimentReport(config, tuple(cases))


def run_comparison(config: ExperimentConfig, workers=None) -> ComparisonReport:
    """Paired improved/baseline runs per trial seed.

    Reports the mean extra draws of the counter-reset variant over pairs
    where both runs collected everything, with the exact expected overhead
    (the cost of re-collecting ``m_{k-1} + 1`` elements) as the prediction.
    """
    if config.algorithm != "both":
        raise DomainError("run_comparison requires algorithm='both'")
    _require_covering(config)
    workers = _resolve_workers(workers)
    cases = []
    for n in config.set_sizes:
        imp_totals, imp_collected = _simulate("improved", n, config.schedule,
                                              config.master_seed, config.runs_per_case, workers)
        base_totals, base_collected = _simulate("baseline", n, config.schedule,
                                                config.master_seed, config.runs_per_case, workers)
        paired = (imp_collected == n) & (base_collected == n)
        diffs = (base_totals - imp_totals)[paired]
        k = _case_index(config.schedule, n)
        if k == 1:
            predicted = 0.0  # no reset ever happens below the first checkpoint
        else:
            predicted = exact.expected_draws(config.schedule.checkpoints[k - 2] + 1, n)
        mean_diff = float(diffs.mean()) if diffs.size else math.nan
        stderr = float(diffs.std(ddof=1) / math.sqrt(diffs.size)) if diffs.size > 1 else math.nan
        cases.append(ComparisonCase(
            n=n,
            mean_diff=mean_diff,
            diff_stderr=stderr,
            predicted_diff=predicted,
            runs=config.runs_per_case,
            seed=config.master_seed,
        ))
    return ComparisonReport(config, tuple(cases))


def run_fig2(n, epsilon, m_values=None) -> tuple[TightnessPoint, ...]:
    """Tightness sweep: how far below 1 the stopping-rule weight ratio falls
    for each candidate size ``m`` at its own threshold."""
    if m_values is None:
        m_values = range(1, n + 1)
    points = []
    for m in m_values:
        tau = draw_threshold(m, epsilon)
        log_rho = exact.log_tightness_ratio(tau, m, n)
        points.append(TightnessPoint(m=int(m), n=int(n), tau=tau,
                                     log10_rho=log_rho / math.log(10.0)))
    return tuple(points)


def _fmt(value) -> str:
    return repr(float(value))


def write_fig1_csv(report: ExperimentReport, path) -> None:
    rows = [FIG1_HEADER]
    for c in report.cases:
        rows.append(",".join([
            str(c.n), str(c.k), str(c.theoretical_samples),
            _fmt(c.mean_samples_success), _fmt(c.std_samples_success),
            _fmt(c.failure_rate), _fmt(c.failure_stderr), _fmt(c.exact_failure),
            str(c.runs), str(c.seed),
        ]))
    _write_lines(path, rows)


def write_fig2_csv(points, path) -> None:
    rows = [FIG2_HEADER]
    for p in points:
        rows.append(",".join([str(p.m), str(p.n), str(p.tau), _fmt(p.log10_rho)]))
    _write_lines(path, rows)


def write_compare_csv(report: ComparisonReport, path) -> None:
    rows = [COMPARE_HEADER]
    for c in report.cases:
        rows.append(",".join([
            str(c.n), _fmt(c.mean_diff), _fmt(c.diff_stderr), _fmt(c.predicted_diff),
            str(c.runs), str(c.seed),
        ]))
    _write_lines(path, rows)


def _write_lines(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(rows) + "\n")
