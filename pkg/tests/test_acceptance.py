"""Acceptance suite: one test per contract criterion, at stated tolerances.

Each test prints a PASS/FAIL line, so a verbose run doubles as the
acceptance report.  Monte Carlo criteria run at the 10^3..10^4 scale with a
fixed master seed; `randenum fig1 --runs 100000` reproduces the full-scale
numbers.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from randenum import (
    EPSILON_MAX,
    CheckpointSchedule,
    draw_threshold,
    expected_draws,
    failure_probability,
    run_comparison,
    run_fig2,
    simulate_baseline_trials,
    simulate_improved_trials,
    tail_probability_grid,
)
from randenum.experiments import ExperimentConfig, default_schedule

from oracles import brute_distinct_distribution

ACCEPTANCE_SEED = 20260810
FULL_SCHEDULE = default_schedule()
SIZES = (50, 100, 200, 400, 800, 1000)
FAILURE_RUNS = 10_000
EXACT_COUNT_RUNS = 1_000
GRID_LIMIT = 200
GRID_EPSILONS = (EPSILON_MAX, 0.1, 0.01)


def check(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {status}: {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def reference_trials():
    """10^4 improved trials per set size; trial j is seeded independently of
    the total count, so any prefix is the smaller experiment."""
    return {
        n: simulate_improved_trials(n, FULL_SCHEDULE, ACCEPTANCE_SEED, FAILURE_RUNS)
        for n in SIZES
    }


@pytest.fixture(scope="module")
def tail_grid():
    """tails[eps][n][m] = P(T_m > draw_threshold(m, eps)) for a size-n set,
    exact, over 1 <= m <= n <= GRID_LIMIT."""
    tails = {}
    for eps in GRID_EPSILONS:
        thresholds = [draw_threshold(m, eps) for m in range(1, GRID_LIMIT + 1)]
        per_eps = np.full((GRID_LIMIT + 1, GRID_LIMIT + 1), np.nan)
        for n in range(1, GRID_LIMIT + 1):
            queries = [(m, thresholds[m - 1]) for m in range(1, n + 1)]
            per_eps[n, 1:n + 1] = tail_probability_grid(n, queries)
        tails[eps] = per_eps
    return tails


def test_exact_sample_count(reference_trials):
    """Success runs cost exactly ceil(m_k ln(m_k M / eps)); zero tolerance."""
    bad = []
    for n in SIZES:
        totals, collected = reference_trials[n]
        totals = totals[:EXACT_COUNT_RUNS]
        collected = collected[:EXACT_COUNT_RUNS]
        k = next(i for i, m in enumerate(FULL_SCHEDULE.checkpoints, start=1) if n <= m)
        expected = FULL_SCHEDULE.threshold(k)
        successes = totals[collected == n]
        if successes.size < EXACT_COUNT_RUNS * 0.99:
            bad.append(f"n={n}: only {successes.size} successes")
        if not (successes == expected).all():
            bad.append(f"n={n}: observed counts {set(successes.tolist())} != {expected}")
    check("exact success sample count, zero variance", not bad, "; ".join(bad))


def test_failure_rate_bound(reference_trials):
    """Observed failure rate <= eps, and consistent with the exact rate."""
    bad = []
    for n in SIZES:
        _, collected = reference_trials[n]
        failures = int((collected != n).sum())
        rate = failures / FAILURE_RUNS
        exact = failure_probability(n, FULL_SCHEDULE)
        if rate > FULL_SCHEDULE.epsilon:
            bad.append(f"n={n}: rate {rate} > eps")
        if failures == 0:
            # Binomial stderr degenerates; use the rule-of-three bound.
            if exact > 3.0 / FAILURE_RUNS:
                bad.append(f"n={n}: exact {exact:.2e} above rule-of-three bound")
        else:
            stderr = math.sqrt(rate * (1 - rate) / FAILURE_RUNS)
            if abs(rate - exact) > 3 * stderr:
                bad.append(f"n={n}: |{rate} - {exact:.2e}| > 3 * {stderr:.2e}")
    check("failure rate below tolerance and near exact value", not bad, "; ".join(bad))


def test_threshold_tail_grid(tail_grid):
    """Exact tail at the threshold is at most eps over the whole grid."""
    worst = (None, -1.0)
    for eps in GRID_EPSILONS:
        grid = tail_grid[eps]
        for n in range(1, GRID_LIMIT + 1):
            row = grid[n, 1:n + 1]
            margin = float(np.max(row) - eps)
            if margin > worst[1]:
                worst = ((eps, n), margin)
            if (row > eps).any():
                check("tail at threshold bounded by tolerance", False,
                      f"eps={eps}, n={n}")
    check("tail at threshold bounded by tolerance", True,
          f"worst margin {worst[1]:.3e} at {worst[0]}")


def test_tail_monotone_in_set_size(tail_grid):
    """P(T_m > tau | n) <= P(T_m > tau | m) at tau = draw_threshold(m, eps)."""
    for eps in GRID_EPSILONS:
        grid = tail_grid[eps]
        for n in range(1, GRID_LIMIT + 1):
            for m in range(1, n + 1):
                if grid[n, m] > grid[m, m]:
                    check("size-m tail dominates the size-n tail", False,
                          f"eps={eps}, m={m}, n={n}: {grid[n, m]} > {grid[m, m]}")
    check("size-m tail dominates the size-n tail", True)


def test_brute_force_oracle_equivalence():
    """DP tails match exhaustive enumeration for n <= 6, tau <= 8, to 1e-12."""
    worst = 0.0
    for n in range(1, 7):
        queries = [(m, tau) for tau in range(0, 9) for m in range(1, n + 1)]
        dp = tail_probability_grid(n, queries)
        exhaustive = {tau: brute_distinct_distribution(n, tau) for tau in range(0, 9)}
        for (m, tau), got in zip(queries, dp):
            want = float(exhaustive[tau][:m].sum())
            worst = max(worst, abs(got - want))
    check("DP equals exhaustive enumeration", worst <= 1e-12, f"worst |diff| {worst:.2e}")


def test_baseline_overhead():
    """Mean extra draws of the counter-reset variant match the exact
    expected re-collection cost within 3 standard errors."""
    config = ExperimentConfig(FULL_SCHEDULE, (50, 1000), FAILURE_RUNS,
                              ACCEPTANCE_SEED, "both")
    report = run_comparison(config)
    bad = []
    for case in report.cases:
        k = next(i for i, m in enumerate(FULL_SCHEDULE.checkpoints, start=1)
                 if case.n <= m)
        prev = FULL_SCHEDULE.checkpoints[k - 2]
        assert case.predicted_diff == expected_draws(prev + 1, case.n)
        if case.mean_diff <= 0:
            bad.append(f"n={case.n}: non-positive mean diff")
        if abs(case.mean_diff - case.predicted_diff) > 3 * case.diff_stderr:
            bad.append(
                f"n={case.n}: |{case.mean_diff:.3f} - {case.predicted_diff:.3f}|"
                f" > 3 * {case.diff_stderr:.3f}"
            )
    check("baseline overhead equals expected re-collection cost", not bad, "; ".join(bad))


def test_tightness_sweep():
    """log10 of the weight ratio: never positive, zero only at m = n,
    below -5 well before m = 20."""
    points = run_fig2(100, 0.01)
    values = {p.m: p.log10_rho for p in points}
    ok = (
        all(v <= 0.0 for v in values.values())
        and values[100] == 0.0
        and all(v < 0.0 for m, v in values.items() if m < 100)
        and any(values[m] < -5.0 for m in range(1, 20))
    )
    check("tightness ratio sweep", ok,
          f"rho(100)={values[100]}, min={min(values.values()):.1f}")


def test_cli_determinism(tmp_path):
    """Repeated invocations with the same seed are byte-identical."""

    def run(*args, stdin=b""):
        return subprocess.run([sys.executable, "-m", "randenum", *args],
                              input=stdin, capture_output=True)

    invocations = [
        ("bound", "--m", "100", "--epsilon", "0.01"),
        ("tail", "--m", "40", "--tau", "300", "--n", "75"),
        ("enumerate", "--n", "200", "--seed", "31415"),
        ("enumerate", "--n", "64", "--seed", "27", "--baseline"),
        ("fig2", "--out", None),
        ("fig1", "--runs", "60", "--seed", "42", "--sizes", "20,50", "--out", None),
        ("compare", "--runs", "40", "--seed", "42", "--sizes", "1,20", "--out", None),
    ]
    bad = []
    for invocation in invocations:
        args = list(invocation)
        path = None
        if args[-1] is None:
            path = tmp_path / f"{args[0]}.csv"
            args[-1] = str(path)  # same path both times; the file is rewritten
        outputs = []
        for _ in range(2):
            result = run(*args)
            if result.returncode != 0:
                bad.append(f"{invocation[0]}: exit {result.returncode}")
            outputs.append((result.stdout, result.stderr,
                            path.read_bytes() if path else b""))
        if outputs[0] != outputs[1]:
            bad.append(f"{invocation[0]}: outputs differ between runs")
    check("CLI byte-determinism", not bad, "; ".join(bad))
