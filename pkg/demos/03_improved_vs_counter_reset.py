#!/usr/bin/env python3
"""The price of resetting the draw counter at every passed checkpoint.

The counter-reset variant restarts its window whenever the collection
outgrows the current checkpoint, so it pays an extra collection phase:
on average the cost of re-collecting m_{k-1} + 1 elements, where m_{k-1} is
the last checkpoint below the true size. The improved driver pays the final
window only.
"""

import numpy as np

from randenum import (
    CheckpointSchedule,
    expected_draws,
    simulate_baseline_trials,
    simulate_improved_trials,
)

TRUE_SIZE = 50
RUNS = 2000
SEED = 424242

schedule = CheckpointSchedule(tuple(2 ** k for k in range(1, 11)), 0.01)
improved_totals, improved_found = simulate_improved_trials(TRUE_SIZE, schedule, SEED, RUNS)
reset_totals, reset_found = simulate_baseline_trials(TRUE_SIZE, schedule, SEED, RUNS)

both = (improved_found == TRUE_SIZE) & (reset_found == TRUE_SIZE)
diffs = (reset_totals - improved_totals)[both]

print(f"n={TRUE_SIZE}, {RUNS} paired runs, {int(both.sum())} with both variants succeeding")
print(f"improved draw count:      always {int(improved_totals[both][0])} "
      f"(std {improved_totals[both].std():.1f})")
print(f"counter-reset draw count: mean {reset_totals[both].mean():.2f} "
      f"(std {reset_totals[both].std():.2f})")
print()

predicted = expected_draws(33, TRUE_SIZE)  # re-collect 32 + 1 elements of 50
stderr = diffs.std(ddof=1) / np.sqrt(diffs.size)
print(f"observed mean overhead:  {diffs.mean():.3f} +- {stderr:.3f}")
print(f"predicted mean overhead: {predicted:.3f}")
assert abs(diffs.mean() - predicted) < 4 * stderr
print()
print("overhead distribution (draws):")
for q in (5, 25, 50, 75, 95):
    print(f"  {q:2d}th percentile: {np.percentile(diffs, q):7.1f}")
