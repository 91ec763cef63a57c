#!/usr/bin/env python3
"""Desk-scale reproduction of the full numerical experiments, as CSV files.

Writes three reports into demos/out/:
  fig1.csv    success draw counts and failure rates per set size
  fig2.csv    tightness sweep of the stopping-rule weight ratio
  compare.csv paired overhead of the counter-reset variant

At 10^3 runs per case this takes seconds; pass runs=100000 (or use the CLI:
`randenum fig1 --runs 100000`) for the full-scale version.
"""

from pathlib import Path

from randenum import (
    ExperimentConfig,
    default_schedule,
    run_comparison,
    run_fig1,
    run_fig2,
    write_compare_csv,
    write_fig1_csv,
    write_fig2_csv,
)

RUNS = 1000
SEED = 20260810
OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

schedule = default_schedule()
sizes = tuple(range(50, 1001, 50))

fig1 = run_fig1(ExperimentConfig(schedule, sizes, RUNS, SEED, "improved"))
write_fig1_csv(fig1, OUT / "fig1.csv")
print(f"fig1.csv: {len(fig1.cases)} cases")
for case in fig1.cases[:4]:
    print(f"  n={case.n:4d}: mean draws {case.mean_samples_success:8.1f} "
          f"(theory {case.theoretical_samples}), failure rate {case.failure_rate:.4f} "
          f"(exact {case.exact_failure:.2e})")
print("  ...")

fig2 = run_fig2(100, 0.01)
write_fig2_csv(fig2, OUT / "fig2.csv")
print(f"fig2.csv: {len(fig2)} points, "
      f"log10 ratio range [{min(p.log10_rho for p in fig2):.1f}, "
      f"{max(p.log10_rho for p in fig2):.1f}]")

compare = run_comparison(ExperimentConfig(schedule, (50, 200, 1000), RUNS, SEED, "both"))
write_compare_csv(compare, OUT / "compare.csv")
print("compare.csv:")
for case in compare.cases:
    print(f"  n={case.n:4d}: observed overhead {case.mean_diff:7.2f} "
          f"+- {case.diff_stderr:.2f}, predicted {case.predicted_diff:7.2f}")
