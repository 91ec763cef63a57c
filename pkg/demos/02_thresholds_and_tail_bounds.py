#!/usr/bin/env python3
"""Why the stopping rule is safe: exact tails against the closed-form bound.

The deadline for target size m is ceil(m * ln(m / eps)). At that draw count
the probability that a size-n set (n >= m) still shows fewer than m distinct
elements is at most eps. The exact dynamic program shows how much slack the
closed-form argument leaves.
"""

import math

from randenum import draw_threshold, tail_probability, tail_upper_bound

EPSILON = 0.01

print(f"deadlines at eps = {EPSILON}:")
for m in (1, 2, 10, 100, 1000):
    print(f"  m={m:5d}: {draw_threshold(m, EPSILON):7d} draws")
print()

print("exact tail at the deadline, for several true sizes n:")
print(f"{'m':>5} {'tau':>6} {'n':>5} {'P(T_m > tau)':>14} {'bound n*e^(-tau/n)':>19}")
for m, n in [(10, 10), (10, 40), (50, 50), (50, 100), (100, 100)]:
    tau = draw_threshold(m, EPSILON)
    exact = tail_probability(m, tau, n)
    closed_form = tail_upper_bound(n, tau) if m == n else float("nan")
    print(f"{m:5d} {tau:6d} {n:5d} {exact:14.3e} {closed_form:19.3e}")
print()

# The tail is largest at n = m and shrinks as the true set grows: stopping
# early is hardest to diagnose when the set barely exceeds the target.
m = 30
tau = draw_threshold(m, EPSILON)
print(f"tail decay in n at m={m}, tau={tau}:")
for n in (30, 31, 35, 60, 120):
    print(f"  n={n:4d}: {tail_probability(m, tau, n):.3e}")
print()

worst = max(tail_probability(m, draw_threshold(m, EPSILON), m) for m in range(1, 101))
print(f"worst exact tail at the deadline over m <= 100: {worst:.3e} <= {EPSILON}")
assert worst <= EPSILON
print(f"ln(1/eps) sanity: ln(1/{EPSILON}) = {math.log(1 / EPSILON):.3f}")
