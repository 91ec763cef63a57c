"""Exact coupon-collector analysis: distinct-count DP, expectations, bounds.

These routines are the independent oracles the drivers and experiments are
checked against.  Everything here is deterministic arithmetic: a rolling
dynamic program over the distribution of "distinct elements seen after t
draws", harmonic-sum expectations, and log-space evaluations of the
quantities behind the stopping rule, so nothing underflows even when the
probabilities span hundreds of decades.
"""

from __future__ import annotations

import math
import operator

import numpy as np

from .policy import CheckpointSchedule, DomainError

__all__ = [
    "TailTable",
    "tail_probability",
    "tail_probability_grid",
    "expected_draws",
    "tail_upper_bound",
    "log_falling_ratio",
    "log_tightness_ratio",
    "failure_probability",
]

# Tolerated drift of total probability mass in the DP.
_MASS_TOLERANCE = 1e-12


def _checked_size(value, name: str) -> int:
    try:
        value = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")
    return value


class TailTable:
    """Rolling distribution of the distinct-element count for set size ``n``.

    State is the probability row ``P(D_t = i)`` for ``i = 0..n`` at the
    current draw count ``t``; construction starts at ``t = 0`` with all mass
    on zero distinct elements.  One step applies

        ``P(D_{t+1} = i) = P(D_t = i) * i/n + P(D_t = i-1) * (n-i+1)/n``

    Only the current row is kept, so memory stays O(n) regardless of how far
    the table is advanced.
    """

    def __init__(self, n):
        self.n = _checked_size(n, "n")
        counts = np.arange(self.n + 1, dtype=float)
        self._repeat = counts / self.n           # draw hits an already-seen element
        self._fresh = (self.n - counts[:-1]) / self.n  # from i distinct to i + 1
        self._row = np.zeros(self.n + 1)
        self._row[0] = 1.0
        self.t = 0

    def advance(self, steps=1) -> "TailTable":
        if steps < 0:
            raise DomainError(f"cannot advance by {steps} steps")
        row = self._row
        for _ in range(steps):
            nxt = row * self._repeat
            nxt[1:] += row[:-1] * self._fresh
            row = nxt
        self._row = row
        self.t += steps
        return self

    def row(self) -> np.ndarray:
        """Copy of the current row ``P(D_t = 0..n)``."""
        return self._row.copy()

    def prob(self, i) -> float:
        if not 0 <= i <= self.n:
            raise DomainError(f"distinct count must be in 0..{self.n}, got {i}")
        return float(self._row[i])

    def prob_below(self, m) -> float:
        """``P(D_t < m)``, i.e. the chance collection is still short of m."""
        return float(self._row[: max(m, 0)].sum())

    def drop_below(self, m) -> float:
        """Remove and return the mass with fewer than ``m`` distinct elements.

        Used to model runs leaving the process at a checkpoint; the row no
        longer sums to one afterwards.
        """
        m = min(max(m, 0), self.n + 1)
        removed = float(self._row[:m].sum())
        self._row[:m] = 0.0
        return removed

    def mass_error(self) -> float:
        """Distance of the total mass from 1 (exact compensated sum)."""
        return abs(math.fsum(self._row.tolist()) - 1.0)


def tail_probability(m, tau, n) -> float:
    """Exact ``P(T_m > tau)``: after ``tau`` uniform draws from a set of size
    ``n``, the chance that fewer than ``m`` distinct elements were seen."""
    return tail_probability_grid(n, [(m, tau)])[0]


def tail_probability_grid(n, queries) -> np.ndarray:
    """Batched :func:`tail_probability` for one ``n``.

    ``queries`` is a sequence of ``(m, tau)`` pairs; a single DP sweep up to
    the largest ``tau`` answers all of them.  Returns the probabilities
    aligned with the input order.
    """
    n = _checked_size(n, "n")
    queries = list(queries)
    by_tau: dict[int, list[int]] = {}
    for pos, (m, tau) in enumerate(queries):
        m = _checked_size(m, "m")
        if m > n:
            raise DomainError(f"m must be <= n, got m={m}, n={n}")
        tau = operator.index(tau)
        if tau < 0:
            raise DomainError(f"tau must be >= 0, got {tau}")
        by_tau.setdefault(tau, []).append(pos)
    out = np.empty(len(queries))
    table = TailTable(n)
    for tau in sorted(by_tau):
        table.advance(tau - table.t)
        if table.mass_error() > _MASS_TOLERANCE:
            raise RuntimeError(f"probability mass drifted beyond tolerance at t={tau}")
        for pos in by_tau[tau]:
            out[pos] = table.prob_below(queries[pos][0])
    return out


def expected_draws(m, n) -> float:
    """Expected draws to collect ``m`` distinct out of ``n`` elements:
    ``n * sum_{k=n-m+1}^{n} 1/k``, accumulated smallest terms first with an
    exact compensated sum."""
    m = _checked_size(m, "m")
    n = _checked_size(n, "n")
    if m > n:
        raise DomainError(f"m must be <= n, got m={m}, n={n}")
    return n * math.fsum(1.0 / k for k in range(n, n - m, -1))


def tail_upper_bound(n, tau) -> float:
    """Closed-form bound ``n * exp(-tau / n)`` on the full-collection tail
    ``P(T_n > tau)``."""
    n = _checked_size(n, "n")
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    return n * math.exp(-tau / n)


def log_falling_ratio(tau, m, x) -> float:
    """``ln[ x (x-1) ... (x-m+1) / x^tau ]`` via log-gamma.

    This is the weight whose monotone decrease in ``x`` (for ``tau`` large
    enough) makes the size-``m`` tail dominate every size-``n >= m`` tail.
    Defined for real ``x >= m >= 1``.
    """
    m = _checked_size(m, "m")
    x = float(x)
    if x < m:
        raise DomainError(f"x must be >= m, got x={x}, m={m}")
    return math.lgamma(x + 1) - math.lgamma(x - m + 1) - tau * math.log(x)


def log_tightness_ratio(tau, m, n) -> float:
    """``ln[ C(n, m) * (m / n)^tau ]``, the ratio of the size-``n`` to the
    size-``m`` falling-ratio weight; 0 when ``m == n``, very negative when
    the stopping rule is loose."""
    m = _checked_size(m, "m")
    n = _checked_size(n, "n")
    if m > n:
        raise DomainError(f"m must be <= n, got m={m}, n={n}")
    log_binom = math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
    return log_binom + tau * (math.log(m) - math.log(n))


def failure_probability(n, schedule: CheckpointSchedule) -> float:
    """Exact probability that a checkpointed run stops before seeing all
    ``n`` elements.

    Propagates the distinct-count distribution through the cumulative
    deadlines ``L_1 < L_2 < ...``; at checkpoint ``i`` the mass with fewer
    than ``m_i`` distinct elements leaves the process (a failure unless all
    ``n`` were already collected).  Mirrors the driver exactly, including the
    edge where ``n`` equals a checkpoint: mass sitting at ``D = n = m_i``
    does not leave at checkpoint ``i``.
    """
    n = _checked_size(n, "n")
    if not isinstance(schedule, CheckpointSchedule):
        raise DomainError("schedule must be a CheckpointSchedule")
    table = TailTable(n)
    failure = 0.0
    success = 0.0
    for m_i, deadline in zip(schedule.checkpoints, schedule.thresholds()):
        table.advance(deadline - table.t)
        if m_i > n:
            success += table.prob(n)
        failure += table.drop_below(min(m_i, n))
        if m_i > n:
            table._row[n] = 0.0
        drift = abs(math.fsum(table._row.tolist()) + failure + success - 1.0)
        if drift > _MASS_TOLERANCE:
            raise RuntimeError(f"probability mass drifted beyond tolerance at checkpoint m={m_i}")
    # Runs that never broke: everything but a complete collection failed.
    failure += table.prob_below(n)
    return failure
