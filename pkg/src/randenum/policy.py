"""Validated schedules and the draw-count thresholds every other module consumes.

The whole package runs on one piece of arithmetic: after
``ceil(m * ln(m / eps))`` uniform draws, seeing fewer than ``m`` distinct
elements is a safe signal that the set holds fewer than ``m`` elements, wrong
with probability at most ``eps``.  A :class:`CheckpointSchedule` applies that
rule at several candidate sizes, splitting the failure budget evenly across
the ``M`` checks so the whole run still fails with probability at most
``eps``.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import mpmath

__all__ = [
    "EPSILON_MAX",
    "DomainError",
    "FailureTolerance",
    "CheckpointSchedule",
    "draw_threshold",
    "checkpoint_threshold",
]

# Largest admissible failure tolerance.  The threshold rule is only valid for
# eps <= 1/e; this double rounds just above the exact 1/e, so float(1/e)
# itself is accepted.
EPSILON_MAX = 1.0 / math.e

# A threshold this close to an integer is recomputed at 50 digits before the
# ceiling is applied, so the integer contract does not depend on the
# platform's libm rounding.
_NEAR_INTEGER = 1e-9


class DomainError(ValueError):
    """A parameter is outside the domain its contract documents."""


def _checked_epsilon(epsilon) -> float:
    epsilon = float(epsilon)
    if math.isnan(epsilon) or not 0.0 < epsilon <= EPSILON_MAX:
        raise DomainError(f"epsilon must be in (0, 1/e], got {epsilon!r}")
    return epsilon


def _checked_positive_int(value, name: str) -> int:
    try:
        value = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class FailureTolerance:
    """Failure budget ``epsilon`` in (0, 1/e] for a whole enumeration run."""

    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _checked_epsilon(self.epsilon))

    def __float__(self) -> float:
        return self.epsilon


def draw_threshold(m, epsilon) -> int:
    """Number of draws after which fewer than ``m`` distinct elements seen
    indicates the set holds fewer than ``m`` elements, except with
    probability at most ``epsilon``.

    Returns ``ceil(m * ln(m / epsilon))``; the logarithm is natural.
    """
    m = _checked_positive_int(m, "m")
    epsilon = _checked_epsilon(epsilon)
    raw = m * math.log(m / epsilon)
    if abs(raw - round(raw)) < _NEAR_INTEGER:
        with mpmath.workdps(50):
            return int(mpmath.ceil(m * mpmath.log(m / mpmath.mpf(epsilon))))
    return math.ceil(raw)


@dataclass(frozen=True)
class CheckpointSchedule:
    """Strictly increasing candidate sizes ``[m_1, ..., m_M]`` plus a budget.

    Owns the per-checkpoint deadlines ``L_i = ceil(m_i * ln(m_i * M / eps))``:
    each of the ``M`` membership checks gets an even ``eps / M`` share of the
    failure budget.  Construction validates eagerly; an instance that exists
    is safe to hand to any driver.
    """

    checkpoints: tuple[int, ...]
    epsilon: float

    def __post_init__(self):
        cps = tuple(_checked_positive_int(c, "checkpoint") for c in self.checkpoints)
        if not cps:
            raise DomainError("checkpoints must be non-empty")
        if any(a >= b for a, b in zip(cps, cps[1:])):
            raise DomainError(f"checkpoints must be strictly increasing, got {cps}")
        object.__setattr__(self, "checkpoints", cps)
        object.__setattr__(self, "epsilon", _checked_epsilon(self.epsilon))
        per_check = self.epsilon / len(cps)
        thresholds = tuple(draw_threshold(m, per_check) for m in cps)
        if any(a > b for a, b in zip(thresholds, thresholds[1:])):
            # m * ln(m M / eps) is increasing in m on this domain, so this
            # can only fire on an arithmetic regression.
            raise DomainError(f"derived thresholds are not non-decreasing: {thresholds}")
        object.__setattr__(self, "_thresholds", thresholds)

    def __len__(self) -> int:
        return len(self.checkpoints)

    @property
    def max_checkpoint(self) -> int:
        return self.checkpoints[-1]

    def thresholds(self) -> tuple[int, ...]:
        """Deadlines ``(L_1, ..., L_M)``, cumulative draw counts."""
        return self._thresholds

    def threshold(self, i) -> int:
        """Deadline ``L_i`` for the 1-based checkpoint index ``i``."""
        i = operator.index(i)
        if not 1 <= i <= len(self.checkpoints):
            raise DomainError(f"checkpoint index must be in 1..{len(self.checkpoints)}, got {i}")
        return self._thresholds[i - 1]


def checkpoint_threshold(schedule: CheckpointSchedule, i) -> int:
    """Deadline ``L_i`` of ``schedule``; equals
    ``draw_threshold(m_i, epsilon / M)``."""
    return schedule.threshold(i)
