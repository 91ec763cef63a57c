"""Enumeration drivers over a pluggable sampler.

``enumerate_improved`` keeps one cumulative draw counter and checks the
collection size against each checkpoint at that checkpoint's precomputed
deadline; in a successful run its draw count is a deterministic constant.
``enumerate_baseline`` is the counter-reset variant it is measured against:
it restarts its window every time the collection outgrows the current
checkpoint, paying an extra collection phase before the final window.
``enumerate_stream`` runs the improved control flow over a finite token
stream instead of a live sampler.

Elements are opaque: anything hashable and equality-comparable works.  The
bundled :class:`UniformSampler` draws integers ``0..n-1`` from a seeded
PCG64 generator; trial seeds derive from ``(master_seed, n, trial_index)``
through ``numpy.random.SeedSequence``, so parallel trials get reproducible
independent streams.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Iterator

import numpy as np

from .policy import CheckpointSchedule, DomainError

__all__ = [
    "StopReason",
    "CheckpointRecord",
    "EnumerationOutcome",
    "StreamFormatError",
    "UniformSampler",
    "CountingSampler",
    "RecordingSampler",
    "enumerate_improved",
    "enumerate_baseline",
    "enumerate_stream",
    "iter_tokens",
]


class StopReason(Enum):
    """Why a driver returned."""

    CHECKPOINT = "checkpoint"            # collection size fell short at a checkpoint
    EXHAUSTED = "exhausted"              # every checkpoint passed without a break
    STREAM_ENDED = "stream-exhausted"    # token stream ran dry mid-window


@dataclass(frozen=True)
class CheckpointRecord:
    """One checkpoint evaluation: 1-based index, cumulative draws, |S|."""

    index: int
    samples: int
    distinct: int


@dataclass(frozen=True)
class EnumerationOutcome:
    collected: frozenset
    total_samples: int
    stop_checkpoint: int | None
    reason: StopReason
    trace: tuple[CheckpointRecord, ...]

    def stop_label(self) -> str:
        """Printable stop location: a checkpoint index or the stop reason."""
        if self.stop_checkpoint is not None:
            return str(self.stop_checkpoint)
        return self.reason.value


class StreamFormatError(ValueError):
    """A token stream violated the protocol (e.g. an empty token)."""

    def __init__(self, position: int, message: str):
        super().__init__(f"token {position}: {message}")
        self.position = position


class UniformSampler:
    """Uniform draws over ``{0, ..., n-1}``, deterministic per seed.

    ``seed`` may be an int or a ``numpy.random.SeedSequence``.  Block draws
    consume the generator stream exactly like repeated single draws, so a
    recorded sequence replays identically however it was produced.
    """

    def __init__(self, n, seed):
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.n = int(n)
        self._rng = np.random.default_rng(seed)

    @classmethod
    def for_trial(cls, n, master_seed, trial_index) -> "UniformSampler":
        """Sampler for one trial of an experiment; the per-trial seed is
        ``SeedSequence((master_seed, n, trial_index))``."""
        return cls(n, np.random.SeedSequence((master_seed, n, trial_index)))

    def draw(self) -> int:
        return int(self._rng.integers(0, self.n))

    def draw_block(self, k: int) -> list[int]:
        return self._rng.integers(0, self.n, size=k).tolist()


class CountingSampler:
    """Wrapper counting every element handed out; for audit and tests."""

    def __init__(self, inner):
        self._inner = inner
        self.draws = 0

    def draw(self):
        self.draws += 1
        return self._inner.draw()

    def draw_block(self, k: int):
        block = _draw_block(self._inner, k)
        self.draws += len(block)
        return block


class RecordingSampler:
    """Wrapper keeping every element handed out, for later replay."""

    def __init__(self, inner):
        self._inner = inner
        self.tokens: list = []

    def draw(self):
        token = self._inner.draw()
        self.tokens.append(token)
        return token

    def draw_block(self, k: int):
        block = _draw_block(self._inner, k)
        self.tokens.extend(block)
        return block


def _draw_block(sampler, k: int):
    block_fn = getattr(sampler, "draw_block", None)
    if block_fn is not None:
        return block_fn(k)
    return [sampler.draw() for _ in range(k)]


def enumerate_improved(sampler, schedule: CheckpointSchedule) -> EnumerationOutcome:
    """Run the checkpointed enumeration over ``sampler``.

    Sampling continues while the cumulative draw count is below the current
    checkpoint's deadline, so checkpoint ``i`` is evaluated at exactly
    ``L_i`` draws; the run stops at the first checkpoint whose target size
    the collection misses.  When the largest checkpoint is at least the true
    set size, the run collects everything with probability at least
    ``1 - epsilon``, and every successful run that breaks at checkpoint ``k``
    costs exactly ``L_k`` draws.
    """
    collected: set[Hashable] = set()
    t = 0
    trace: list[CheckpointRecord] = []
    for i, (m_i, deadline) in enumerate(zip(schedule.checkpoints, schedule.thresholds()), start=1):
        if t < deadline:
            collected.update(_draw_block(sampler, deadline - t))
            t = deadline
        trace.append(CheckpointRecord(i, t, len(collected)))
        if len(collected) < m_i:
            return EnumerationOutcome(frozenset(collected), t, i, StopReason.CHECKPOINT, tuple(trace))
    return EnumerationOutcome(frozenset(collected), t, None, StopReason.EXHAUSTED, tuple(trace))


def enumerate_baseline(sampler, schedule: CheckpointSchedule) -> EnumerationOutcome:
    """Run the counter-reset enumeration over ``sampler``.

    One draw at a time: whenever the collection outgrows the current
    checkpoint ``m_i``, the current position advances to the smallest
    checkpoint that still covers the collection and the window counter
    resets to zero; the run stops once a full window ``L_i`` passes without
    the collection outgrowing ``m_i``.  Trace entries record each advance
    and the final stop.
    """
    checkpoints = schedule.checkpoints
    deadlines = schedule.thresholds()
    collected: set[Hashable] = set()
    i = 0
    window = 0
    total = 0
    trace: list[CheckpointRecord] = []
    while True:
        if window >= deadlines[i]:
            break
        collected.add(sampler.draw())
        total += 1
        window += 1
        if len(collected) > checkpoints[i]:
            j = bisect_left(checkpoints, len(collected))
            if j < len(checkpoints):
                i = j
                window = 0
                trace.append(CheckpointRecord(i + 1, total, len(collected)))
            # No checkpoint covers the collection: keep drawing out the
            # current window; no further resets can happen.
    trace.append(CheckpointRecord(i + 1, total, len(collected)))
    return EnumerationOutcome(frozenset(collected), total, i + 1, StopReason.CHECKPOINT, tuple(trace))


def enumerate_stream(tokens: Iterable[Hashable], schedule: CheckpointSchedule) -> EnumerationOutcome:
    """Improved control flow with draws taken from ``tokens``.

    A stream that ends mid-window produces a ``STREAM_ENDED`` outcome
    carrying the partial collection instead of raising.
    """
    it = iter(tokens)
    collected: set[Hashable] = set()
    t = 0
    trace: list[CheckpointRecord] = []
    for i, (m_i, deadline) in enumerate(zip(schedule.checkpoints, schedule.thresholds()), start=1):
        while t < deadline:
            try:
                token = next(it)
            except StopIteration:
                return EnumerationOutcome(
                    frozenset(collected), t, None, StopReason.STREAM_ENDED, tuple(trace)
                )
            collected.add(token)
            t += 1
        trace.append(CheckpointRecord(i, t, len(collected)))
        if len(collected) < m_i:
            return EnumerationOutcome(frozenset(collected), t, i, StopReason.CHECKPOINT, tuple(trace))
    return EnumerationOutcome(frozenset(collected), t, None, StopReason.EXHAUSTED, tuple(trace))


def iter_tokens(lines: Iterable[bytes]) -> Iterator[bytes]:
    """Newline-delimited token protocol over a binary stream.

    A token is any non-empty byte sequence without a newline; bytes compare
    exactly (no trimming beyond the delimiter).  An empty line is malformed
    and raises :class:`StreamFormatError` with its 1-based position.
    """
    for position, raw in enumerate(lines, start=1):
        token = raw[:-1] if raw.endswith(b"\n") else raw
        if not token:
            raise StreamFormatError(position, "empty token")
        yield token
