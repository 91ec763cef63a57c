#!/usr/bin/env python3
"""Enumerate a hidden set with a provable success guarantee.

A sampler hands out elements of an unknown set uniformly at random. We only
know a rough upper bound on the set size (here: at most 1024). The driver
draws until a checkpoint deadline passes without the collection reaching the
checkpoint's size, then declares the set exhausted.
"""

from randenum import CheckpointSchedule, UniformSampler, enumerate_improved, enumerate_stream

TRUE_SIZE = 137          # hidden from the algorithm, used only to simulate
EPSILON = 0.01           # tolerated failure probability

schedule = CheckpointSchedule(tuple(2 ** k for k in range(1, 11)), EPSILON)
print(f"checkpoints: {schedule.checkpoints}")
print(f"deadlines:   {schedule.thresholds()}")
print()

sampler = UniformSampler(TRUE_SIZE, seed=2024)
outcome = enumerate_improved(sampler, schedule)

print(f"collected {len(outcome.collected)} distinct elements "
      f"in {outcome.total_samples} draws")
print(f"stopped at checkpoint {outcome.stop_label()} "
      f"(break: collection smaller than the checkpoint size)")
print()
print("checkpoint trace (index, cumulative draws, |collection|):")
for record in outcome.trace:
    marker = "  <- break" if record.index == outcome.stop_checkpoint else ""
    print(f"  {record.index:2d}  {record.samples:6d}  {record.distinct:5d}{marker}")

assert len(outcome.collected) == TRUE_SIZE, "unlucky run (probability <= 0.01)"
print()
print(f"success: all {TRUE_SIZE} elements found; the guarantee held.")

# The same control flow runs over a recorded token stream, e.g. the output
# file of an external sampler.
tokens = [f"item-{v}" for v in UniformSampler(12, seed=7).draw_block(400)]
stream_outcome = enumerate_stream(tokens, CheckpointSchedule((4, 16, 64), EPSILON))
print()
print(f"stream replay: {len(stream_outcome.collected)} distinct tokens, "
      f"{stream_outcome.total_samples} consumed, stop={stream_outcome.stop_label()}")
