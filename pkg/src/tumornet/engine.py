"""Deterministic run loop: rng streams, scheduling, and data collection.

The engine is generic over the model object it drives. A model must expose:

    graph          a graph_core.Graph (or anything with n_nodes/n_edges)
    step_count     int, number of completed steps
    records        list the engine appends StepRecords to
    schedule_rng   numpy Generator used only for activation order
    live_ids()     ids of live agents in ascending order
    activate(id)   apply one agent's transition
    state_counts() (normal, quiescent, metastatic, dead) tallies

Keeping the loop separate from the cell rules means scheduling and
collection can be tested with stub models.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import graph_core

TERM_MAX_STEPS = "max_steps"
TERM_DISCONNECTED = "disconnected"
TERM_EXTINCT = "extinct"


class RngStream:
    """A root seed fanned out into independent named substreams.

    Labels are hashed with sha256, never the process-salted built-in hash,
    so (seed, label, counter) reproduces the same generator in every
    process. Distinct labels give independent streams; drawing more from
    one subsystem never shifts another.
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = int(seed)

    def substream(self, label: str, counter: int = 0) -> np.random.Generator:
        digest = hashlib.sha256(label.encode("utf-8")).digest()
        key = int.from_bytes(digest[:16], "big")
        seq = np.random.SeedSequence([self.seed, int(counter), key])
        return np.random.default_rng(seq)


@dataclass(frozen=True)
class StepRecord:
    """Population and graph tallies after one step (or at step 0)."""

    step: int
    n_nodes: int
    n_edges: int
    count_normal: int
    count_quiescent: int
    count_metastatic: int
    count_dead: int
    volume_ratio: float

    @property
    def count_live(self) -> int:
        return self.count_normal + self.count_quiescent + self.count_metastatic


@dataclass
class TimeSeries:
    """Records from step 0 upward, plus the reason the run stopped."""

    records: list[StepRecord] = field(default_factory=list)
    termination: str | None = None


def collect(model) -> StepRecord:
    """Snapshot the model into a StepRecord without mutating anything."""
    normal, quiescent, metastatic, dead = model.state_counts()
    g = model.graph
    return StepRecord(
        step=model.step_count,
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        count_normal=normal,
        count_quiescent=quiescent,
        count_metastatic=metastatic,
        count_dead=dead,
        volume_ratio=g.n_edges / g.n_nodes,
    )


def step(model) -> StepRecord:
    """Activate every currently-live agent once, in fresh random order.

    The live set is snapshotted before any activation, so agents spawned
    during the step wait for the next one. The permutation comes from the
    model's "schedule" stream and is the only randomness consumed here.
    """
    live = model.live_ids()
    if live:
        order = model.schedule_rng.permutation(len(live))
        for k in order:
            model.activate(live[k])
    model.step_count += 1
    record = collect(model)
    model.records.append(record)
    return record


def run(model, max_steps: int) -> TimeSeries:
    """Drive step() until max_steps, disconnection, or extinction.

    The step-0 record captures the initial state. Both stop conditions are
    evaluated after each step, so the record of the step that tripped one
    is always part of the series. A graph that starts disconnected stops
    the run right after the first step.
    """
    if max_steps < 0:
        raise ValueError(f"max_steps must be non-negative, got {max_steps}")
    if model.step_count != 0 or model.records:
        raise ValueError("run() requires a freshly initialized model")
    model.records.append(collect(model))
    termination = TERM_MAX_STEPS
    while model.step_count < max_steps:
        record = step(model)
        if not graph_core.is_connected(model.graph):
            termination = TERM_DISCONNECTED
            break
        if record.count_live == 0:
            termination = TERM_EXTINCT
            break
    return TimeSeries(records=list(model.records), termination=termination)
