"""Run loop, scheduling, and rng stream behavior, tested with stub models."""

import numpy as np
import pytest

from tumornet.engine import (
    TERM_DISCONNECTED,
    TERM_EXTINCT,
    TERM_MAX_STEPS,
    RngStream,
    StepRecord,
    TimeSeries,
    collect,
    run,
    step,
)
from tumornet.graph_core import Graph


class StubModel:
    """Minimal model: agents are (id, alive) pairs, activation logs order."""

    def __init__(self, graph, n_agents, seed=0):
        self.graph = graph
        self.step_count = 0
        self.records = []
        self.schedule_rng = RngStream(seed).substream("schedule")
        self.alive = {i: True for i in range(n_agents)}
        self.activation_log = []
        self.on_activate = None

    def live_ids(self):
        return sorted(i for i, ok in self.alive.items() if ok)

    def activate(self, agent_id):
        self.activation_log.append((self.step_count, agent_id))
        if self.on_activate is not None:
            self.on_activate(self, agent_id)

    def state_counts(self):
        live = sum(self.alive.values())
        return (live, 0, 0, len(self.alive) - live)


def _connected_graph(n):
    g = Graph(n)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    return g


class TestRngStream:
    def test_negative_seed_rejected(self):
        with pytest.raises(ValueError):
            RngStream(-1)

    def test_same_label_same_stream(self):
        a = RngStream(5).substream("graph").random(8)
        b = RngStream(5).substream("graph").random(8)
        assert np.array_equal(a, b)

    def test_labels_are_independent(self):
        a = RngStream(5).substream("graph").random(8)
        b = RngStream(5).substream("schedule").random(8)
        assert not np.array_equal(a, b)

    def test_counter_advances_stream(self):
        a = RngStream(5).substream("graph", counter=0).random(8)
        b = RngStream(5).substream("graph", counter=1).random(8)
        assert not np.array_equal(a, b)

    def test_seeds_are_independent(self):
        a = RngStream(5).substream("graph").random(8)
        b = RngStream(6).substream("graph").random(8)
        assert not np.array_equal(a, b)


class TestStepRecord:
    def test_count_live(self):
        r = StepRecord(0, 10, 20, 3, 2, 1, 4, 2.0)
        assert r.count_live == 6

    def test_frozen(self):
        r = StepRecord(0, 10, 20, 3, 2, 1, 4, 2.0)
        with pytest.raises(AttributeError):
            r.step = 1


class TestCollect:
    def test_snapshot_fields(self):
        m = StubModel(_connected_graph(4), n_agents=4)
        r = collect(m)
        assert r == StepRecord(0, 4, 3, 4, 0, 0, 0, 0.75)

    def test_does_not_mutate(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        collect(m)
        assert m.step_count == 0
        assert m.records == []
        assert m.activation_log == []


class TestStep:
    def test_every_live_agent_activated_once(self):
        m = StubModel(_connected_graph(5), n_agents=5)
        step(m)
        assert sorted(a for _, a in m.activation_log) == [0, 1, 2, 3, 4]

    def test_dead_agents_skipped(self):
        m = StubModel(_connected_graph(5), n_agents=5)
        m.alive[2] = False
        step(m)
        assert sorted(a for _, a in m.activation_log) == [0, 1, 3, 4]

    def test_agents_spawned_mid_step_wait(self):
        m = StubModel(_connected_graph(4), n_agents=4)

        def spawn_once(model, agent_id):
            if agent_id == 0 and len(model.alive) == 4:
                model.alive[99] = True

        m.on_activate = spawn_once
        step(m)
        first = [a for s, a in m.activation_log if s == 0]
        assert 99 not in first
        step(m)
        second = [a for s, a in m.activation_log if s == 1]
        assert 99 in second

    def test_order_varies_but_set_does_not(self):
        m = StubModel(_connected_graph(6), n_agents=6)
        orders = []
        for expected_step in range(20):
            step(m)
            orders.append(tuple(a for s, a in m.activation_log if s == expected_step))
        assert all(sorted(o) == [0, 1, 2, 3, 4, 5] for o in orders)
        assert len(set(orders)) > 1

    def test_schedule_is_seed_deterministic(self):
        logs = []
        for _ in range(2):
            m = StubModel(_connected_graph(6), n_agents=6, seed=17)
            for _ in range(5):
                step(m)
            logs.append(m.activation_log)
        assert logs[0] == logs[1]

    def test_appends_record_and_advances_count(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        r = step(m)
        assert m.step_count == 1
        assert m.records == [r]
        assert r.step == 1

    def test_empty_live_set_still_steps(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        m.alive = {i: False for i in range(3)}
        r = step(m)
        assert r.count_live == 0
        assert m.activation_log == []


class TestRun:
    def test_zero_steps_single_record(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        series = run(m, max_steps=0)
        assert len(series.records) == 1
        assert series.records[0].step == 0
        assert series.termination == TERM_MAX_STEPS

    def test_max_steps_reached(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        series = run(m, max_steps=10)
        assert len(series.records) == 11
        assert [r.step for r in series.records] == list(range(11))
        assert series.termination == TERM_MAX_STEPS

    def test_extinction_stops_after_the_fatal_step(self):
        m = StubModel(_connected_graph(3), n_agents=3)

        def kill_all(model, agent_id):
            model.alive[agent_id] = False

        m.on_activate = kill_all
        series = run(m, max_steps=10)
        assert series.termination == TERM_EXTINCT
        assert len(series.records) == 2
        assert series.records[1].step == 1
        assert series.records[1].count_live == 0

    def test_disconnected_start_stops_at_step_one(self):
        series = run(StubModel(Graph(2), n_agents=2), max_steps=10)
        assert series.termination == TERM_DISCONNECTED
        assert len(series.records) == 2

    def test_disconnection_checked_before_extinction(self):
        m = StubModel(Graph(2), n_agents=2)

        def kill_all(model, agent_id):
            model.alive[agent_id] = False

        m.on_activate = kill_all
        series = run(m, max_steps=10)
        assert series.termination == TERM_DISCONNECTED

    def test_negative_max_steps_rejected(self):
        with pytest.raises(ValueError):
            run(StubModel(_connected_graph(2), n_agents=2), max_steps=-1)

    def test_requires_fresh_model(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        step(m)
        with pytest.raises(ValueError):
            run(m, max_steps=5)

    def test_series_is_a_copy(self):
        m = StubModel(_connected_graph(3), n_agents=3)
        series = run(m, max_steps=2)
        series.records.clear()
        assert len(m.records) == 3

    def test_timeseries_defaults(self):
        ts = TimeSeries()
        assert ts.records == [] and ts.termination is None
