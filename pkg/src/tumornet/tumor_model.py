"""Cell agents, control factors, and stochastic transitions on a growing graph.

Each graph node carries exactly one cell agent. Three control factors in
[0, 1] steer the dynamics: angiogenesis feeds metastasis and growth,
recovery clears metastatic cells and wakes quiescent ones, quiescence
pushes normal cells dormant when angiogenesis is low.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import graph_core
from .engine import RngStream, StepRecord
from .graph_core import DENSE_SAMPLER_LIMIT, EdgeProbability, Graph


class ConfigError(ValueError):
    """Invalid model or sweep configuration."""


class CellState(enum.Enum):
    NORMAL = "normal"
    QUIESCENT = "quiescent"
    METASTATIC = "metastatic"
    DEAD = "dead"


# Preset levels for each control factor.
FACTOR_LEVELS = {
    "angiogenesis": {"low": 0.0, "medium": 0.4, "high": 1.0},
    "recovery": {"low": 0.1, "medium": 0.3, "high": 1.0},
    "quiescent": {"low": 0.1, "medium": 0.5, "high": 1.0},
}

# The factor table row is named "quiescent"; the config key and the
# ControlFactors field use the noun form. Accept both.
_FACTOR_ALIASES = {"quiescence": "quiescent"}


def factor_level(factor: str, level: str) -> float:
    """Look up a preset, e.g. ("angiogenesis", "medium") -> 0.4."""
    name = _FACTOR_ALIASES.get(factor, factor)
    row = FACTOR_LEVELS.get(name)
    if row is None:
        raise ConfigError(f"unknown control factor {factor!r}")
    value = row.get(level)
    if value is None:
        raise ConfigError(f"unknown level {level!r} for factor {factor!r}")
    return value


@dataclass(frozen=True)
class ControlFactors:
    angiogenesis: float
    recovery: float
    quiescence: float

    def __post_init__(self):
        for name in ("angiogenesis", "recovery", "quiescence"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")


MEDIUM_FACTORS = ControlFactors(angiogenesis=0.4, recovery=0.3, quiescence=0.5)


@dataclass(frozen=True)
class ModelConfig:
    """Parameters for a single run.

    When p is None it is derived as K/(n_initial - 1), the density whose
    expected average degree is K. That value sits below the connectivity
    threshold for realistic sizes, so starting such a run requires
    allow_below_threshold; the run then stops on its own once the
    disconnected start is observed.

    Attributes:
        n_initial: Starting cell count, at least 1.
        K: Configured average degree (typical range 3..8).
        p: Explicit edge probability, or None to derive it from K.
        factors: The three control factors.
        spawn_rate: Growth probability scale for metastatic cells.
        metastasis_rate: Degree-weighted metastasis probability scale.
        apoptosis_rate: Baseline death probability for normal cells.
        max_steps: Default step budget for run().
        seed: Root seed; all substreams derive from it.
        allow_below_threshold: Permit a start that is almost surely
            disconnected instead of raising.
    """

    n_initial: int
    K: int = 4
    p: float | None = None
    factors: ControlFactors = MEDIUM_FACTORS
    spawn_rate: float = 0.25
    metastasis_rate: float = 0.5
    apoptosis_rate: float = 0.01
    max_steps: int = 500
    seed: int = 0
    allow_below_threshold: bool = False

    def __post_init__(self):
        if self.n_initial < 1:
            raise ConfigError(f"n_initial must be at least 1, got {self.n_initial}")
        if self.K < 1:
            raise ConfigError(f"K must be at least 1, got {self.K}")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        for name in ("spawn_rate", "metastasis_rate", "apoptosis_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")
        if self.max_steps < 0:
            raise ConfigError(f"max_steps must be non-negative, got {self.max_steps}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")

    @property
    def edge_prob(self) -> float:
        """Explicit p, or the density that makes the expected degree K."""
        if self.p is not None:
            return self.p
        if self.n_initial == 1:
            return 1.0
        return min(1.0, self.K / (self.n_initial - 1))


@dataclass(slots=True)
class CellAgent:
    """One cell bound to one graph node; agent_id equals the node id."""

    agent_id: int
    node: int
    state: CellState
    is_stem: bool


class Model:
    """Mutable simulation state, driven by the engine's step loop."""

    def __init__(self, config: ModelConfig, graph: Graph, agents: list[CellAgent], rng: RngStream):
        self.config = config
        self.graph = graph
        self.agents = agents
        self.step_count = 0
        self.records: list[StepRecord] = []
        self.rng = rng
        self.schedule_rng = rng.substream("schedule")
        self._trans_rng = rng.substream("transitions")
        self._growth_rng = rng.substream("growth")
        self._counts = {state: 0 for state in CellState}
        for agent in agents:
            self._counts[agent.state] += 1

    def live_ids(self) -> list[int]:
        dead = CellState.DEAD
        return [a.agent_id for a in self.agents if a.state is not dead]

    def state_counts(self) -> tuple[int, int, int, int]:
        c = self._counts
        return (
            c[CellState.NORMAL],
            c[CellState.QUIESCENT],
            c[CellState.METASTATIC],
            c[CellState.DEAD],
        )

    def activate(self, agent_id: int) -> None:
        agent_step(self.agents[agent_id], self, self._trans_rng)

    def set_state(self, agent: CellAgent, new_state: CellState) -> None:
        self._counts[agent.state] -= 1
        agent.state = new_state
        self._counts[new_state] += 1

    def register(self, agent: CellAgent) -> None:
        self.agents.append(agent)
        self._counts[agent.state] += 1


def init_model(config: ModelConfig) -> Model:
    """Build the starting population: an ER graph, one Normal stem cell per node.

    Raises ConfigError when the edge probability sits at or below the
    connectivity threshold and the config does not opt into a disconnected
    start.
    """
    p = config.edge_prob
    ep = EdgeProbability.for_size(p, config.n_initial)
    if not ep.above_threshold and not config.allow_below_threshold:
        raise ConfigError(
            f"edge probability {p:.6g} is at or below the connectivity threshold "
            f"{ep.p_star:.6g} for n={config.n_initial}; such a graph is almost surely "
            "disconnected at the start (set allow_below_threshold to proceed)"
        )
    rng = RngStream(config.seed)
    if config.n_initial <= DENSE_SAMPLER_LIMIT:
        graph = graph_core.generate_er(config.n_initial, p, rng.substream("graph"))
    else:
        # The gap sampler gets its own stream; it is distribution-equivalent
        # to the pairwise one, not draw-for-draw identical.
        graph = graph_core.generate_er_skip(config.n_initial, p, rng.substream("graph-skip"))
    agents = [
        CellAgent(agent_id=i, node=i, state=CellState.NORMAL, is_stem=True)
        for i in range(config.n_initial)
    ]
    return Model(config, graph, agents, rng)


def agent_step(agent: CellAgent, model: Model, rng: np.random.Generator) -> None:
    """Apply one transition rule to a live agent.

    Every activation consumes exactly one uniform, whatever the outcome, so
    the transition stream layout depends only on the activation sequence.
    The rules, in state order:

      metastatic: cleared with probability recovery; otherwise spawns a new
          cell with probability angiogenesis * spawn_rate.
      quiescent: wakes to normal with probability recovery.
      normal: turns quiescent with probability quiescence * (1 - angiogenesis);
          otherwise metastasizes with probability
          min(1, angiogenesis * metastasis_rate * degree / K);
          otherwise dies with probability apoptosis_rate.
    """
    state = agent.state
    if state is CellState.DEAD:
        raise ValueError(f"agent {agent.agent_id} is dead and cannot act")
    f = model.config.factors
    u = rng.random()
    if state is CellState.METASTATIC:
        if u < f.recovery:
            model.set_state(agent, CellState.DEAD)
        elif u < f.recovery + (1.0 - f.recovery) * f.angiogenesis * model.config.spawn_rate:
            spawn_cell(agent, model, model._growth_rng)
    elif state is CellState.QUIESCENT:
        if u < f.recovery:
            model.set_state(agent, CellState.NORMAL)
    else:
        q_eff = f.quiescence * (1.0 - f.angiogenesis)
        deg = model.graph.degree(agent.node)
        m_eff = min(1.0, f.angiogenesis * model.config.metastasis_rate * deg / model.config.K)
        t1 = q_eff
        t2 = t1 + (1.0 - q_eff) * m_eff
        t3 = t2 + (1.0 - q_eff) * (1.0 - m_eff) * model.config.apoptosis_rate
        if u < t1:
            model.set_state(agent, CellState.QUIESCENT)
        elif u < t2:
            model.set_state(agent, CellState.METASTATIC)
        elif u < t3:
            model.set_state(agent, CellState.DEAD)


def spawn_cell(parent: CellAgent, model: Model, rng: np.random.Generator) -> CellAgent:
    """Grow by one cell: a new node linked to the parent and K-1 others."""
    node = graph_core.add_node_linked(model.graph, parent.node, model.config.K - 1, rng)
    child = CellAgent(agent_id=node, node=node, state=CellState.NORMAL, is_stem=False)
    model.register(child)
    return child
