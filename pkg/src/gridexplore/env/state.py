"""Episode state machine: cell knowledge, node status and budget accounting."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

from ..core.dag import NodeId, TaskNode
from ..core.grid import Cell, Direction, admissible_moves, ordered_moves
from ..gen.environment import Environment


class EpisodeOverError(RuntimeError):
    """step() was called on a terminal state."""


class CellState(str, Enum):
    OBSERVED = "observed"
    UNOBSERVED = "unobserved"
    UNKNOWN = "unknown"


class NodeStatus(str, Enum):
    UNDISCOVERED = "undiscovered"
    DISCOVERED = "discovered"
    ACHIEVED = "achieved"


class Terminal(str, Enum):
    RUNNING = "running"
    SUCCESS = "success"
    BUDGET_EXHAUSTED = "budget_exhausted"
    # infrastructure failure (e.g. model adapter exhausted); only set by drivers
    ABORTED = "aborted"


@dataclass(frozen=True)
class NodeProgress:
    status: NodeStatus = NodeStatus.UNDISCOVERED
    seen_at: int | None = None
    achieved_at: int | None = None


@dataclass(frozen=True)
class Discovery:
    """What the environment reveals about the node under the agent."""

    label: str
    activated: bool
    first_visit: bool
    prerequisites: tuple[tuple[str, ...], ...]
    successors: tuple[str, ...]
    is_goal: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "activated": self.activated,
            "first_visit": self.first_visit,
            "prerequisites": [list(o) for o in self.prerequisites],
            "successors": list(self.successors),
            "goal": self.is_goal,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Discovery":
        return cls(
            label=d["label"],
            activated=d["activated"],
            first_visit=d["first_visit"],
            prerequisites=tuple(tuple(o) for o in d["prerequisites"]),
            successors=tuple(d["successors"]),
            is_goal=d["goal"],
        )


@dataclass(frozen=True)
class Observation:
    position: Cell
    admissible: tuple[Direction, ...]
    steps_spent: int
    discovery: Discovery | None = None


@dataclass(frozen=True)
class EpisodeState:
    env: Environment = field(repr=False)
    position: Cell
    t: int
    observed: frozenset[Cell]
    unobserved: frozenset[Cell]
    progress: Mapping[NodeId, NodeProgress]
    steps_remaining: int
    terminal: Terminal = Terminal.RUNNING
    last_events: tuple[str, ...] = ()

    def cell_state(self, cell: Cell) -> CellState:
        if cell in self.observed:
            return CellState.OBSERVED
        if cell in self.unobserved:
            return CellState.UNOBSERVED
        return CellState.UNKNOWN

    def status(self, node_id: NodeId) -> NodeStatus:
        return self.progress[node_id].status

    @property
    def achieved(self) -> frozenset[NodeId]:
        return frozenset(k for k, p in self.progress.items() if p.status is NodeStatus.ACHIEVED)

    @property
    def goal_achieved(self) -> bool:
        return self.status(self.env.dag.goal) is NodeStatus.ACHIEVED

    @property
    def running(self) -> bool:
        return self.terminal is Terminal.RUNNING


def _reveal(grid, cell: Cell, observed: frozenset[Cell], unobserved: frozenset[Cell]):
    observed = observed | {cell}
    fresh = [n for n in grid.neighbors(cell) if n not in observed]
    return observed, (unobserved - {cell}) | frozenset(fresh)


def _discovery(env: Environment, node: TaskNode, activated: bool, first: bool) -> Discovery:
    dag = env.dag
    return Discovery(
        label=node.label,
        activated=activated,
        first_visit=first,
        prerequisites=tuple(tuple(dag[p].label for p in opt) for opt in node.precondition.options),
        successors=tuple(dag[c].label for c in dag.children[node.id]),
        is_goal=node.is_goal,
    )


def observe(state: EpisodeState, discovery: Discovery | None = None) -> Observation:
    return Observation(
        position=state.position,
        admissible=tuple(ordered_moves(admissible_moves(state.env.grid, state.position))),
        steps_spent=state.t,
        discovery=discovery,
    )


def reset(env: Environment) -> tuple[EpisodeState, Observation]:
    grid = env.grid
    observed, unobserved = _reveal(grid, grid.start, frozenset(), frozenset())
    state = EpisodeState(
        env=env,
        position=grid.start,
        t=0,
        observed=observed,
        unobserved=unobserved,
        progress={n.id: NodeProgress() for n in env.dag.nodes},
        steps_remaining=env.budget,
        terminal=Terminal.RUNNING if env.budget > 0 else Terminal.BUDGET_EXHAUSTED,
    )
    return state, observe(state)


def step(state: EpisodeState, action: Direction | None) -> tuple[EpisodeState, Observation]:
    """Advance one timestep.

    ``None`` or an inadmissible direction is a stay-in-place no-op that still
    consumes the timestep.
    """
    if not state.running:
        raise EpisodeOverError(f"episode already ended with {state.terminal.value}")
    env = state.env
    grid = env.grid
    t = state.t + 1
    target = state.position.shifted(action) if action is not None else state.position
    if target not in grid.traversable:
        target = state.position
    observed, unobserved = state.observed, state.unobserved
    progress = dict(state.progress)
    events: list[str] = []
    discovery = None
    if target != state.position:
        observed, unobserved = _reveal(grid, target, observed, unobserved)
        node = env.dag.node_at(target)
        if node is not None:
            prog = progress[node.id]
            first = prog.status is NodeStatus.UNDISCOVERED
            if first:
                prog = NodeProgress(NodeStatus.DISCOVERED, seen_at=t)
                events.append(f"discovered:{node.id}")
            activated = False
            if prog.status is NodeStatus.DISCOVERED:
                achieved = {k for k, p in progress.items() if p.status is NodeStatus.ACHIEVED}
                if node.precondition.satisfied(achieved):
                    prog = replace(prog, status=NodeStatus.ACHIEVED, achieved_at=t)
                    events.append(f"achieved:{node.id}")
                    activated = True
            progress[node.id] = prog
            if first or activated:
                discovery = _discovery(env, node, activated, first)
    remaining = state.steps_remaining - 1
    terminal = Terminal.RUNNING
    if progress[env.dag.goal].status is NodeStatus.ACHIEVED:
        terminal = Terminal.SUCCESS
    elif remaining <= 0:
        terminal = Terminal.BUDGET_EXHAUSTED
    new = EpisodeState(
        env=env,
        position=target,
        t=t,
        observed=observed,
        unobserved=unobserved,
        progress=progress,
        steps_remaining=remaining,
        terminal=terminal,
        last_events=tuple(events),
    )
    return new, observe(new, discovery)


def pending_set(state: EpisodeState) -> frozenset[NodeId]:
    """Discovered, not yet achieved nodes whose precondition currently holds."""
    achieved = state.achieved
    return frozenset(
        n.id
        for n in state.env.dag.nodes
        if state.progress[n.id].status is NodeStatus.DISCOVERED and n.precondition.satisfied(achieved)
    )
