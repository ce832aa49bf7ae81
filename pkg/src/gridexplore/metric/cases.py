"""Required-action cases and the gain indicator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Collection, Mapping

from ..core.grid import Cell
from ..env.state import EpisodeState, pending_set

DistanceFn = Callable[[Cell], Mapping[Cell, int]]


class CaseContractError(RuntimeError):
    pass


class Case(IntEnum):
    EXPLORE = 1  # nothing pending: targets are the unobserved cells
    GOAL = 2  # goal pending: only exploitation toward it counts
    EXPLOIT = 3  # pending tasks, map fully observed
    EITHER = 4  # pending tasks and unobserved cells both exist

    @property
    def needs_exploration(self) -> bool:
        return self in (Case.EXPLORE, Case.EITHER)

    @property
    def needs_exploitation(self) -> bool:
        return self in (Case.GOAL, Case.EXPLOIT, Case.EITHER)


@dataclass(frozen=True)
class TargetCase:
    case: Case
    target_cells: frozenset[Cell]


def classify_case(state: EpisodeState) -> TargetCase:
    dag = state.env.dag
    if state.goal_achieved:
        raise CaseContractError("goal already achieved; no required action")
    pending = pending_set(state)
    unobserved = state.unobserved
    if not pending and not unobserved:
        raise CaseContractError(f"no pending task and no unobserved cell at t={state.t}")
    if not pending:
        return TargetCase(Case.EXPLORE, frozenset(unobserved))
    if dag.goal in pending:
        return TargetCase(Case.GOAL, frozenset({dag.goal_node.location}))
    spots = frozenset(dag[u].location for u in pending)
    if not unobserved:
        return TargetCase(Case.EXPLOIT, spots)
    return TargetCase(Case.EITHER, frozenset(unobserved) | spots)


def gain(
    state: EpisodeState,
    next_pos: Cell,
    targets: Collection[Cell],
    distances_from: DistanceFn | None = None,
) -> int:
    """1 if the move enters a target or gets strictly closer to at least one target.

    Distances default to shortest paths over the full traversable map.
    """
    if next_pos in targets:
        return 1
    if next_pos == state.position:
        return 0
    dist = distances_from or state.env.grid.distances_from
    before = dist(state.position)
    after = dist(next_pos)
    return int(any(after[z] < before[z] for z in targets))
