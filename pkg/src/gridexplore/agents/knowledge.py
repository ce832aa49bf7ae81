"""What an agent can know: a fold over its own observations."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from ..core.grid import DIRECTIONS, Cell, cell_sort_key
from ..env.state import Observation
from ..env.text import format_prerequisites


@dataclass(frozen=True)
class NodeRecord:
    label: str
    position: Cell
    prerequisites: tuple[tuple[str, ...], ...]
    successors: tuple[str, ...]


@dataclass(frozen=True)
class AgentKnowledge:
    convention: str = "[x, y] where up=y+1, down=y-1, left=x-1, right=x+1"
    position: Cell | None = None
    visited: tuple[Cell, ...] = ()
    passable: frozenset[Cell] = frozenset()
    obstacles: frozenset[Cell] = frozenset()
    nodes: tuple[NodeRecord, ...] = ()
    achieved: tuple[str, ...] = ()
    goal: str | None = None
    steps: int = 0

    @property
    def frontier(self) -> tuple[Cell, ...]:
        seen = set(self.visited)
        return tuple(sorted((c for c in self.passable if c not in seen), key=cell_sort_key))

    def record(self, label: str) -> NodeRecord | None:
        return next((r for r in self.nodes if r.label == label), None)

    @property
    def activatable(self) -> tuple[NodeRecord, ...]:
        done = set(self.achieved)
        return tuple(
            r
            for r in self.nodes
            if r.label not in done
            and (not r.prerequisites or any(set(opt) <= done for opt in r.prerequisites))
        )

    def observe(self, obs: Observation) -> "AgentKnowledge":
        pos = obs.position
        visited = self.visited if pos in self.visited else self.visited + (pos,)
        passable = set(self.passable) | {pos}
        obstacles = set(self.obstacles)
        for d in DIRECTIONS:
            nb = pos.shifted(d)
            if d in obs.admissible:
                passable.add(nb)
            elif nb.x >= 0 and nb.y >= 0:
                obstacles.add(nb)
        nodes, achieved, goal = self.nodes, self.achieved, self.goal
        d = obs.discovery
        if d is not None:
            if self.record(d.label) is None:
                nodes = nodes + (NodeRecord(d.label, pos, d.prerequisites, d.successors),)
            if d.activated and d.label not in achieved:
                achieved = achieved + (d.label,)
            if d.is_goal:
                goal = d.label
        return replace(
            self,
            position=pos,
            visited=visited,
            passable=frozenset(passable),
            obstacles=frozenset(obstacles - passable),
            nodes=nodes,
            achieved=achieved,
            goal=goal,
            steps=obs.steps_spent,
        )


def fold_observations(observations: Iterable[Observation]) -> AgentKnowledge:
    k = AgentKnowledge()
    for obs in observations:
        k = k.observe(obs)
    return k


def _cells(cells: Iterable[Cell]) -> str:
    text = ", ".join(str(c) for c in cells)
    return text or "none"


def build_memory_summary(knowledge: AgentKnowledge, goal_known: str | None = None) -> str:
    """Fixed-order restatement of the observation history."""
    k = knowledge
    goal = goal_known if goal_known is not None else k.goal
    parts = [f"From your movements so far, coordinate system: {k.convention}."]
    if goal:
        parts.append(f"The goal state is {goal}.")
    parts.append(f"You have visited {_cells(k.visited)}.")
    parts.append(f"You have not visited these cells yet, but you know you can pass through them: {_cells(k.frontier)}.")
    parts.append(
        "You know you cannot pass through these cells: "
        f"{_cells(sorted(k.obstacles, key=cell_sort_key))}."
    )
    done = set(k.achieved)
    for r in k.nodes:
        parts.append(f"You discovered {r.label} at {r.position}.")
        if r.label in done:
            parts.append("It is already activated.")
        else:
            parts.append("It is not activated yet.")
            if r.prerequisites:
                parts.append(f"To activate it, you should find {format_prerequisites(r.prerequisites)} first.")
        if r.successors:
            parts.append(f"Once it is activated, you can next pursue {', '.join(r.successors)}.")
    parts.append(f"Activated states: {', '.join(k.achieved) or 'none'}.")
    ready = ", ".join(r.label for r in k.activatable) or "none"
    parts.append(f"The discovered states whose prerequisites are already satisfied: {ready}.")
    return " ".join(parts)
