"""Task DAG types and precondition logic.

Preconditions are kept in disjunctive normal form: a node is satisfiable
when every parent in at least one option is achieved. A single option is an
AND node, several singleton options an OR node, and no options at all marks
a primitive node that is satisfied from the start.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Collection, Iterable, Iterator

from .grid import Cell

NodeId = str


@dataclass(frozen=True)
class Precondition:
    options: tuple[tuple[NodeId, ...], ...] = ()

    @classmethod
    def all_of(cls, *parents: NodeId) -> "Precondition":
        return cls((tuple(parents),)) if parents else cls()

    @classmethod
    def any_of(cls, *parents: NodeId) -> "Precondition":
        return cls(tuple((p,) for p in parents))

    @property
    def parents(self) -> frozenset[NodeId]:
        return frozenset(p for opt in self.options for p in opt)

    def satisfied(self, achieved: Collection[NodeId]) -> bool:
        if not self.options:
            return True
        return any(all(p in achieved for p in opt) for opt in self.options)


@dataclass(frozen=True)
class TaskNode:
    id: NodeId
    label: str
    location: Cell | None
    precondition: Precondition = Precondition()
    is_goal: bool = False

    def placed_at(self, cell: Cell) -> "TaskNode":
        return replace(self, location=cell)


def precondition_satisfied(node: TaskNode, achieved: Collection[NodeId]) -> bool:
    return node.precondition.satisfied(achieved)


@dataclass(frozen=True)
class TaskDag:
    nodes: tuple[TaskNode, ...]
    goal: NodeId
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        self._index.update({n.id: n for n in self.nodes})

    def __iter__(self) -> Iterator[TaskNode]:
        return iter(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, node_id: NodeId) -> TaskNode:
        return self._index[node_id]

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._index

    @property
    def ids(self) -> list[NodeId]:
        return [n.id for n in self.nodes]

    @property
    def goal_node(self) -> TaskNode:
        return self._index[self.goal]

    @cached_property
    def children(self) -> dict[NodeId, tuple[NodeId, ...]]:
        """Reverse index of the dependency edges, in node order."""
        kids: dict[NodeId, list[NodeId]] = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            for p in n.precondition.parents:
                if p in kids:
                    kids[p].append(n.id)
        return {k: tuple(v) for k, v in kids.items()}

    def parents(self, node_id: NodeId) -> frozenset[NodeId]:
        return self._index[node_id].precondition.parents

    @cached_property
    def by_location(self) -> dict[Cell, TaskNode]:
        return {n.location: n for n in self.nodes if n.location is not None}

    def node_at(self, cell: Cell) -> TaskNode | None:
        return self.by_location.get(cell)

    def with_locations(self, locations: dict[NodeId, Cell]) -> "TaskDag":
        return TaskDag(tuple(n.placed_at(locations[n.id]) for n in self.nodes), self.goal)

    def with_labels(self, labels: Iterable[str]) -> "TaskDag":
        return TaskDag(tuple(replace(n, label=lab) for n, lab in zip(self.nodes, labels)), self.goal)

    def depths(self) -> dict[NodeId, int]:
        """Longest-path depth from the primitive nodes. Assumes acyclicity."""
        memo: dict[NodeId, int] = {}

        def depth(nid: NodeId) -> int:
            if nid not in memo:
                ps = [p for p in self.parents(nid) if p in self]
                memo[nid] = 1 + max(depth(p) for p in ps) if ps else 0
            return memo[nid]

        for n in self.nodes:
            depth(n.id)
        return memo


def achievable_fixpoint(dag: TaskDag, achieved: Iterable[NodeId] = ()) -> set[NodeId]:
    """Repeatedly achieve any node whose precondition holds until nothing changes."""
    done = set(achieved)
    changed = True
    while changed:
        changed = False
        for n in dag.nodes:
            if n.id not in done and n.precondition.satisfied(done):
                done.add(n.id)
                changed = True
    return done
