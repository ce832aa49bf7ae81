"""Grid maps: cells, directions, adjacency and full-map shortest distances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple


class InvalidCellError(ValueError):
    """A cell that is not traversable was used where one is required."""


class UnreachableError(ValueError):
    pass


class Cell(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"[{self.x}, {self.y}]"

    def shifted(self, direction: "Direction") -> "Cell":
        dx, dy = direction.delta
        return Cell(self.x + dx, self.y + dy)


class Direction(str, Enum):
    # Declaration order is the tie-break order used by every scripted policy.
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]

    @classmethod
    def parse(cls, text: str) -> "Direction":
        """Case-insensitive lookup; raises ValueError on anything else."""
        return cls(text.strip().lower())


_DELTAS = {
    Direction.UP: (0, 1),
    Direction.DOWN: (0, -1),
    Direction.LEFT: (-1, 0),
    Direction.RIGHT: (1, 0),
}

DIRECTIONS: tuple[Direction, ...] = tuple(Direction)


def cell_sort_key(cell: Cell) -> tuple[int, int]:
    """Lexicographic (y, x) order used for deterministic tie-breaking."""
    return (cell.y, cell.x)


def step_direction(a: Cell, b: Cell) -> Direction | None:
    """Direction that moves from ``a`` to the 4-neighbour ``b``, else None."""
    for d in DIRECTIONS:
        if a.shifted(d) == b:
            return d
    return None


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    traversable: frozenset[Cell]
    start: Cell
    # BFS results keyed by source cell; filled lazily, safe to race on.
    _dist_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @classmethod
    def from_obstacles(cls, width: int, height: int, start: Cell, obstacles: Iterable[Cell]) -> "GridMap":
        blocked = {Cell(*c) for c in obstacles}
        cells = frozenset(
            Cell(x, y) for x in range(width) for y in range(height) if (x, y) not in blocked
        )
        return cls(width, height, cells, Cell(*start))

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell.x < self.width and 0 <= cell.y < self.height

    def is_traversable(self, cell: Cell) -> bool:
        return cell in self.traversable

    @cached_property
    def obstacles(self) -> frozenset[Cell]:
        return frozenset(
            Cell(x, y)
            for x in range(self.width)
            for y in range(self.height)
            if (x, y) not in self.traversable
        )

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Traversable 4-neighbours of ``cell`` in direction order."""
        out = []
        for d in DIRECTIONS:
            n = cell.shifted(d)
            if n in self.traversable:
                out.append(n)
        return out

    def distances_from(self, source: Cell) -> dict[Cell, int]:
        """BFS distances from ``source`` to every traversable cell."""
        cached = self._dist_cache.get(source)
        if cached is not None:
            return cached
        if source not in self.traversable:
            raise InvalidCellError(f"{source} is not traversable")
        dist = bfs_distances(source, self.neighbors)
        self._dist_cache[source] = dist
        return dist

    def is_connected(self) -> bool:
        if not self.traversable:
            return False
        anchor = self.start if self.start in self.traversable else next(iter(self.traversable))
        return len(bfs_distances(anchor, self.neighbors)) == len(self.traversable)


def bfs_distances(source: Cell, neighbors) -> dict[Cell, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for nxt in neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def admissible_moves(grid: GridMap, cell: Cell) -> frozenset[Direction]:
    if cell not in grid.traversable:
        raise InvalidCellError(f"{cell} is not traversable")
    return frozenset(d for d in DIRECTIONS if cell.shifted(d) in grid.traversable)


def ordered_moves(moves: Iterable[Direction]) -> list[Direction]:
    moves = set(moves)
    return [d for d in DIRECTIONS if d in moves]


def shortest_distance(grid: GridMap, a: Cell, b: Cell) -> int:
    if b not in grid.traversable:
        raise InvalidCellError(f"{b} is not traversable")
    dist = grid.distances_from(a)
    if b not in dist:
        raise UnreachableError(f"no path from {a} to {b}")
    return dist[b]
