"""The no-progress segment and its stale score.

Since the last progress event the walk is kept as a multigraph of visited
cells and undirected edges. The stale score adds the cyclomatic number of
that walk to the reuse of edges and cells beyond two traversals/visits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.grid import Cell

REUSE_BUDGET = 2


def edge_key(a: Cell, b: Cell) -> tuple[Cell, Cell]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class NoProgressSegment:
    visits: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    e: int = 0
    n: int = 0

    @classmethod
    def fresh(cls, cell: Cell) -> "NoProgressSegment":
        return cls({cell: 1}, {})

    @property
    def c(self) -> int:
        # the walk is connected, so this is its cyclomatic number
        return len(self.edges) - len(self.visits) + 1

    @property
    def stale(self) -> int:
        return self.c + self.e + self.n

    @property
    def readout(self) -> tuple[int, int, int, int]:
        return (self.c, self.e, self.n, self.stale)


def advance_segment(seg: NoProgressSegment, frm: Cell, to: Cell, progress: bool) -> NoProgressSegment:
    if progress:
        return NoProgressSegment.fresh(to)
    visits = dict(seg.visits)
    edges = dict(seg.edges)
    e, n = seg.e, seg.n
    visits[to] = visits.get(to, 0) + 1
    if visits[to] > REUSE_BUDGET:
        n += 1
    if frm != to:
        key = edge_key(frm, to)
        edges[key] = edges.get(key, 0) + 1
        if edges[key] > REUSE_BUDGET:
            e += 1
    return NoProgressSegment(visits, edges, e, n)


def walk_readouts(cells: list[Cell]) -> list[tuple[int, int, int, int]]:
    """(c, e, n, S) after each prefix of a walk that makes no progress."""
    seg = NoProgressSegment.fresh(cells[0])
    out = [seg.readout]
    for a, b in zip(cells, cells[1:]):
        seg = advance_segment(seg, a, b, False)
        out.append(seg.readout)
    return out
