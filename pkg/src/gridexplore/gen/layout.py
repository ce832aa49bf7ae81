"""Grid sizing, node placement and corridor carving."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from ..core.dag import TaskDag
from ..core.grid import Cell, GridMap
from .config import MAX_RETRIES, GenConfig, GenerationError


def grid_dimensions(node_count: int, density: float, aspect_ratio: float = 1.0) -> tuple[int, int]:
    """Smallest-area (width, height) per width whose ratio best matches ``aspect_ratio``.

    The area must reach ceil(node_count / density), and leave room for the
    start cell. Ties go to the wider grid.
    """
    target = math.ceil(node_count / Fraction(str(density)))
    target = max(target, node_count + 1)
    best = None
    for w in range(1, target + 1):
        h = math.ceil(target / w)
        score = abs(math.log(w / h) - math.log(aspect_ratio))
        key = (round(score, 12), -w)
        if best is None or key < best[0]:
            best = (key, (w, h))
    return best[1]


def lattice_path(a: Cell, b: Cell, rng: random.Random) -> list[Cell]:
    """A uniformly shuffled monotone shortest path from a to b, endpoints included."""
    dx, dy = b.x - a.x, b.y - a.y
    moves = [(1 if dx > 0 else -1, 0)] * abs(dx) + [(0, 1 if dy > 0 else -1)] * abs(dy)
    rng.shuffle(moves)
    path = [a]
    x, y = a
    for mx, my in moves:
        x, y = x + mx, y + my
        path.append(Cell(x, y))
    return path


def brush(cell: Cell, width: int) -> list[Cell]:
    lo = -((width - 1) // 2)
    span = range(lo, lo + width)
    return [Cell(cell.x + i, cell.y + j) for i in span for j in span]


def carve_corridor(path: list[Cell], width: int, w: int, h: int) -> set[Cell]:
    """Cells of a corridor of the given width along ``path``, clipped to the grid."""
    out = set()
    for c in path:
        for b in brush(c, width):
            if 0 <= b.x < w and 0 <= b.y < h:
                out.add(b)
    return out


def place_on_grid(dag: TaskDag, config: GenConfig, rng: random.Random) -> tuple[GridMap, TaskDag]:
    """Size the grid, pick the start and node cells, and carve connecting corridors.

    Corridors form a random spanning tree over the start and node cells: each
    terminal, in shuffled order, is joined to a random already-connected one
    by a randomised shortest lattice path widened to a sampled width.
    """
    w, h = grid_dimensions(len(dag), config.density, config.aspect_ratio)
    lo, hi = config.corridor_width
    cells = [Cell(x, y) for y in range(h) for x in range(w)]
    for _ in range(MAX_RETRIES):
        start = rng.choice(cells)
        spots = rng.sample([c for c in cells if c != start], len(dag))
        locations = {n.id: c for n, c in zip(dag.nodes, spots)}
        terminals = list(spots)
        rng.shuffle(terminals)
        connected = [start]
        carved = {start}
        for term in terminals:
            anchor = rng.choice(connected)
            width = rng.randint(lo, hi)
            carved |= carve_corridor(lattice_path(anchor, term, rng), width, w, h)
            connected.append(term)
        grid = GridMap(w, h, frozenset(carved), start)
        if grid.is_connected() and all(c in carved for c in spots):
            return grid, dag.with_locations(locations)
    raise GenerationError(f"could not place {len(dag)} nodes on a {w}x{h} grid")


def compute_budget(grid: GridMap, alpha: float) -> int:
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    return math.floor(Fraction(str(alpha)) * len(grid.traversable))
