"""Hand-authored environments."""

from __future__ import annotations

import random

from ..core.dag import Precondition, TaskDag, TaskNode
from ..core.grid import Cell, GridMap
from .environment import Environment
from .labels import generate_labels
from .layout import compute_budget

PASTA_LAYOUT = (
    # y = 4 at the top; S start, # obstacle
    ".....",
    ".#.#.",
    ".....",
    ".#.#.",
    "S....",
)


def grid_from_layout(rows: tuple[str, ...] | list[str]) -> GridMap:
    """Rows top to bottom; '#' is an obstacle, 'S' the start, anything else open."""
    height = len(rows)
    obstacles, start = [], None
    for row, line in enumerate(rows):
        y = height - 1 - row
        for x, ch in enumerate(line):
            if ch == "#":
                obstacles.append(Cell(x, y))
            elif ch == "S":
                start = Cell(x, y)
    if start is None:
        raise ValueError("layout has no start cell 'S'")
    return GridMap.from_obstacles(max(len(r) for r in rows), height, start, obstacles)


def pasta_environment(label_mode: str = "semantic", seed: int = 0) -> Environment:
    """Tomato pasta with cheese: pasta + tomato sauce -> tomato pasta; + cheese -> goal."""
    grid = grid_from_layout(PASTA_LAYOUT)
    nodes = (
        TaskNode("pasta", "Pasta", Cell(4, 0)),
        TaskNode("sauce", "Tomato Sauce", Cell(0, 4)),
        TaskNode("tomato_pasta", "Tomato Pasta", Cell(2, 2), Precondition.all_of("pasta", "sauce")),
        TaskNode("cheese", "Cheese", Cell(4, 4)),
        TaskNode(
            "dish",
            "Tomato Pasta with Cheese",
            Cell(2, 4),
            Precondition.all_of("tomato_pasta", "cheese"),
            is_goal=True,
        ),
    )
    dag = TaskDag(nodes, "dish")
    if label_mode == "symbolic":
        dag = dag.with_labels(generate_labels(len(nodes), "symbolic", random.Random(seed)))
    elif label_mode != "semantic":
        raise ValueError(f"unknown label mode {label_mode!r}")
    return Environment(grid, dag, compute_budget(grid, 3), seed, None, f"pasta-{label_mode}")
