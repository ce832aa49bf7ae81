from .dag import NodeId, Precondition, TaskDag, TaskNode, achievable_fixpoint, precondition_satisfied
from .grid import (
    DIRECTIONS,
    Cell,
    Direction,
    GridMap,
    InvalidCellError,
    UnreachableError,
    admissible_moves,
    cell_sort_key,
    ordered_moves,
    shortest_distance,
    step_direction,
)
from .validate import ValidationReport, find_cycle, validate_dag, validate_map

__all__ = [
    "DIRECTIONS",
    "Cell",
    "Direction",
    "GridMap",
    "InvalidCellError",
    "NodeId",
    "Precondition",
    "TaskDag",
    "TaskNode",
    "UnreachableError",
    "ValidationReport",
    "achievable_fixpoint",
    "admissible_moves",
    "cell_sort_key",
    "find_cycle",
    "ordered_moves",
    "precondition_satisfied",
    "shortest_distance",
    "step_direction",
    "validate_dag",
    "validate_map",
]
