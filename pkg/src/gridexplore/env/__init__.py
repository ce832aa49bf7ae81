from .state import (
    CellState,
    Discovery,
    EpisodeOverError,
    EpisodeState,
    NodeProgress,
    NodeStatus,
    Observation,
    Terminal,
    observe,
    pending_set,
    reset,
    step,
)
from .text import FORMATS, PLAIN, WITH_SUMMARY, format_prerequisites, join_or, render_observation
from .trajectory import (
    NOOP,
    ReplayDivergence,
    TrajectoryFormatError,
    TrajectoryRecord,
    action_from_str,
    action_to_str,
    observation_from_record,
    replay,
    turn_record,
)

__all__ = [
    "FORMATS",
    "NOOP",
    "PLAIN",
    "WITH_SUMMARY",
    "CellState",
    "Discovery",
    "EpisodeOverError",
    "EpisodeState",
    "NodeProgress",
    "NodeStatus",
    "Observation",
    "ReplayDivergence",
    "Terminal",
    "TrajectoryFormatError",
    "TrajectoryRecord",
    "action_from_str",
    "action_to_str",
    "format_prerequisites",
    "join_or",
    "observation_from_record",
    "observe",
    "pending_set",
    "render_observation",
    "replay",
    "reset",
    "step",
    "turn_record",
]
