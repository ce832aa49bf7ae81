from .cases import Case, CaseContractError, DistanceFn, TargetCase, classify_case, gain
from .evaluate import (
    Attribution,
    MetricReport,
    StepVerdict,
    evaluate_states,
    evaluate_trajectory,
    is_progress,
    step_error,
)
from .segment import REUSE_BUDGET, NoProgressSegment, advance_segment, edge_key, walk_readouts

__all__ = [
    "REUSE_BUDGET",
    "Attribution",
    "Case",
    "CaseContractError",
    "DistanceFn",
    "MetricReport",
    "NoProgressSegment",
    "StepVerdict",
    "TargetCase",
    "advance_segment",
    "classify_case",
    "edge_key",
    "evaluate_states",
    "evaluate_trajectory",
    "gain",
    "is_progress",
    "step_error",
    "walk_readouts",
]
