"""Per-step error verdicts and normalized trajectory reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..core.grid import Cell
from ..env.state import EpisodeState, Terminal
from ..env.trajectory import TrajectoryRecord, replay
from ..gen.environment import Environment
from .cases import Case, DistanceFn, TargetCase, classify_case, gain
from .segment import NoProgressSegment, advance_segment


class Attribution(str, Enum):
    NONE = "none"
    EXPLORATION = "exploration"
    EXPLOITATION = "exploitation"
    BOTH = "both"


_BLAME = {
    Case.EXPLORE: Attribution.EXPLORATION,
    Case.GOAL: Attribution.EXPLOITATION,
    Case.EXPLOIT: Attribution.EXPLOITATION,
    Case.EITHER: Attribution.BOTH,
}


@dataclass(frozen=True)
class StepVerdict:
    t: int
    position: Cell
    next_position: Cell
    case: TargetCase
    gain: int
    progress_event: bool
    stale_before: int
    stale_after: int
    readout: tuple[int, int, int, int]
    err: int
    attribution: Attribution

    def to_dict(self) -> dict:
        c, e, n, s = self.readout
        return {
            "t": self.t,
            "position": list(self.position),
            "next_position": list(self.next_position),
            "case": int(self.case.case),
            "targets": len(self.case.target_cells),
            "gain": self.gain,
            "progress": self.progress_event,
            "stale_before": self.stale_before,
            "stale_after": self.stale_after,
            "c": c,
            "e": e,
            "n": n,
            "S": s,
            "err": self.err,
            "attribution": self.attribution.value,
        }


def is_progress(before: EpisodeState, after: EpisodeState) -> bool:
    """Entering an unobserved cell or achieving a node this step."""
    if after.position != before.position and after.position in before.unobserved:
        return True
    return any(ev.startswith("achieved:") for ev in after.last_events)


def step_error(
    state: EpisodeState,
    after: EpisodeState,
    seg: NoProgressSegment,
    distances_from: DistanceFn | None = None,
) -> tuple[StepVerdict, NoProgressSegment]:
    tc = classify_case(state)
    g = gain(state, after.position, tc.target_cells, distances_from)
    progress = is_progress(state, after)
    new_seg = advance_segment(seg, state.position, after.position, progress)
    before_s, after_s = seg.stale, new_seg.stale
    if progress:
        err = 0
    elif g == 0:
        err = 1
    elif len(tc.target_cells) == 1:
        err = 0
    else:
        err = int(after_s > before_s)
    verdict = StepVerdict(
        t=state.t,
        position=state.position,
        next_position=after.position,
        case=tc,
        gain=g,
        progress_event=progress,
        stale_before=before_s,
        stale_after=after_s,
        readout=new_seg.readout,
        err=err,
        attribution=_BLAME[tc.case] if err else Attribution.NONE,
    )
    return verdict, new_seg


def _rate(num: int, den: int) -> Fraction | None:
    return Fraction(num, den) if den else None


@dataclass
class MetricReport:
    verdicts: list[StepVerdict] = field(default_factory=list)
    success: bool = False
    steps: int = 0
    terminal: str = Terminal.RUNNING.value

    @property
    def case_counts(self) -> dict[int, int]:
        counts = {int(c): 0 for c in Case}
        for v in self.verdicts:
            counts[int(v.case.case)] += 1
        return counts

    def _ratio(self, want) -> Fraction | None:
        steps = [v for v in self.verdicts if want(v.case.case)]
        return _rate(sum(v.err for v in steps), len(steps))

    @property
    def exploration_error(self) -> Fraction | None:
        return self._ratio(lambda c: c.needs_exploration)

    @property
    def exploitation_error(self) -> Fraction | None:
        return self._ratio(lambda c: c.needs_exploitation)

    @property
    def errors(self) -> int:
        return sum(v.err for v in self.verdicts)

    def summary(self) -> dict:
        def f(x):
            return None if x is None else float(x)

        return {
            "success": self.success,
            "steps": self.steps,
            "terminal": self.terminal,
            "exploration_error": f(self.exploration_error),
            "exploitation_error": f(self.exploitation_error),
            "case_counts": {str(k): v for k, v in self.case_counts.items()},
        }

    def to_dict(self, per_step: bool = True) -> dict:
        out = {"summary": self.summary()}
        if per_step:
            out["steps"] = [v.to_dict() for v in self.verdicts]
        return out


def evaluate_states(states: list[EpisodeState], distances_from: DistanceFn | None = None) -> MetricReport:
    """Score consecutive states t = 0..T of one episode."""
    report = MetricReport()
    if not states:
        return report
    seg = NoProgressSegment.fresh(states[0].position)
    for before, after in zip(states, states[1:]):
        verdict, seg = step_error(before, after, seg, distances_from)
        report.verdicts.append(verdict)
    last = states[-1]
    report.steps = last.t
    report.success = last.goal_achieved
    report.terminal = last.terminal.value
    return report


def evaluate_trajectory(
    env: Environment,
    record: TrajectoryRecord,
    distances_from: DistanceFn | None = None,
    source: str | None = None,
) -> MetricReport:
    """Replay ``record`` against ``env`` and score every step.

    Raises ReplayDivergence on the first record that disagrees with replay.
    The report's terminal falls back to the log's footer when a driver ended
    the episode early (e.g. an aborted adapter).
    """
    states = replay(env, record, source)
    report = evaluate_states(states, distances_from)
    if states[-1].running and record.terminal != Terminal.RUNNING.value:
        report.terminal = record.terminal
    return report
