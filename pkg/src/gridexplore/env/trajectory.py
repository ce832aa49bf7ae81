"""Line-delimited JSON trajectory logs and deterministic replay.

Line 1 is a header embedding the full environment document, then one
record per turn (turn 0 is the reset observation), then a footer carrying
the terminal state and any driver error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from ..core.grid import Cell, Direction
from ..gen.environment import Environment
from ..gen.io import environment_from_dict, environment_to_dict
from .state import Discovery, EpisodeState, Observation, Terminal, reset, step

TRAJECTORY_VERSION = 1
NOOP = "noop"


class TrajectoryFormatError(ValueError):
    pass


class ReplayDivergence(ValueError):
    def __init__(self, index: int, reason: str, source: str | None = None):
        self.index = index
        self.reason = reason
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}record {index}: {reason}")


def turn_record(state: EpisodeState, obs: Observation, action: str | None) -> dict:
    return {
        "type": "turn",
        "t": state.t,
        "position": list(state.position),
        "action": action,
        "admissible": [d.value for d in obs.admissible],
        "discovery": obs.discovery.to_dict() if obs.discovery else None,
        "events": list(state.last_events),
        "terminal": state.terminal.value,
    }


def action_to_str(action: Direction | None) -> str:
    return action.value if action is not None else NOOP


def action_from_str(text: str) -> Direction | None:
    if text == NOOP:
        return None
    return Direction.parse(text)


@dataclass
class TrajectoryRecord:
    environment: Environment
    seed: int = 0
    agent: dict = field(default_factory=dict)
    turns: list[dict] = field(default_factory=list)
    terminal: str = Terminal.RUNNING.value
    error: str | None = None

    @property
    def actions(self) -> list[str]:
        return [r["action"] for r in self.turns[1:]]

    @property
    def steps(self) -> int:
        return max(len(self.turns) - 1, 0)

    def header(self) -> dict:
        return {
            "type": "header",
            "version": TRAJECTORY_VERSION,
            "seed": self.seed,
            "agent": self.agent,
            "environment": environment_to_dict(self.environment),
        }

    def footer(self) -> dict:
        return {"type": "footer", "terminal": self.terminal, "steps": self.steps, "error": self.error}

    def lines(self) -> Iterator[str]:
        yield json.dumps(self.header())
        for r in self.turns:
            yield json.dumps(r)
        yield json.dumps(self.footer())

    def dumps(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps())
        return path

    @classmethod
    def loads(cls, text: str, source: str | None = None) -> "TrajectoryRecord":
        rows = []
        for i, line in enumerate(text.splitlines()):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise TrajectoryFormatError(f"{source or 'trajectory'} line {i + 1}: {exc}") from exc
        if not rows or rows[0].get("type") != "header":
            raise TrajectoryFormatError(f"{source or 'trajectory'}: missing header record")
        head = rows[0]
        if head.get("version") != TRAJECTORY_VERSION:
            raise TrajectoryFormatError(f"unsupported trajectory version {head.get('version')!r}")
        rec = cls(
            environment=environment_from_dict(head["environment"]),
            seed=head.get("seed", 0),
            agent=head.get("agent", {}),
        )
        for row in rows[1:]:
            if row.get("type") == "footer":
                rec.terminal = row.get("terminal", rec.terminal)
                rec.error = row.get("error")
            else:
                rec.turns.append(row)
        if rec.turns and rec.terminal == Terminal.RUNNING.value:
            rec.terminal = rec.turns[-1]["terminal"]
        return rec

    @classmethod
    def load(cls, path: str | Path) -> "TrajectoryRecord":
        path = Path(path)
        return cls.loads(path.read_text(), source=str(path))


def replay(env: Environment, record: TrajectoryRecord, source: str | None = None) -> list[EpisodeState]:
    """Re-run the logged actions; returns states for t = 0..T.

    Positions and events of every turn are checked against the log.
    """
    state, obs = reset(env)
    turns = record.turns
    if not turns:
        raise ReplayDivergence(0, "no turn records", source)
    _check(turns[0], state, 1, source)
    states = [state]
    for i, row in enumerate(turns[1:], start=2):
        if not state.running:
            raise ReplayDivergence(i, "record after the episode ended", source)
        try:
            action = action_from_str(row["action"])
        except (KeyError, ValueError, AttributeError):
            raise ReplayDivergence(i, f"bad action {row.get('action')!r}", source)
        state, obs = step(state, action)
        _check(row, state, i, source)
        states.append(state)
    return states


def _check(row: dict, state: EpisodeState, index: int, source: str | None) -> None:
    if row.get("t") != state.t:
        raise ReplayDivergence(index, f"t is {row.get('t')}, replay has {state.t}", source)
    if Cell(*row.get("position", (None, None))) != state.position:
        raise ReplayDivergence(index, f"position {row.get('position')} != replay {list(state.position)}", source)
    if list(row.get("events", [])) != list(state.last_events):
        raise ReplayDivergence(index, f"events {row.get('events')} != replay {list(state.last_events)}", source)
    if row.get("terminal", state.terminal.value) != state.terminal.value:
        raise ReplayDivergence(index, f"terminal {row.get('terminal')} != replay {state.terminal.value}", source)


def observation_from_record(row: dict) -> Observation:
    return Observation(
        position=Cell(*row["position"]),
        admissible=tuple(Direction(d) for d in row["admissible"]),
        steps_spent=row["t"],
        discovery=Discovery.from_dict(row["discovery"]) if row.get("discovery") else None,
    )
