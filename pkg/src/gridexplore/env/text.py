"""Agent-facing observation text."""

from __future__ import annotations

from typing import Sequence

from .state import Discovery, Observation

PLAIN = "plain"
WITH_SUMMARY = "with_summary"
FORMATS = (PLAIN, WITH_SUMMARY)


def format_prerequisites(options: Sequence[Sequence[str]]) -> str:
    """'A', 'A and B', 'A or B', '(A and B) or C'."""
    parts = [" and ".join(opt) for opt in options]
    if len(parts) == 1:
        return parts[0]
    return " or ".join(f"({p})" if len(opt) > 1 else p for p, opt in zip(parts, options))


def join_or(words: Sequence[str]) -> str:
    words = list(words)
    if len(words) <= 1:
        return "".join(words)
    if len(words) == 2:
        return f"{words[0]} or {words[1]}"
    return ", ".join(words[:-1]) + f", or {words[-1]}"


def _plain_body(d: Discovery | None) -> str:
    if d is None:
        return "You found nothing here."
    name = d.label
    if d.first_visit:
        parts = [f"You discovered state {name}."]
        if not d.prerequisites:
            parts.append(f"{name} has no prerequisites and is immediately activated!")
        else:
            parts.append(f"{name} requires {format_prerequisites(d.prerequisites)}.")
            if d.activated:
                parts.append(f"Its prerequisites are satisfied and {name} is now activated!")
            else:
                parts.append(f"{name} is not activated yet.")
    else:
        parts = [f"You activated state {name}!"]
    if d.is_goal:
        parts.append(f"{name} is the goal state.")
    if d.successors:
        parts.append(f"{name} has ancestors: {', '.join(d.successors)}.")
    return " ".join(parts)


def _summary_body(d: Discovery | None) -> str:
    if d is None:
        return "You found nothing here."
    name = d.label
    if d.activated:
        parts = [f"You found {name} which is now activated."]
        if d.is_goal:
            parts.append(f"{name} is the goal state.")
        if d.successors:
            parts.append(f"Now, you can go to {', '.join(d.successors)}.")
    else:
        parts = [
            f"You found {name} which is not activated yet.",
            f"To activate it, you should find {format_prerequisites(d.prerequisites)} first.",
        ]
        if d.is_goal:
            parts.append(f"{name} is the goal state.")
        if d.successors:
            parts.append(f"Once it is activated, you can next pursue {', '.join(d.successors)}.")
    return " ".join(parts)


def render_observation(obs: Observation, fmt: str = PLAIN, summary: str | None = None) -> str:
    """Render one turn's observation.

    ``plain`` is the terse two-line form. ``with_summary`` is the harness
    form: one sentence-style line with the step count, followed by the
    memory summary (when given) after a blank line.
    """
    where = f"OBSERVATION: You are at {obs.position}."
    moves = [d.value for d in obs.admissible]
    if fmt == PLAIN:
        return f"{where} {_plain_body(obs.discovery)}\nAvailable directions: {', '.join(moves)}"
    if fmt != WITH_SUMMARY:
        raise ValueError(f"unknown observation format {fmt!r}")
    line = (
        f"{where} {_summary_body(obs.discovery)} Your available action is {join_or(moves)}."
        f" You spent {obs.steps_spent} steps."
    )
    return f"{line}\n\n{summary}" if summary else line
