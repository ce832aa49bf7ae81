"""System prompt templates."""

from __future__ import annotations

from dataclasses import dataclass

BASE = "base"
EXPLORATION = "exploration"
EXPLOITATION = "exploitation"
BALANCE = "balance"
VARIANTS = (BASE, EXPLORATION, EXPLOITATION, BALANCE)

_OBSERVATION_LINE = (
    "At each step, you are given your current position, the directions you can legally move, "
    "and any newly discovered symbolic states at your current cell."
)
_HARNESS_OBSERVATION_LINE = (
    "At each step, you are given your current observation that contains your current position, "
    "the directions you can legally move, and any newly discovered symbolic states at your current cell. "
    "Also, you are given a summary of your explored map, visited cells, reachable frontier cells, "
    "discovered states, activated states, and prerequisite relations."
)

_EXPLORE_DEF = (
    "as deliberately moving toward cells you have not visited yet and roaming to uncover cells "
    "and symbolic states that you have not discovered yet."
)

STRATEGY = {
    BASE: None,
    EXPLORATION: f"Prioritize exploration when deciding where to move. Treat exploration {_EXPLORE_DEF}",
    EXPLOITATION: (
        "Prioritize exploitation when deciding where to move. Among the symbolic states you have "
        "already discovered, first target states whose prerequisites are already satisfied, and move "
        "along the shortest available path to activate them."
    ),
    BALANCE: (
        f"Balance exploration and exploitation when deciding where to move. Treat exploration {_EXPLORE_DEF} "
        "Treat exploitation as targeting already discovered symbolic states whose prerequisites are "
        "already satisfied and moving along the shortest available path to activate them. Choose the "
        "balance between these two behaviors based on which actions are most likely to solve the task "
        "in the fewest steps."
    ),
}

_ACTION_FORMAT = (
    'Reply with exactly one JSON object containing one valid action from available_directions like this: '
    '{"action":"up"}, {"action":"down"}, {"action":"left"}, {"action":"right"}'
)


@dataclass(frozen=True)
class PromptVariant:
    strategy: str = BASE
    harness: bool = False
    # named prompt set for reasoning-style runs; no bundled text
    reasoning: str | None = None

    def __post_init__(self):
        if self.strategy not in VARIANTS:
            raise ValueError(f"unknown prompt variant {self.strategy!r}; expected one of {VARIANTS}")


def build_system_prompt(variant: PromptVariant | str = BASE, harness: bool | None = None) -> str:
    if isinstance(variant, str):
        variant = PromptVariant(variant, bool(harness))
    elif harness is not None:
        variant = PromptVariant(variant.strategy, harness, variant.reasoning)
    lines = [
        "You are controlling an agent in a partially observed symbolic grid environment.",
        "Your objective is to activate the goal state.",
        _HARNESS_OBSERVATION_LINE if variant.harness else _OBSERVATION_LINE,
        "Newly discovered states may include prerequisite information and ancestor hints.",
        "A state can be activated when you are on its cell and its prerequisites are satisfied.",
        "The full map, hidden budget, and undiscovered states are not available to you.",
    ]
    sentence = STRATEGY[variant.strategy]
    if sentence:
        lines.append(sentence)
    lines.append(_ACTION_FORMAT)
    return "\n".join(lines)
