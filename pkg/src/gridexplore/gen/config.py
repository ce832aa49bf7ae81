"""Generation presets and the resolved generator configuration."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

DAG_SIZES = {"small": 4, "medium": 6, "large": 8}

# exploitation demand -> node density over grid cells
DENSITIES = {"low": 0.1, "medium": 0.25, "high": 0.4}

# Exploitation demand is the inverse of exploration demand: the widest
# corridors (most exploration) go with low exploitation demand.
CORRIDOR_WIDTHS = {"low": (2, 3), "medium": (1, 3), "high": (1, 1)}

OPTION_COUNT_PROBS = {
    "easy": {1: 1.0},
    "medium": {1: 0.8, 2: 0.2},
    "hard": {1: 0.6, 2: 0.4},
}

DEPENDENCY_COUNT_PROBS = {
    "easy": {1: 0.5, 2: 0.5},
    "medium": {1: 0.5, 2: 0.5},
    "hard": {1: 1 / 3, 2: 1 / 3, 3: 1 / 3},
}

LABEL_MODES = ("symbolic", "semantic")

MAX_RETRIES = 64


class ConfigError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


def _int_keys(table) -> dict[int, float]:
    return {int(k): float(v) for k, v in dict(table).items()}


@dataclass(frozen=True)
class GenConfig:
    """Generator settings.

    The three presets fill in every derived knob that is left as None;
    explicit values always win over the preset.
    """

    dag_size: str = "small"
    exploitation_demand: str = "medium"
    difficulty: str = "easy"
    label_mode: str = "symbolic"
    seed: int = 0
    node_count: int | None = None
    density: float | None = None
    corridor_width: tuple[int, int] | None = None
    option_count_probs: dict | None = None
    dependency_count_probs: dict | None = None
    goal_dependency_count_probs: dict | None = None
    parent_depth_bias: float = 1.0
    aspect_ratio: float = 1.0
    budget_multiplier: float = 3.0
    layer_cap: int = 3

    def __post_init__(self):
        for name, table in (("dag_size", DAG_SIZES), ("exploitation_demand", DENSITIES),
                            ("difficulty", OPTION_COUNT_PROBS)):
            if getattr(self, name) not in table:
                raise ConfigError(f"{name} must be one of {sorted(table)}, got {getattr(self, name)!r}")
        if self.label_mode not in LABEL_MODES:
            raise ConfigError(f"label_mode must be one of {LABEL_MODES}, got {self.label_mode!r}")

        def fill(name, value):
            if getattr(self, name) is None:
                object.__setattr__(self, name, value)

        fill("node_count", DAG_SIZES[self.dag_size])
        fill("density", DENSITIES[self.exploitation_demand])
        fill("corridor_width", CORRIDOR_WIDTHS[self.exploitation_demand])
        fill("option_count_probs", OPTION_COUNT_PROBS[self.difficulty])
        fill("dependency_count_probs", DEPENDENCY_COUNT_PROBS[self.difficulty])
        fill("goal_dependency_count_probs", DEPENDENCY_COUNT_PROBS[self.difficulty])
        for name in ("option_count_probs", "dependency_count_probs", "goal_dependency_count_probs"):
            object.__setattr__(self, name, _int_keys(getattr(self, name)))
        object.__setattr__(self, "corridor_width", tuple(int(w) for w in self.corridor_width))
        object.__setattr__(self, "seed", int(self.seed))
        self.validate()

    def validate(self) -> None:
        for name in ("option_count_probs", "dependency_count_probs", "goal_dependency_count_probs"):
            table = getattr(self, name)
            if not table:
                raise ConfigError(f"{name} is empty")
            if any(k < 1 for k in table) or any(v < 0 for v in table.values()):
                raise ConfigError(f"{name} needs positive counts and non-negative weights: {table}")
            if not math.isclose(sum(table.values()), 1.0, abs_tol=1e-9):
                raise ConfigError(f"{name} must sum to 1, sums to {sum(table.values())}")
        if not self.budget_multiplier > 0:
            raise ConfigError("budget_multiplier must be > 0")
        if self.layer_cap < 1:
            raise ConfigError("layer_cap must be >= 1")
        if self.node_count < 2:
            raise ConfigError("node_count must be >= 2")
        if not 0 < self.density <= 1:
            raise ConfigError("density must be in (0, 1]")
        if not self.aspect_ratio > 0:
            raise ConfigError("aspect_ratio must be > 0")
        lo, hi = self.corridor_width
        if not 1 <= lo <= hi:
            raise ConfigError(f"corridor_width must satisfy 1 <= min <= max, got {self.corridor_width}")

    @property
    def name(self) -> str:
        return f"{self.dag_size}-{self.exploitation_demand}-{self.difficulty}"

    def with_seed(self, seed: int) -> "GenConfig":
        return GenConfig(**{**self.to_dict(), "seed": seed})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["corridor_width"] = list(self.corridor_width)
        for name in ("option_count_probs", "dependency_count_probs", "goal_dependency_count_probs"):
            d[name] = {str(k): v for k, v in sorted(getattr(self, name).items())}
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "GenConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown generator settings: {sorted(unknown)}")
        data = dict(data)
        if data.get("corridor_width") is not None:
            data["corridor_width"] = tuple(data["corridor_width"])
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc


def sweep_configs(difficulty: str = "easy", label_mode: str = "symbolic", **overrides) -> list[GenConfig]:
    """The 3 exploitation demands x 3 DAG sizes grid used for the main runs."""
    return [
        GenConfig(dag_size=size, exploitation_demand=demand, difficulty=difficulty,
                  label_mode=label_mode, **overrides)
        for demand in DENSITIES
        for size in DAG_SIZES
    ]
