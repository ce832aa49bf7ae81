from __future__ import annotations

import random
from dataclasses import dataclass

from ..core.dag import TaskDag
from ..core.grid import GridMap
from ..core.validate import validate_dag
from .config import GenConfig, GenerationError
from .labels import generate_labels
from .layout import compute_budget, place_on_grid
from .sampling import sample_task_dag


@dataclass(frozen=True)
class Environment:
    grid: GridMap
    dag: TaskDag
    budget: int
    seed: int = 0
    config: GenConfig | None = None
    name: str | None = None

    @property
    def id(self) -> str:
        if self.name:
            return self.name
        if self.config is not None:
            return f"{self.config.name}-s{self.seed}"
        return f"env-s{self.seed}"


def generate_environment(config: GenConfig) -> Environment:
    """DAG first, then labels, then the map around it, then the budget."""
    rng = random.Random(config.seed)
    dag = sample_task_dag(config, rng)
    dag = dag.with_labels(generate_labels(len(dag), config.label_mode, rng))
    grid, dag = place_on_grid(dag, config, rng)
    env = Environment(
        grid=grid,
        dag=dag,
        budget=compute_budget(grid, config.budget_multiplier),
        seed=config.seed,
        config=config,
    )
    report = validate_dag(env.dag, env.grid)
    if not report.ok:
        raise GenerationError(f"generated environment is invalid: {report.problems}")
    return env
