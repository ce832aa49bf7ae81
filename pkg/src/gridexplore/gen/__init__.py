from .config import (
    CORRIDOR_WIDTHS,
    DAG_SIZES,
    DENSITIES,
    ConfigError,
    GenConfig,
    GenerationError,
    sweep_configs,
)
from .environment import Environment, generate_environment
from .fixtures import grid_from_layout, pasta_environment
from .io import (
    EnvironmentFormatError,
    dumps_environment,
    environment_from_dict,
    environment_to_dict,
    load_environment,
    loads_environment,
    save_environment,
)
from .labels import generate_labels, is_monotone_run
from .layout import compute_budget, grid_dimensions, place_on_grid
from .sampling import choose_parents, depth_weight, sample_task_dag

__all__ = [
    "CORRIDOR_WIDTHS",
    "DAG_SIZES",
    "DENSITIES",
    "ConfigError",
    "Environment",
    "EnvironmentFormatError",
    "GenConfig",
    "GenerationError",
    "choose_parents",
    "compute_budget",
    "depth_weight",
    "dumps_environment",
    "environment_from_dict",
    "environment_to_dict",
    "generate_environment",
    "generate_labels",
    "grid_from_layout",
    "grid_dimensions",
    "is_monotone_run",
    "load_environment",
    "loads_environment",
    "pasta_environment",
    "place_on_grid",
    "sample_task_dag",
    "save_environment",
    "sweep_configs",
]
