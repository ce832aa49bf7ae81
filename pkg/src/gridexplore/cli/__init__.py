from .aggregate import AggregateReport, GroupStats
from .config import RunSpec, episode_seed, load_config
from .main import build_parser, main

__all__ = ["AggregateReport", "GroupStats", "RunSpec", "build_parser", "episode_seed", "load_config", "main"]
