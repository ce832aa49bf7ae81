"""Run settings and config files (JSON or YAML)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from ..agents.policies import AGENT_KINDS
from ..agents.prompts import VARIANTS
from ..gen.config import ConfigError, GenConfig

SECTIONS = ("gen", "run")


def load_config(path: str | Path) -> dict:
    """Read a config file with optional ``gen`` and ``run`` sections."""
    path = Path(path)
    text = path.read_text()
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    extra = set(data) - set(SECTIONS)
    if extra:
        raise ConfigError(f"{path}: unknown sections {sorted(extra)}; expected {list(SECTIONS)}")
    return data


def gen_config_from(data: dict | None, **overrides) -> GenConfig:
    merged = dict(data or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return GenConfig.from_dict(merged)


@dataclass
class RunSpec:
    env_paths: list[Path] = field(default_factory=list)
    gen: GenConfig | None = None
    agent: str = "explorer"
    variant: str = "base"
    harness: bool = False
    seeds: list[int] = field(default_factory=lambda: [0])
    parallel: int = 1
    out: Path = Path("runs")
    global_seed: int = 0
    chat: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.seeds:
            raise ConfigError("seed list must not be empty")
        if self.agent not in AGENT_KINDS:
            raise ConfigError(f"unknown agent {self.agent!r}; expected one of {AGENT_KINDS}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown prompt variant {self.variant!r}")
        if self.parallel < 1:
            raise ConfigError("parallel must be >= 1")
        if not self.env_paths and self.gen is None:
            raise ConfigError("no environment source: pass --env/--env-dir or a gen config")

    @classmethod
    def from_dict(cls, data: dict) -> "RunSpec":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown run keys {sorted(extra)}")
        data = dict(data)
        if "env_paths" in data:
            data["env_paths"] = [Path(p) for p in data["env_paths"]]
        if "out" in data:
            data["out"] = Path(data["out"])
        if isinstance(data.get("gen"), dict):
            data["gen"] = GenConfig.from_dict(data["gen"])
        return cls(**data)


def episode_seed(global_seed: int, env_id: str, seed: int) -> int:
    """Order-independent per-episode seed."""
    digest = hashlib.sha256(f"{global_seed}:{env_id}:{seed}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
