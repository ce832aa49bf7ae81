"""Versioned JSON environment documents."""

from __future__ import annotations

import json
from pathlib import Path

from ..core.dag import Precondition, TaskDag, TaskNode
from ..core.grid import Cell, GridMap
from .config import ConfigError, GenConfig
from .environment import Environment

FORMAT_VERSION = 1


class EnvironmentFormatError(ValueError):
    pass


def _cell(value) -> Cell:
    if not (isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, int) for v in value)):
        raise EnvironmentFormatError(f"cells are [x, y] integer pairs, got {value!r}")
    return Cell(*value)


def environment_to_dict(env: Environment) -> dict:
    g = env.grid
    doc = {
        "version": FORMAT_VERSION,
        "seed": env.seed,
        "grid": {
            "width": g.width,
            "height": g.height,
            "start": list(g.start),
            "obstacles": [list(c) for c in sorted(g.obstacles)],
        },
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "location": list(n.location),
                "options": [list(opt) for opt in n.precondition.options],
                "goal": n.is_goal,
            }
            for n in env.dag.nodes
        ],
        "budget": env.budget,
    }
    if env.name:
        doc["name"] = env.name
    if env.config is not None:
        doc["config"] = env.config.to_dict()
    return doc


def environment_from_dict(doc: dict) -> Environment:
    try:
        if doc.get("version") != FORMAT_VERSION:
            raise EnvironmentFormatError(f"unsupported environment version {doc.get('version')!r}")
        gd = doc["grid"]
        grid = GridMap.from_obstacles(
            int(gd["width"]), int(gd["height"]), _cell(gd["start"]), [_cell(c) for c in gd["obstacles"]]
        )
        nodes = tuple(
            TaskNode(
                id=str(n["id"]),
                label=str(n["label"]),
                location=_cell(n["location"]),
                precondition=Precondition(tuple(tuple(str(p) for p in opt) for opt in n["options"])),
                is_goal=bool(n["goal"]),
            )
            for n in doc["nodes"]
        )
        goals = [n.id for n in nodes if n.is_goal]
        if len(goals) != 1:
            raise EnvironmentFormatError(f"expected one goal node, found {len(goals)}")
        config = GenConfig.from_dict(doc["config"]) if doc.get("config") is not None else None
        return Environment(
            grid=grid,
            dag=TaskDag(nodes, goals[0]),
            budget=int(doc["budget"]),
            seed=int(doc.get("seed", 0)),
            config=config,
            name=doc.get("name"),
        )
    except (KeyError, TypeError) as exc:
        raise EnvironmentFormatError(f"malformed environment document: {exc!r}") from exc
    except ConfigError as exc:
        raise EnvironmentFormatError(f"bad embedded config: {exc}") from exc


def pretty_json(obj, indent: int = 0) -> str:
    """Indented JSON that keeps scalar lists (cells, options) on one line."""
    pad = "  " * indent
    if isinstance(obj, dict) and obj:
        body = ",\n".join(f"{pad}  {json.dumps(k)}: {pretty_json(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, dict) for x in obj):
        body = ",\n".join(f"{pad}  {pretty_json(x, indent + 1)}" for x in obj)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(obj)


def dumps_environment(env: Environment) -> str:
    return pretty_json(environment_to_dict(env)) + "\n"


def loads_environment(text: str) -> Environment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnvironmentFormatError(f"not JSON: {exc}") from exc
    return environment_from_dict(doc)


def save_environment(env: Environment, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_environment(env))
    return path


def load_environment(path: str | Path) -> Environment:
    return loads_environment(Path(path).read_text())
