"""Seeded sampling of layered task DAGs."""

from __future__ import annotations

import math
import random
from typing import Sequence

from ..core.dag import Precondition, TaskDag, TaskNode
from .config import MAX_RETRIES, GenConfig, GenerationError


class _Infeasible(Exception):
    pass


def draw_categorical(probs: dict[int, float], rng: random.Random) -> int:
    r = rng.random()
    acc = 0.0
    keys = sorted(probs)
    for k in keys:
        acc += probs[k]
        if r < acc:
            return k
    return keys[-1]


def depth_weight(candidate_depth: int, child_depth: int, beta: float) -> float:
    """Parent-depth bias: the most recent layer gets weight 1, older layers decay."""
    return math.exp(-beta * ((child_depth - 1) - candidate_depth))


def choose_parents(
    candidates: Sequence[tuple[str, int]],
    child_depth: int,
    count: int,
    beta: float,
    rng: random.Random,
) -> list[str]:
    """Draw ``count`` distinct parents, each pick proportional to its depth weight."""
    if count > len(candidates):
        raise _Infeasible(f"{count} parents requested from {len(candidates)} candidates")
    pool = list(candidates)
    weights = [depth_weight(d, child_depth, beta) for _, d in pool]
    picked = []
    for _ in range(count):
        r = rng.random() * sum(weights)
        acc = 0.0
        idx = len(pool) - 1
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                idx = i
                break
        picked.append(pool.pop(idx)[0])
        weights.pop(idx)
    return picked


def sample_layer_sizes(non_goal: int, cap: int, rng: random.Random) -> list[int]:
    # Two primitive nodes whenever possible, so that depth-1 nodes can draw
    # more than one distinct prerequisite option.
    sizes = []
    remaining = non_goal
    lo = min(2, remaining)
    while remaining:
        size = rng.randint(lo, min(cap, remaining))
        sizes.append(size)
        remaining -= size
        lo = 1
    return sizes


def _sample_options(
    candidates: list[tuple[str, int]],
    depth: int,
    n_options: int,
    dep_probs: dict[int, float],
    beta: float,
    order: dict[str, int],
    rng: random.Random,
) -> tuple[tuple[str, ...], ...]:
    for _ in range(MAX_RETRIES):
        options: list[tuple[str, ...]] = []
        for _ in range(n_options):
            for _ in range(MAX_RETRIES):
                m = draw_categorical(dep_probs, rng)
                if m > len(candidates):
                    continue
                opt = tuple(sorted(choose_parents(candidates, depth, m, beta, rng), key=order.__getitem__))
                if opt not in options:
                    options.append(opt)
                    break
            else:
                raise _Infeasible("could not draw a distinct option")
        # the node must sit exactly at its layer: some parent from the layer just above
        if any(dict(candidates)[p] == depth - 1 for opt in options for p in opt):
            return tuple(options)
    raise _Infeasible("no option reaches the previous layer")


def _repair_goal(nodes: list[dict], goal_id: str, order: dict[str, int], rng: random.Random) -> None:
    by_id = {n["id"]: n for n in nodes}
    while True:
        relevant = {goal_id}
        stack = [goal_id]
        while stack:
            cur = stack.pop()
            for opt in by_id[cur]["options"]:
                for p in opt:
                    if p not in relevant:
                        relevant.add(p)
                        stack.append(p)
        stray = [n for n in nodes if n["id"] not in relevant]
        if not stray:
            return
        # the deepest stray node is necessarily a sink
        victim = max(stray, key=lambda n: (n["depth"], order[n["id"]]))["id"]
        goal_opts = list(by_id[goal_id]["options"])
        slots = list(range(len(goal_opts)))
        rng.shuffle(slots)
        for i in slots:
            grown = tuple(sorted(goal_opts[i] + (victim,), key=order.__getitem__))
            if grown not in goal_opts:
                goal_opts[i] = grown
                break
        by_id[goal_id]["options"] = tuple(goal_opts)


def _sample_once(config: GenConfig, rng: random.Random) -> TaskDag:
    n = config.node_count
    sizes = sample_layer_sizes(n - 1, config.layer_cap, rng)
    sizes.append(1)  # goal layer
    nodes: list[dict] = []
    order: dict[str, int] = {}
    idx = 0
    for depth, size in enumerate(sizes):
        for _ in range(size):
            nid = f"n{idx:02d}"
            order[nid] = idx
            nodes.append({"id": nid, "depth": depth, "options": ()})
            idx += 1
    goal = nodes[-1]
    for node in nodes:
        depth = node["depth"]
        if depth == 0:
            continue
        candidates = [(m["id"], m["depth"]) for m in nodes if m["depth"] < depth]
        is_goal = node is goal
        dep_probs = config.goal_dependency_count_probs if is_goal else config.dependency_count_probs
        n_options = draw_categorical(config.option_count_probs, rng)
        node["options"] = _sample_options(
            candidates, depth, n_options, dep_probs, config.parent_depth_bias, order, rng
        )
    _repair_goal(nodes, goal["id"], order, rng)
    return TaskDag(
        tuple(
            TaskNode(
                id=m["id"],
                label=m["id"],
                location=None,
                precondition=Precondition(m["options"]),
                is_goal=m is goal,
            )
            for m in nodes
        ),
        goal["id"],
    )


def sample_task_dag(config: GenConfig, rng: random.Random) -> TaskDag:
    """Sample a layered DAG; locations are left unassigned and labels equal ids."""
    last = None
    for _ in range(MAX_RETRIES):
        try:
            return _sample_once(config, rng)
        except _Infeasible as exc:
            last = exc
    raise GenerationError(f"could not sample a task DAG for {config.name}: {last}")
