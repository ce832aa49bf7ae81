"""Agent interface and scripted baselines."""

from __future__ import annotations

import heapq
import random
from collections import deque
from typing import Iterable

from ..core.grid import DIRECTIONS, Cell, Direction, cell_sort_key
from ..env.state import EpisodeState, Observation, reset, step
from ..env.text import PLAIN, render_observation
from ..gen.environment import Environment
from ..metric.cases import classify_case
from .knowledge import AgentKnowledge


class PolicyStuckError(RuntimeError):
    pass


class Agent:
    """One instance per episode.

    ``begin`` is called once before the first turn. ``act`` may be called
    again for the same observation when the previous answer was rejected;
    ``text`` then carries the re-prompt.
    """

    kind = "agent"

    def begin(self, env: Environment, seed: int) -> None:
        pass

    def prompt_text(self, obs: Observation, knowledge: AgentKnowledge) -> str:
        return render_observation(obs, PLAIN)

    def act(self, obs: Observation, text: str, knowledge: AgentKnowledge) -> Direction | None:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}


class RandomAgent(Agent):
    kind = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)

    def begin(self, env, seed):
        self.seed = seed
        self.rng = random.Random(seed)

    def act(self, obs, text, knowledge):
        return self.rng.choice(obs.admissible)

    def describe(self):
        return {"kind": self.kind, "seed": self.seed}


def _bfs(source: Cell, passable: frozenset[Cell] | set[Cell]) -> dict[Cell, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for d in DIRECTIONS:
            nb = cur.shifted(d)
            if nb in passable and nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    return dist


def _nearest(dist: dict[Cell, int], candidates: Iterable[Cell]) -> Cell | None:
    reachable = [c for c in candidates if c in dist]
    if not reachable:
        return None
    return min(reachable, key=lambda c: (dist[c], cell_sort_key(c)))


def first_step(pos: Cell, target: Cell, admissible: Iterable[Direction], to_target: dict[Cell, int]) -> Direction:
    """First admissible direction (in tie-break order) on a shortest path to ``target``."""
    moves = [d for d in DIRECTIONS if d in set(admissible)]
    if pos == target:
        return moves[0]
    here = to_target[pos]
    for d in moves:
        if to_target.get(pos.shifted(d), here) == here - 1:
            return d
    raise PolicyStuckError(f"no admissible move from {pos} toward {target}")


def frontier_explorer_policy(knowledge: AgentKnowledge, admissible: Iterable[Direction]) -> Direction:
    """Achieve a ready goal, else explore the nearest frontier, else the nearest ready node.

    Paths use only cells the agent has seen to be passable.
    """
    pos = knowledge.position
    passable = knowledge.passable
    dist = _bfs(pos, passable)
    ready = {r.label: r.position for r in knowledge.activatable}
    target = None
    if knowledge.goal and knowledge.goal in ready:
        target = ready[knowledge.goal]
    if target is None:
        target = _nearest(dist, knowledge.frontier)
    if target is None:
        target = _nearest(dist, ready.values())
    if target is None:
        raise PolicyStuckError("no frontier cell and no activatable state")
    return first_step(pos, target, admissible, _bfs(target, passable))


class FrontierExplorer(Agent):
    kind = "explorer"

    def act(self, obs, text, knowledge):
        return frontier_explorer_policy(knowledge, obs.admissible)


class OracleAgent(Agent):
    """Walks a full-map shortest path to the nearest current target cell.

    Keeps a private copy of the true episode state, so it only makes sense
    when every one of its actions is applied as chosen.
    """

    kind = "oracle"

    def __init__(self):
        self.state: EpisodeState | None = None

    def begin(self, env, seed):
        self.state, _ = reset(env)

    def act(self, obs, text, knowledge):
        state = self.state
        if state is None or state.position != obs.position or state.t != obs.steps_spent:
            raise PolicyStuckError("oracle state out of sync with the episode")
        grid = state.env.grid
        targets = classify_case(state).target_cells
        dist = grid.distances_from(state.position)
        target = min(targets, key=lambda c: (dist[c], cell_sort_key(c)))
        action = first_step(state.position, target, obs.admissible, grid.distances_from(target))
        self.state, _ = step(state, action)
        return action


def plan_next_node(state: EpisodeState) -> str:
    """First node of a cheapest full-knowledge schedule that achieves the goal.

    Dijkstra over (location, achieved set) with full-map distances as edge
    costs; incidental visits along the way are ignored.
    """
    dag = state.env.dag
    grid = state.env.grid
    start = (state.position, state.achieved, None)
    best = {start[:2]: 0}
    heap = [(0, 0, start)]
    tick = 1
    while heap:
        cost, _, (pos, done, first) = heapq.heappop(heap)
        if best.get((pos, done), cost) < cost:
            continue
        if dag.goal in done:
            return first
        dist = grid.distances_from(pos)
        for node in dag.nodes:
            if node.id in done or not node.precondition.satisfied(done):
                continue
            nxt = (node.location, done | {node.id})
            c = cost + dist[node.location]
            if c < best.get(nxt, c + 1):
                best[nxt] = c
                heapq.heappush(heap, (c, tick, (nxt[0], nxt[1], first or node.id)))
                tick += 1
    raise PolicyStuckError("goal is not achievable from this state")


class PlannerOracle(OracleAgent):
    """Oracle that picks which target to chase from a full-knowledge plan.

    The chosen target is a cell of the current target set lying on a shortest
    path to the planned node, and it is kept until the next progress event,
    so every segment is still a simple shortest path.
    """

    kind = "planner"

    def begin(self, env, seed):
        super().begin(env, seed)
        self.committed: Cell | None = None

    def act(self, obs, text, knowledge):
        state = self.state
        if state is None or state.position != obs.position or state.t != obs.steps_spent:
            raise PolicyStuckError("oracle state out of sync with the episode")
        grid = state.env.grid
        targets = classify_case(state).target_cells
        if self.committed not in targets:
            goal_cell = state.env.dag[plan_next_node(state)].location
            to_goal = grid.distances_from(goal_cell)
            here = grid.distances_from(state.position)
            total = here[goal_cell]
            on_path = [z for z in targets if here[z] + to_goal[z] == total]
            self.committed = min(on_path or targets, key=lambda c: (here[c], cell_sort_key(c)))
        action = first_step(state.position, self.committed, obs.admissible, grid.distances_from(self.committed))
        self.state, _ = step(state, action)
        if self.state.position in state.unobserved or any(e.startswith("achieved:") for e in self.state.last_events):
            self.committed = None
        return action


AGENT_KINDS = ("random", "explorer", "oracle", "planner", "chat")


def make_agent(kind: str, seed: int = 0, **options) -> Agent:
    if kind == "random":
        return RandomAgent(seed)
    if kind == "explorer":
        return FrontierExplorer()
    if kind == "oracle":
        return OracleAgent()
    if kind == "planner":
        return PlannerOracle()
    if kind == "chat":
        from .chat import ChatModelAgent

        return ChatModelAgent(**options)
    raise ValueError(f"unknown agent kind {kind!r}; expected one of {AGENT_KINDS}")
