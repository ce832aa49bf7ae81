"""Shared test builders and brute-force oracles.

The oracles deliberately avoid the package's own algorithms so that they can
catch mistakes in them.
"""

from __future__ import annotations

from itertools import product

from gridexplore.core import Cell, Direction, Precondition, TaskDag, TaskNode
from gridexplore.env import TrajectoryRecord, action_to_str, reset, step, turn_record
from gridexplore.gen import Environment, grid_from_layout

UP, DOWN, LEFT, RIGHT = Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT


def make_env(rows, nodes, budget=100, name="fixture") -> Environment:
    grid = grid_from_layout(rows)
    goal = next(n.id for n in nodes if n.is_goal)
    return Environment(grid, TaskDag(tuple(nodes), goal), budget, 0, None, name)


def node(nid, x, y, *needs, goal=False, label=None, any_of=False):
    if any_of:
        pre = Precondition.any_of(*needs)
    else:
        pre = Precondition.all_of(*needs)
    return TaskNode(nid, label or nid, Cell(x, y), pre, goal)


def play(env: Environment, actions) -> TrajectoryRecord:
    """Apply actions (None = no-op) and record every turn."""
    state, obs = reset(env)
    rec = TrajectoryRecord(environment=env, agent={"kind": "scripted"})
    rec.turns.append(turn_record(state, obs, None))
    for a in actions:
        state, obs = step(state, a)
        rec.turns.append(turn_record(state, obs, action_to_str(a)))
        if not state.running:
            break
    rec.terminal = state.terminal.value
    return rec


def walk_actions(cells) -> list[Direction]:
    out = []
    for a, b in zip(cells, cells[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        out.append({(0, 1): UP, (0, -1): DOWN, (-1, 0): LEFT, (1, 0): RIGHT}[(dx, dy)])
    return out


# oracles


def brute_distances(traversable, source):
    """Bellman-Ford style relaxation to a fixpoint."""
    inf = float("inf")
    dist = {c: inf for c in traversable}
    dist[source] = 0
    changed = True
    while changed:
        changed = False
        for c in traversable:
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = (c[0] + dx, c[1] + dy)
                if nb in dist and dist[nb] + 1 < dist[c]:
                    dist[c] = dist[nb] + 1
                    changed = True
    return dist


def brute_stale(walk):
    """(c, e, n, S) recomputed from scratch for a whole no-progress walk."""
    visits = {}
    edges = {}
    for i, cell in enumerate(walk):
        visits[cell] = visits.get(cell, 0) + 1
        if i and walk[i - 1] != cell:
            key = frozenset((walk[i - 1], cell))
            edges[key] = edges.get(key, 0) + 1
    c = len(edges) - len(visits) + 1
    e = sum(max(m - 2, 0) for m in edges.values())
    n = sum(max(m - 2, 0) for m in visits.values())
    return c, e, n, c + e + n


def fixpoint_achieved(env: Environment, positions) -> set:
    """Achieved node ids after walking ``positions`` (t = 0..T), from the rules alone."""
    where = {nd.location: nd for nd in env.dag.nodes}
    seen = set()
    done = set()
    prev = None
    for pos in positions:
        if pos != prev and pos in where:
            nd = where[pos]
            seen.add(nd.id)
            if nd.id not in done:
                opts = nd.precondition.options
                if not opts or any(all(p in done for p in opt) for opt in opts):
                    done.add(nd.id)
        prev = pos
    return done


def brute_sets(state):
    """(pending ids, unobserved cells) straight from the definitions."""
    env = state.env
    visited = set(state.observed)
    unobserved = {
        c
        for c in env.grid.traversable
        if c not in visited
        and any((c[0] + dx, c[1] + dy) in visited for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)))
    }
    achieved = {k for k, p in state.progress.items() if p.status.value == "achieved"}
    discovered = {k for k, p in state.progress.items() if p.status.value == "discovered"}
    pending = {
        k
        for k in discovered
        if not env.dag[k].precondition.options
        or any(all(p in achieved for p in opt) for opt in env.dag[k].precondition.options)
    }
    return pending, unobserved


def full_block(w, h, start):
    rows = []
    for y in reversed(range(h)):
        rows.append("".join("S" if (x, y) == start else "." for x in range(w)))
    return rows


def cells(w, h):
    return [Cell(x, y) for x, y in product(range(w), range(h))]


def _tour(block, start, skip):
    """Depth-first walk with backtracking over ``block - {skip}``."""
    walk = [start]
    seen = {start}

    def go(c):
        for dx, dy in ((0, 1), (0, -1), (-1, 0), (1, 0)):
            nb = (c[0] + dx, c[1] + dy)
            if nb in block and nb != skip and nb not in seen:
                seen.add(nb)
                walk.append(nb)
                go(nb)
                walk.append(c)

    go(start)
    return walk


def _path(block, a, b):
    prev = {a: None}
    queue = [a]
    for c in queue:
        for dx, dy in ((0, 1), (0, -1), (-1, 0), (1, 0)):
            nb = (c[0] + dx, c[1] + dy)
            if nb in block and nb not in prev:
                prev[nb] = c
                queue.append(nb)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def table_episode(rows):
    """Embed a centred-3x3 no-progress walk in a real episode.

    The block sits at x, y in 0..2 (shifted by +1) with the start on a stub
    at (3, 1) and the goal at (4, 1). A setup walk observes the whole block
    and steps into the walk's first cell last, so the scored segment starts
    exactly there. Returns (env, record, offset) where ``offset`` is the
    index of the verdict for the step into that first cell.
    """
    env = make_env(["...##", "...S.", "...##"], [node("G", 4, 1, goal=True)], budget=500)
    block = {(x, y) for x in range(3) for y in range(3)}
    p0 = (rows[0][0][0] + 1, rows[0][0][1] + 1)
    setup = [(3, 1)] + _tour(block, (2, 1), p0)
    rest = block - {p0}
    near = next(
        c for c in sorted(rest, key=lambda c: len(_path(rest, setup[-1], c)))
        if abs(c[0] - p0[0]) + abs(c[1] - p0[1]) == 1
    )
    setup += _path(rest, setup[-1], near)[1:] + [p0]
    walk = setup + [(x + 1, y + 1) for (x, y), *_ in rows[1:]]
    return env, play(env, walk_actions(walk)), len(setup) - 2


def brute_verdicts(states):
    """(case, gain, err) per step, recomputed from the definitions alone."""
    env = states[0].env
    trav = set(env.grid.traversable)
    dist_cache = {}

    def dist(z):
        if z not in dist_cache:
            dist_cache[z] = brute_distances(trav, z)
        return dist_cache[z]

    out = []
    segment = [states[0].position]
    for before, after in zip(states, states[1:]):
        pending, unobserved = brute_sets(before)
        if not pending:
            case, targets = 1, unobserved
        elif env.dag.goal in pending:
            case, targets = 2, {env.dag.goal_node.location}
        elif not unobserved:
            case, targets = 3, {env.dag[k].location for k in pending}
        else:
            case, targets = 4, unobserved | {env.dag[k].location for k in pending}
        here, there = before.position, after.position
        if there in targets:
            g = 1
        elif there == here:
            g = 0
        else:
            g = int(any(dist(z)[there] < dist(z)[here] for z in targets))
        progressed = (there not in before.observed) or (after.achieved != before.achieved)
        s_before = brute_stale(segment)[3]
        if progressed:
            segment = [there]
        else:
            segment = segment + [there]
        s_after = brute_stale(segment)[3]
        if progressed:
            err = 0
        elif g == 0:
            err = 1
        elif len(targets) == 1:
            err = 0
        else:
            err = int(s_after > s_before)
        out.append((case, g, err))
    return out
