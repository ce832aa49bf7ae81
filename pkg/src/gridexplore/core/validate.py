from __future__ import annotations

from dataclasses import dataclass, field

from .dag import TaskDag
from .grid import GridMap


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def add(self, kind: str, detail: str) -> None:
        self.problems.append(f"{kind}: {detail}")

    def kinds(self) -> set[str]:
        return {p.split(":", 1)[0] for p in self.problems}


def find_cycle(dag: TaskDag) -> list[str] | None:
    """Return one dependency cycle as a node-id list, or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {nid: WHITE for nid in dag.ids}
    stack: list[str] = []

    def visit(nid: str) -> list[str] | None:
        colour[nid] = GREY
        stack.append(nid)
        for p in sorted(dag.parents(nid)):
            if p not in colour:
                continue
            if colour[p] == GREY:
                return stack[stack.index(p):] + [p]
            if colour[p] == WHITE:
                found = visit(p)
                if found:
                    return found
        stack.pop()
        colour[nid] = BLACK
        return None

    for nid in dag.ids:
        if colour[nid] == WHITE:
            found = visit(nid)
            if found:
                return found
    return None


def validate_map(grid: GridMap, report: ValidationReport | None = None) -> ValidationReport:
    report = report if report is not None else ValidationReport()
    if grid.width <= 0 or grid.height <= 0:
        report.add("bounds", f"non-positive dimensions {grid.width}x{grid.height}")
    off = sorted(c for c in grid.traversable if not grid.in_bounds(c))
    if off:
        report.add("bounds", f"traversable cells outside the grid: {off}")
    if grid.start not in grid.traversable:
        report.add("start", f"start {grid.start} is not traversable")
    elif not grid.is_connected():
        report.add("connectivity", "traversable cells form more than one 4-connected component")
    return report


def validate_dag(dag: TaskDag, grid: GridMap) -> ValidationReport:
    """Check every structural invariant of a (DAG, map) pair.

    Failures are collected rather than raised so callers can print them all.
    """
    report = validate_map(grid)

    ids = dag.ids
    if len(set(ids)) != len(ids):
        report.add("duplicate-id", "node ids are not unique")
    goals = [n.id for n in dag.nodes if n.is_goal]
    if len(goals) != 1:
        report.add("goal", f"expected exactly one goal node, found {len(goals)}")
    if dag.goal not in dag:
        report.add("goal", f"goal id {dag.goal!r} is not a node")
    elif goals and dag.goal not in goals:
        report.add("goal", f"goal id {dag.goal!r} is not flagged as goal")

    for n in dag.nodes:
        for opt in n.precondition.options:
            if not opt:
                report.add("precondition", f"{n.id} has an empty option")
            if n.id in opt:
                report.add("cycle", f"{n.id} depends on itself")
            missing = [p for p in opt if p not in dag]
            if missing:
                report.add("precondition", f"{n.id} references unknown nodes {missing}")

    cycle = find_cycle(dag)
    if cycle:
        report.add("cycle", " -> ".join(cycle))
    elif dag.goal in dag:
        # walk dependency edges backwards from the goal
        relevant = {dag.goal}
        frontier = [dag.goal]
        while frontier:
            cur = frontier.pop()
            for p in dag.parents(cur):
                if p in dag and p not in relevant:
                    relevant.add(p)
                    frontier.append(p)
        for nid in ids:
            if nid not in relevant:
                report.add("goal-connectivity", f"{nid} has no dependency path to the goal")

    seen = {}
    for n in dag.nodes:
        if n.location is None:
            report.add("location", f"{n.id} has no location")
            continue
        if not grid.in_bounds(n.location):
            report.add("off-map", f"{n.id} at {n.location} is outside the grid")
        elif n.location not in grid.traversable:
            report.add("off-map", f"{n.id} at {n.location} is on an obstacle")
        if n.location == grid.start:
            report.add("start", f"{n.id} sits on the start cell")
        if n.location in seen:
            report.add("duplicate-location", f"{n.id} and {seen[n.location]} share {n.location}")
        seen[n.location] = n.id
    return report
