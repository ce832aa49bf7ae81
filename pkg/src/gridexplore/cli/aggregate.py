"""Grouped summaries over many metric reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import fmean
from typing import Iterable


@dataclass
class GroupStats:
    episodes: int = 0
    successes: int = 0
    exploration: list = field(default_factory=list)
    exploitation: list = field(default_factory=list)
    exploration_null: int = 0
    exploitation_null: int = 0
    success_steps: list = field(default_factory=list)

    def add(self, summary: dict) -> None:
        self.episodes += 1
        if summary["success"]:
            self.successes += 1
            self.success_steps.append(summary["steps"])
        for key in ("exploration", "exploitation"):
            value = summary[f"{key}_error"]
            if value is None:
                setattr(self, f"{key}_null", getattr(self, f"{key}_null") + 1)
            else:
                getattr(self, key).append(value)

    def to_dict(self) -> dict:
        def mean(xs):
            return fmean(xs) if xs else None

        return {
            "episodes": self.episodes,
            "success_rate": self.successes / self.episodes if self.episodes else None,
            "exploration_error": mean(self.exploration),
            "exploration_defined": len(self.exploration),
            "exploration_null": self.exploration_null,
            "exploitation_error": mean(self.exploitation),
            "exploitation_defined": len(self.exploitation),
            "exploitation_null": self.exploitation_null,
            "mean_steps_success": mean(self.success_steps),
        }


@dataclass
class AggregateReport:
    groups: dict[str, GroupStats] = field(default_factory=dict)

    @classmethod
    def from_reports(cls, reports: Iterable[dict]) -> "AggregateReport":
        """``reports`` are metric report documents carrying a ``group`` key."""
        agg = cls()
        for r in reports:
            agg.groups.setdefault(r.get("group") or "all", GroupStats()).add(r["summary"])
        return agg

    def to_dict(self) -> dict:
        return {name: g.to_dict() for name, g in sorted(self.groups.items())}

    def table(self) -> str:
        head = f"{'group':<28} {'n':>4} {'success':>8} {'explore':>9} {'exploit':>9} {'steps':>8}"
        rows = [head, "-" * len(head)]

        def fmt(x, spec):
            return "-" if x is None else format(x, spec)

        for name, g in sorted(self.groups.items()):
            d = g.to_dict()
            rows.append(
                f"{name:<28} {d['episodes']:>4} {fmt(d['success_rate'], '8.3f')} "
                f"{fmt(d['exploration_error'], '9.4f')} {fmt(d['exploitation_error'], '9.4f')} "
                f"{fmt(d['mean_steps_success'], '8.1f')}"
            )
        return "\n".join(rows)
