"""Per-timestep frames of an episode, as text or SVG."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from ..core.grid import Cell
from ..env.state import CellState, EpisodeState, NodeStatus
from ..metric.evaluate import MetricReport

LEGEND = (
    "@ agent  # obstacle  . visited  : unobserved  (blank) unknown  "
    "? undiscovered node  ! discovered  * achieved  G/g goal achieved/not"
)

_NODE_MARK = {NodeStatus.UNDISCOVERED: "?", NodeStatus.DISCOVERED: "!", NodeStatus.ACHIEVED: "*"}


@dataclass(frozen=True)
class Frame:
    t: int
    state: EpisodeState
    path: tuple[Cell, ...]
    readout: tuple[int, int, int, int]
    case: int | None
    err: int | None


def build_frames(states: list[EpisodeState], report: MetricReport) -> list[Frame]:
    """One frame per state; frame t shows the readout after step t."""
    frames = []
    path: list[Cell] = []
    for i, st in enumerate(states):
        path.append(st.position)
        if i == 0:
            frames.append(Frame(0, st, tuple(path), (0, 0, 0, 0), None, None))
        else:
            v = report.verdicts[i - 1]
            frames.append(Frame(st.t, st, tuple(path), v.readout, int(v.case.case), v.err))
    return frames


def _header(f: Frame) -> str:
    c, e, n, s = f.readout
    case = "-" if f.case is None else f.case
    err = "-" if f.err is None else f.err
    return f"t={f.t} pos={f.state.position} case={case} c={c} e={e} n={n} S={s} err={err} {f.state.terminal.value}"


def ascii_frame(f: Frame) -> str:
    st = f.state
    grid = st.env.grid
    dag = st.env.dag
    rows = [_header(f)]
    for y in reversed(range(grid.height)):
        line = []
        for x in range(grid.width):
            cell = Cell(x, y)
            node = dag.node_at(cell)
            if cell == st.position:
                ch = "@"
            elif cell not in grid.traversable:
                ch = "#"
            elif node is not None:
                status = st.status(node.id)
                ch = _NODE_MARK[status]
                if node.is_goal:
                    ch = "G" if status is NodeStatus.ACHIEVED else "g"
            else:
                ch = {CellState.OBSERVED: ".", CellState.UNOBSERVED: ":", CellState.UNKNOWN: " "}[st.cell_state(cell)]
            line.append(ch)
        rows.append("".join(line))
    return "\n".join(rows) + "\n"


_FILL = {CellState.OBSERVED: "#f4f1e8", CellState.UNOBSERVED: "#cfe3f2", CellState.UNKNOWN: "#9aa0a6"}
_NODE_FILL = {NodeStatus.UNDISCOVERED: "#ffffff", NodeStatus.DISCOVERED: "#f2b134", NodeStatus.ACHIEVED: "#3a9d5d"}


def svg_frame(f: Frame, size: int = 32) -> str:
    st = f.state
    grid = st.env.grid
    dag = st.env.dag
    top = 24
    w, h = grid.width * size, grid.height * size + top

    def xy(cell: Cell) -> tuple[float, float]:
        return cell.x * size, top + (grid.height - 1 - cell.y) * size

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<text x="4" y="16" font-family="monospace" font-size="12">{escape(_header(f))}</text>',
    ]
    for y in range(grid.height):
        for x in range(grid.width):
            cell = Cell(x, y)
            px, py = xy(cell)
            fill = "#333333" if cell not in grid.traversable else _FILL[st.cell_state(cell)]
            out.append(f'<rect x="{px}" y="{py}" width="{size}" height="{size}" fill="{fill}" stroke="#777" stroke-width="0.5"/>')
    for node in dag.nodes:
        px, py = xy(node.location)
        status = st.status(node.id)
        stroke = "#c0392b" if node.is_goal else "#222"
        out.append(
            f'<circle cx="{px + size / 2}" cy="{py + size / 2}" r="{size * 0.32}" '
            f'fill="{_NODE_FILL[status]}" stroke="{stroke}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{px + size / 2}" y="{py + size / 2 + 3}" font-size="8" text-anchor="middle" '
            f'font-family="monospace">{escape(node.label[:4])}</text>'
        )
    if len(f.path) > 1:
        pts = " ".join(f"{xy(c)[0] + size / 2},{xy(c)[1] + size / 2}" for c in f.path)
        out.append(f'<polyline points="{pts}" fill="none" stroke="#1f5fa8" stroke-width="2" stroke-opacity="0.6"/>')
    px, py = xy(st.position)
    out.append(f'<rect x="{px + size * 0.3}" y="{py + size * 0.3}" width="{size * 0.4}" height="{size * 0.4}" fill="#1f5fa8"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_frames(frames: list[Frame], out_dir: Path, backends: tuple[str, ...] = ("ascii", "svg")) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    width = max(3, len(str(len(frames))))
    for f in frames:
        stem = f"frame_{f.t:0{width}d}"
        if "ascii" in backends:
            p = out_dir / f"{stem}.txt"
            p.write_text(ascii_frame(f))
            written.append(p)
        if "svg" in backends:
            p = out_dir / f"{stem}.svg"
            p.write_text(svg_frame(f))
            written.append(p)
    return written
