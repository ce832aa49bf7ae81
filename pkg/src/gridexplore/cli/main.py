"""Command-line entry point: gen, run, eval, report, render."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..agents.chat import AdapterError, ChatAdapterConfig
from ..agents.driver import run_episode
from ..agents.policies import AGENT_KINDS, make_agent
from ..agents.prompts import VARIANTS, PromptVariant
from ..env.state import Terminal
from ..env.trajectory import ReplayDivergence, TrajectoryFormatError, TrajectoryRecord, replay
from ..gen.config import DAG_SIZES, DENSITIES, LABEL_MODES, OPTION_COUNT_PROBS, ConfigError, GenerationError
from ..gen.environment import Environment, generate_environment
from ..gen.fixtures import pasta_environment
from ..gen.io import EnvironmentFormatError, load_environment, save_environment
from ..metric.evaluate import evaluate_states, evaluate_trajectory
from .aggregate import AggregateReport
from .config import RunSpec, episode_seed, gen_config_from, load_config
from .render import build_frames, write_frames

log = logging.getLogger("gridexplore")

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_INFRA = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, top: bool) -> None:
    d = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--seed", type=int, **({"default": None} if top else d), help="global seed")
    p.add_argument("--out", type=Path, **({"default": None} if top else d), help="output file or directory")
    p.add_argument("--parallel", type=int, **({"default": 1} if top else d), help="worker threads")
    p.add_argument("--config", type=Path, **({"default": None} if top else d), help="JSON or YAML config")


def build_parser() -> argparse.ArgumentParser:
    p = Parser(prog="gridexplore", description="Grid environments with task DAGs and exploration/exploitation error scoring.")
    _global_flags(p, True)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", parser_class=Parser)

    g = sub.add_parser("gen", help="generate environment files")
    _global_flags(g, False)
    g.add_argument("--dag-size", choices=sorted(DAG_SIZES))
    g.add_argument("--exploit-demand", choices=sorted(DENSITIES))
    g.add_argument("--difficulty", choices=sorted(OPTION_COUNT_PROBS))
    g.add_argument("--label-mode", choices=LABEL_MODES)
    g.add_argument("--alpha", type=float, help="budget multiplier")
    g.add_argument("--seeds", type=int, nargs="+", help="write one file per seed")
    g.add_argument("--sweep", action="store_true", help="all 9 size x demand configs")
    g.add_argument("--fixture", choices=["pasta"], help="write a bundled hand-made environment")

    r = sub.add_parser("run", help="run episodes and write trajectories")
    _global_flags(r, False)
    r.add_argument("--env", type=Path, action="append", default=[], help="environment file (repeatable)")
    r.add_argument("--env-dir", type=Path, help="directory of environment files")
    r.add_argument("--agent", choices=AGENT_KINDS)
    r.add_argument("--variant", choices=VARIANTS)
    r.add_argument("--harness", action="store_true", default=None)
    r.add_argument("--seeds", type=int, nargs="+", help="episode seeds per environment")
    r.add_argument("--endpoint")
    r.add_argument("--model")
    r.add_argument("--temperature", type=float)
    r.add_argument("--api-key-env", help="environment variable holding the API key")
    r.add_argument("--max-retries", type=int)
    r.add_argument("--timeout", type=float)
    r.add_argument("--history-window", type=int)

    e = sub.add_parser("eval", help="score trajectories")
    _global_flags(e, False)
    e.add_argument("--traj", type=Path, action="append", default=[], help="trajectory file (repeatable)")
    e.add_argument("--traj-dir", type=Path)
    e.add_argument("--env", type=Path, help="environment file; defaults to the one embedded in each log")
    e.add_argument("--per-step", action="store_true")
    e.add_argument("--aggregate", action="store_true")

    rep = sub.add_parser("report", help="aggregate metric reports or trajectories")
    _global_flags(rep, False)
    rep.add_argument("paths", type=Path, nargs="+")

    v = sub.add_parser("render", help="draw per-timestep frames")
    _global_flags(v, False)
    v.add_argument("--traj", type=Path, required=True)
    v.add_argument("--env", type=Path)
    v.add_argument("--format", choices=["ascii", "svg", "both"], default="both")
    return p


def _config(args) -> dict:
    return load_config(args.config) if args.config else {}


# gen


def cmd_gen(args) -> int:
    out = args.out
    if args.fixture:
        env = pasta_environment(args.label_mode or "semantic", seed=args.seed or 0)
        path = save_environment(env, out or Path(f"{env.id}.json"))
        _announce(path, env)
        return EXIT_OK
    base = _config(args).get("gen", {})
    flags = {
        "dag_size": args.dag_size,
        "exploitation_demand": args.exploit_demand,
        "difficulty": args.difficulty,
        "label_mode": args.label_mode,
        "budget_multiplier": args.alpha,
    }
    seeds = args.seeds if args.seeds else [args.seed if args.seed is not None else base.get("seed", 0)]
    if args.sweep:
        configs = [
            gen_config_from(base, **{**flags, "dag_size": s, "exploitation_demand": d})
            for d in ("low", "medium", "high")
            for s in ("small", "medium", "large")
        ]
    else:
        configs = [gen_config_from(base, **flags)]
    jobs = [c.with_seed(s) for c in configs for s in seeds]
    many = len(jobs) > 1
    if out is None:
        out = Path("envs") if many else Path(f"{jobs[0].name}-s{jobs[0].seed}.json")
    for cfg in jobs:
        env = generate_environment(cfg)
        path = save_environment(env, out / f"{env.id}.json" if many else out)
        _announce(path, env)
    return EXIT_OK


def _announce(path: Path, env: Environment) -> None:
    g = env.grid
    print(f"{path}: {g.width}x{g.height} grid, {len(g.traversable)} traversable, {len(env.dag)} nodes, budget {env.budget}")


# run


def _run_spec(args) -> RunSpec:
    cfg = _config(args)
    data = dict(cfg.get("run", {}))
    spec = RunSpec.from_dict(data)
    env_paths = list(spec.env_paths) + list(args.env)
    if args.env_dir:
        env_paths += sorted(args.env_dir.glob("*.json"))
    spec.env_paths = env_paths
    if not env_paths and "gen" in cfg:
        spec.gen = gen_config_from(cfg["gen"], seed=args.seed)
    for name in ("agent", "variant", "seeds", "harness"):
        value = getattr(args, name)
        if value is not None:
            setattr(spec, name, value)
    if args.parallel != 1 or "parallel" not in data:
        spec.parallel = args.parallel
    if args.out is not None:
        spec.out = args.out
    if args.seed is not None:
        spec.global_seed = args.seed
    chat = dict(spec.chat)
    for flag, key in (
        ("endpoint", "endpoint"),
        ("model", "model"),
        ("temperature", "temperature"),
        ("api_key_env", "credential_env"),
        ("max_retries", "max_retries"),
        ("timeout", "timeout"),
        ("history_window", "history_window"),
    ):
        value = getattr(args, flag)
        if value is not None:
            chat[key] = value
    spec.chat = chat
    spec.validate()
    return spec


def _episode(spec: RunSpec, env: Environment, seed: int) -> dict:
    derived = episode_seed(spec.global_seed, env.id, seed)
    options = {}
    if spec.agent == "chat":
        options = {
            "config": ChatAdapterConfig(**spec.chat),
            "variant": PromptVariant(spec.variant, spec.harness),
        }
    agent = make_agent(spec.agent, derived, **options)
    rec = run_episode(env, agent, derived)
    rec.agent["episode"] = seed
    stem = f"{env.id}__{spec.agent}__ep{seed}"
    path = rec.save(spec.out / f"{stem}.jsonl")
    if spec.agent == "chat":
        (spec.out / f"{stem}.chat.json").write_text(json.dumps(agent.transcript, indent=2) + "\n")
    return {
        "file": path.name,
        "environment": env.id,
        "seed": seed,
        "episode_seed": derived,
        "terminal": rec.terminal,
        "steps": rec.steps,
        "error": rec.error,
    }


def cmd_run(args) -> int:
    spec = _run_spec(args)
    envs = [load_environment(p) for p in spec.env_paths] if spec.env_paths else [generate_environment(spec.gen)]
    spec.out.mkdir(parents=True, exist_ok=True)
    jobs = [(env, s) for env in envs for s in spec.seeds]
    with ThreadPoolExecutor(max_workers=spec.parallel) as pool:
        results = list(pool.map(lambda job: _episode(spec, *job), jobs))
    for r in results:
        note = f" ({r['error']})" if r["error"] else ""
        print(f"{r['file']}: {r['terminal']} after {r['steps']} steps{note}")
    (spec.out / "run_summary.json").write_text(json.dumps(results, indent=2) + "\n")
    aborted = [r for r in results if r["terminal"] == Terminal.ABORTED.value]
    if aborted:
        print(f"{len(aborted)} episode(s) aborted by adapter failures", file=sys.stderr)
        return EXIT_INFRA
    return EXIT_OK


# eval / report


def _group(env: Environment) -> str:
    if env.config is not None:
        return env.config.name
    return env.name or env.id


def score_file(path: Path, env: Environment | None = None, per_step: bool = False) -> dict:
    rec = TrajectoryRecord.load(path)
    target = env or rec.environment
    report = evaluate_trajectory(target, rec, source=str(path))
    doc = {
        "trajectory": path.name,
        "environment": target.id,
        "group": _group(target),
        "agent": rec.agent,
    }
    doc.update(report.to_dict(per_step=per_step))
    return doc


def _traj_files(args) -> list[Path]:
    files = list(args.traj)
    if args.traj_dir:
        files += sorted(args.traj_dir.glob("*.jsonl"))
    return files


def cmd_eval(args) -> int:
    files = _traj_files(args)
    if not files and not args.traj_dir:
        raise UsageError("eval needs --traj or --traj-dir")
    env = load_environment(args.env) if args.env else None
    docs = [score_file(f, env, args.per_step) for f in files]
    if not docs:
        print("warning: no trajectory files found", file=sys.stderr)
    single = len(files) == 1 and not args.traj_dir
    out = args.out
    if single and (out is None or out.suffix == ".json"):
        text = json.dumps(docs[0], indent=2) + "\n"
        if out is None:
            sys.stdout.write(text)
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text)
    else:
        out = out or Path("reports")
        out.mkdir(parents=True, exist_ok=True)
        for f, doc in zip(files, docs):
            (out / f"{f.stem}.report.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {len(docs)} report(s) to {out}")
    for doc in docs:
        s = doc["summary"]
        print(
            f"{doc['trajectory']}: success={s['success']} steps={s['steps']} "
            f"explore={s['exploration_error']} exploit={s['exploitation_error']}",
            file=sys.stderr,
        )
    if args.aggregate:
        agg = AggregateReport.from_reports(docs)
        where = (out if out and out.is_dir() else Path(".")) / "aggregate.json"
        where.write_text(json.dumps(agg.to_dict(), indent=2) + "\n")
        print(agg.table())
    return EXIT_OK


def _collect_reports(paths: list[Path]) -> list[dict]:
    docs = []
    for p in paths:
        items = sorted(p.iterdir()) if p.is_dir() else [p]
        for f in items:
            if f.name.endswith(".report.json"):
                docs.append(json.loads(f.read_text()))
            elif f.suffix == ".jsonl":
                docs.append(score_file(f))
    return docs


def cmd_report(args) -> int:
    docs = _collect_reports(args.paths)
    if not docs:
        print("warning: no reports or trajectories found", file=sys.stderr)
    agg = AggregateReport.from_reports(docs)
    print(agg.table())
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(agg.to_dict(), indent=2) + "\n")
    return EXIT_OK


# render


def cmd_render(args) -> int:
    rec = TrajectoryRecord.load(args.traj)
    env = load_environment(args.env) if args.env else rec.environment
    states = replay(env, rec, str(args.traj))
    frames = build_frames(states, evaluate_states(states))
    backends = ("ascii", "svg") if args.format == "both" else (args.format,)
    out = args.out or Path(f"{args.traj.stem}_frames")
    written = write_frames(frames, out, backends)
    print(f"wrote {len(frames)} frame(s), {len(written)} file(s) to {out}")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "eval": cmd_eval, "report": cmd_report, "render": cmd_render}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gridexplore {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, GenerationError, EnvironmentFormatError, TrajectoryFormatError, ReplayDivergence) as exc:
        print(f"gridexplore {args.command}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"gridexplore {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AdapterError, OSError) as exc:
        print(f"gridexplore {args.command}: {exc}", file=sys.stderr)
        return EXIT_INFRA


if __name__ == "__main__":
    sys.exit(main())
