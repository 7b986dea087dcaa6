"""Command line entry point: ``wsnrecover {run,gen,routes,sweep}``.

Exit codes: 0 success, 1 usage or parse error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import ConfigError, SimConfig, parse_config
from .model import SINK_ID
from .routing import build_graph, shortest_paths
from .scenario import TopologyError, dump_topology, generate_topology, load_topology, write_metrics
from .sim import simulate, topology_rng

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_config(args) -> SimConfig:
    cfg = parse_config(Path(args.config).read_text(encoding="utf-8")) if args.config else SimConfig()
    if getattr(args, "seed", None) is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _topology(args, cfg: SimConfig):
    if args.topology:
        return load_topology(Path(args.topology).read_text(encoding="utf-8"))
    return generate_topology(cfg, topology_rng(cfg.seed))


def summarize(trace, state) -> dict:
    first_death = next((m.round for m in trace if m.alive_count < len(state.nodes)), None)
    return {
        "rounds": len(trace),
        "elections": state.head_set_version,
        "packets_delivered": sum(m.packets_delivered for m in trace),
        "transmissions": sum(m.transmissions for m in trace),
        "first_death_round": first_death,
        "final_alive": trace[-1].alive_count if trace else state.alive_count,
    }


def _fmt_summary(s: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in s.items())


def cmd_run(args) -> int:
    cfg = _load_config(args)
    if args.max_rounds is not None:
        cfg = cfg.replace(max_rounds=args.max_rounds)
    topo = _topology(args, cfg)
    trace, state = simulate(cfg, topo)
    csv_text = write_metrics(trace)
    summary = _fmt_summary(summarize(trace, state))
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8", newline="\n")
        print(summary)
    else:
        sys.stdout.write(csv_text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = _load_config(args)
    if args.nodes is not None:
        cfg = cfg.replace(node_count=args.nodes, n_heads=min(cfg.n_heads, args.nodes))
    text = dump_topology(generate_topology(cfg, topology_rng(cfg.seed)))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def format_routes(graph) -> str:
    name = lambda v: "sink" if v == SINK_ID else str(v)  # noqa: E731
    lines = ["from,to,weight"]
    for (i, j), w in sorted(graph.weights.items()):
        lines.append(f"{name(i)},{name(j)},{w:.9e}")
    lines.append("")
    lines.append("head,next_hop,path_cost")
    for h in graph.heads:
        lines.append(f"{name(h)},{name(graph.next_hop[h])},{graph.path_cost[h]:.9e}")
    return "\n".join(lines) + "\n"


def cmd_routes(args) -> int:
    cfg = _load_config(args)
    nodes = load_topology(Path(args.topology).read_text(encoding="utf-8"))
    alive = [n for n in nodes if n.alive]
    graph = shortest_paths(build_graph(alive, cfg.sink, cfg.energy))
    sys.stdout.write(format_routes(graph))
    return EXIT_OK


def _sweep_one(cfg: SimConfig, topo_text: str | None, out: str) -> str:
    topo = load_topology(topo_text) if topo_text else generate_topology(cfg, topology_rng(cfg.seed))
    trace, state = simulate(cfg, topo)
    Path(out).write_text(write_metrics(trace), encoding="utf-8", newline="\n")
    return f"seed={cfg.seed} {_fmt_summary(summarize(trace, state))}"


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    topo_text = Path(args.topology).read_text(encoding="utf-8") if args.topology else None
    if topo_text:
        load_topology(topo_text)  # fail fast, before spawning workers
    seeds = range(args.first_seed, args.first_seed + args.seeds)
    jobs = [(cfg.replace(seed=s), topo_text, str(out_dir / f"metrics_seed{s}.csv")) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(_sweep_one, *zip(*jobs)))
    else:
        lines = [_sweep_one(*j) for j in jobs]
    for line in lines:
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wsnrecover", description="Failed-cluster self-recovery simulator")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="simulate one scenario and write the metrics CSV")
    r.add_argument("--config")
    r.add_argument("--topology")
    r.add_argument("--seed", type=int)
    r.add_argument("--max-rounds", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("gen", help="write a seeded uniform topology CSV")
    g.add_argument("--config")
    g.add_argument("--seed", type=int)
    g.add_argument("--nodes", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("routes", help="dump edge weights and next hops, treating every node as a head")
    t.add_argument("--config")
    t.add_argument("--topology", required=True)
    t.set_defaults(func=cmd_routes)

    s = sub.add_parser("sweep", help="run several seeds, one metrics file each")
    s.add_argument("--config")
    s.add_argument("--topology")
    s.add_argument("--seeds", type=int, default=3)
    s.add_argument("--first-seed", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TopologyError, OSError) as exc:
        print(f"wsnrecover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"wsnrecover: runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
