"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 input or parse error,
3 verification or post-condition failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .classification import classify_nodes, control_report
from .errors import ConfigInvalid, ControlModeError, ParseError, PostConditionViolation, SaturationFailure, TooLarge
from .generation import GeneratorConfig, Model, generate
from .graph import read_edge_list, serialize_edge_list
from .matching import maximum_matching, verify_maximum_matching
from .oracle import DEFAULT_MAX_NODES, oracle_classification
from .rewiring import GUARDS, alter_to_centralized
from .sweep import SweepConfig, run_experiment_sweep

log = logging.getLogger("controlmode")

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj, path) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    config = GeneratorConfig(
        n=args.nodes,
        k=args.k,
        gamma_in=args.gamma_in if args.gamma_in is not None else args.gamma,
        gamma_out=args.gamma_out if args.gamma_out is not None else args.gamma,
        seed=args.seed,
        model=Model(args.model),
    )
    graph = generate(config)
    text = serialize_edge_list(graph)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        _dump(config.to_dict(), args.out + ".json")
    return 0


def cmd_analyze(args) -> int:
    graph = read_edge_list(args.graph, dedup=args.dedup)
    report = control_report(graph, threshold=args.threshold)
    out = report.to_dict(labels=args.labels)
    if args.labels and graph.labels is not None:
        out["node_ids"] = graph.labels
    _dump(out, args.json)
    return 0


def cmd_rewire(args) -> int:
    graph = read_edge_list(args.graph, dedup=args.dedup)
    outcome = alter_to_centralized(graph, guard=args.guard, threshold=args.threshold)
    _dump(outcome.to_dict(), args.json)
    if args.out_graph and not args.dry_run:
        with open(args.out_graph, "w", encoding="utf-8", newline="\n") as fh:
            if args.original_labels and graph.labels is not None:
                fh.writelines(f"{graph.labels[u]}\t{graph.labels[v]}\n" for u, v in graph.edges())
            else:
                fh.write(serialize_edge_list(graph))
    return 0


def cmd_verify(args) -> int:
    graph = read_edge_list(args.graph, dedup=args.dedup)
    oracle = oracle_classification(graph, max_nodes=args.budget)
    m = maximum_matching(graph)
    verify_maximum_matching(graph, m)
    problems = []
    if m.size != oracle["max_size"]:
        problems.append(f"matching size {m.size} != oracle {oracle['max_size']}")
    got = classify_nodes(graph, m).inputs()
    if got != oracle["input"]:
        problems.append(f"input nodes {sorted(got)} != oracle {sorted(oracle['input'])}")
    for guard in GUARDS:
        rewired = graph.copy()
        outcome = alter_to_centralized(rewired, guard=guard)
        after = oracle_classification(rewired, max_nodes=args.budget)
        if after["max_size"] != oracle["max_size"]:
            problems.append(f"{guard}: rewiring changed the maximum matching size")
        comp = outcome.target_component
        if comp is not None:
            left = sorted((comp.members - comp.drivers) & after["input"])
            if left:
                problems.append(f"{guard}: component members still input after rewiring: {left}")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        print("oracle agreement: FAILED")
        return EXIT_VERIFY
    print("oracle agreement: OK")
    return 0


def cmd_sweep(args) -> int:
    config = SweepConfig(
        n=args.nodes,
        k_min=args.k_min,
        k_max=args.k_max,
        k_step=args.k_step,
        instances_per_k=args.instances,
        base_seed=args.seed,
        gamma=args.gamma,
        model=Model(args.model),
        filter_input_largest=args.filter_input_largest,
        guard=args.guard,
        workers=args.workers,
    )
    if args.csv in (None, "-"):
        run_experiment_sweep(config, sys.stdout)
    else:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            run_experiment_sweep(config, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="controlmode", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic digraph as an edge list")
    p.add_argument("--model", choices=[m.value for m in Model], default="sf")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--k", type=float, required=True, help="average total degree 2L/N")
    p.add_argument("--gamma", type=float, default=3.0)
    p.add_argument("--gamma-in", type=float)
    p.add_argument("--gamma-out", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    def graph_args(p):
        p.add_argument("--graph", required=True)
        p.add_argument("--dedup", action="store_true", help="merge repeated edges instead of failing")

    p = sub.add_parser("analyze", help="print the control report of a graph")
    graph_args(p)
    p.add_argument("--labels", action="store_true", help="include per-node labels")
    p.add_argument("--json")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rewire", help="switch a graph to centralized control")
    graph_args(p)
    p.add_argument("--out-graph")
    p.add_argument("--original-labels", action="store_true", help="write the rewired graph with input labels")
    p.add_argument("--json")
    p.add_argument("--dry-run", action="store_true")
    p.add_argument("--guard", choices=GUARDS, default="final")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_rewire)

    p = sub.add_parser("verify", help="check classification and rewiring against brute force")
    graph_args(p)
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_NODES, help="largest node count accepted")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run the synthetic degree sweep")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--k-min", type=float, required=True)
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--k-step", type=float, default=0.1)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gamma", type=float, default=3.0)
    p.add_argument("--model", choices=[m.value for m in Model], default="sf")
    p.add_argument("--guard", choices=GUARDS, default="final")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--filter-input-largest", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except PostConditionViolation as exc:
        log.error("%s", exc)
        return EXIT_VERIFY
    except (ParseError, TooLarge, ConfigInvalid, SaturationFailure, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except ControlModeError as exc:
        log.error("%s", exc)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
