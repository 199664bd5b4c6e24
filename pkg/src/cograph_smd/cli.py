"""Command-line interface.

Exit codes: 0 success, 1 parse or recognition failure (or other invalid
input), 2 connectivity violation, 3 oracle mismatch. A completed ``verify``
exits 0 whatever its verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .arbitration import run_arbitration
from .bench import run_benchmark
from .cotree import CoTree, CoTreeError, evaluate, parse, recognize, serialize
from .directed import DEFAULT_RULE, RULE_VARIANTS, smd_directed
from .generator import DIRECTED_JOIN_ROOT, UNDIRECTED_MODE, GenConfig, random_cotree
from .graph import Connectivity, Graph, GraphError, connectivity, format_dot, format_edge_list, read_edge_list
from .results import ConnectivityError
from .undirected import smd_undirected, srg_diameter2

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONNECTIVITY = 2
EXIT_MISMATCH = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read_cotree(value: str) -> CoTree:
    path = Path(value)
    text = path.read_text(encoding="utf-8") if path.is_file() else value
    return parse(text)


def _load_graph(args) -> Graph:
    """Graph from ``--edges`` or ``--cotree``."""
    if args.edges:
        return read_edge_list(args.edges)
    tree = _read_cotree(args.cotree)
    return evaluate(tree, directed=True if getattr(args, "directed", False) else None)


def _load_tree(args) -> tuple[CoTree, bool]:
    """Co-tree and directedness from ``--cotree`` or a recognized ``--edges`` file."""
    if args.edges:
        g = read_edge_list(args.edges)
        found = recognize(g)
        if not found:
            raise CliError(found.describe())
        return found, g.directed
    tree = _read_cotree(args.cotree)
    return tree, tree.is_directed or args.directed


def _require_connected(g: Graph) -> None:
    c = connectivity(g)
    if g.directed and c != Connectivity.STRONGLY_CONNECTED:
        raise CliError("graph is not strongly connected", EXIT_CONNECTIVITY)
    if not g.directed and c != Connectivity.CONNECTED:
        raise CliError("graph is not connected", EXIT_CONNECTIVITY)


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


# -- commands ------------------------------------------------------------------


def cmd_smd(args) -> int:
    tree, directed = _load_tree(args)
    res = smd_directed(tree, args.rule) if directed else smd_undirected(tree)
    checked = False
    if args.oracle_check:
        if res.n > oracle.MAX_VERTICES:
            raise CliError(f"--oracle-check supports at most {oracle.MAX_VERTICES} vertices")
        g = evaluate(tree, directed=directed)
        expected, _ = oracle.smd_exact(g)
        bad_pair = oracle.find_unresolved_pair(g, res.resolving_set)
        if expected != res.smd or bad_pair is not None:
            detail = f"oracle smd {expected}, recursion smd {res.smd}"
            if bad_pair is not None:
                detail += f"; pair ({bad_pair[0]}, {bad_pair[1]}) is not strongly resolved"
            raise CliError("oracle mismatch: " + detail, EXIT_MISMATCH)
        checked = True
    if args.json:
        _emit_json(
            {
                "vertices": res.n,
                "smd": res.smd,
                "strong_resolving_set": sorted(res.resolving_set),
                "clique_witness": sorted(res.clique_witness),
                "cotree": serialize(tree),
                "mode": res.mode,
                "oracle_checked": checked,
                "rule_variant": res.rule_variant,
            }
        )
    else:
        print(f"smd: {res.smd}")
        print("strong resolving set: " + " ".join(sorted(res.resolving_set)))
        if checked:
            print("oracle: agrees")
    return EXIT_OK


def cmd_srg(args) -> int:
    g = _load_graph(args)
    _require_connected(g)
    if g.n <= oracle.MAX_VERTICES:
        h = oracle.srg_exact(g)
    elif not g.directed:
        try:
            h = srg_diameter2(g)
        except GraphError as exc:
            raise CliError(f"graph exceeds the exact bound of {oracle.MAX_VERTICES} vertices and {exc}") from None
    else:
        raise CliError(f"directed graphs above {oracle.MAX_VERTICES} vertices are not supported")
    sys.stdout.write(format_dot(h, "SRG") if args.dot else format_edge_list(h))
    return EXIT_OK


def cmd_recognize(args) -> int:
    found = recognize(read_edge_list(args.edges))
    if not found:
        raise CliError(found.describe())
    print(serialize(found))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    _require_connected(g)
    chosen = [x for x in args.set.split(",") if x] if args.set else []
    unknown = sorted(set(chosen) - set(g.labels))
    if unknown:
        raise CliError("unknown vertices: " + ", ".join(unknown))
    pair = oracle.find_unresolved_pair(g, chosen)
    if pair is None:
        print("valid")
        return EXIT_OK
    print(f"invalid: no vertex of the set strongly resolves ({pair[0]}, {pair[1]})")
    return EXIT_OK


def cmd_gen(args) -> int:
    mode = DIRECTED_JOIN_ROOT if args.directed else UNDIRECTED_MODE
    print(serialize(random_cotree(GenConfig(args.leaves, args.seed, mode))))
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(float(x)) for x in args.sizes.split(",") if x]
    rows = run_benchmark(sizes, seed=args.seed, directed=args.directed, repeats=args.repeats)
    if args.json:
        _emit_json([r.__dict__ for r in rows])
    else:
        print("size,generate_ms,dp_ms")
        for r in rows:
            print(f"{r.size},{r.generate_ms:.3f},{r.dp_ms:.3f}")
    return EXIT_OK


def cmd_discrepancy(args) -> int:
    report = run_arbitration(args.max_leaves, seed=args.seed, count=args.count, fuzz_leaves=args.fuzz_leaves)
    if args.json:
        _emit_json(report.to_dict(show=args.show))
    else:
        sys.stdout.write(report.to_text(show=args.show))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, directed_flag: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cotree", metavar="EXPR|FILE", help="co-tree expression, or a file holding one")
    src.add_argument("--edges", metavar="FILE", help="edge-list file")
    if directed_flag:
        p.add_argument("--directed", action="store_true", help="read a co-tree's joins as two-way arcs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cograph-smd", description="Strong metric dimension of co-graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smd", help="strong metric dimension and a minimum strong resolving set")
    _add_input(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle-check", action="store_true", help=f"cross-check with the exact oracle (n <= {oracle.MAX_VERTICES})")
    p.add_argument("--rule", choices=RULE_VARIANTS, default=DEFAULT_RULE, help="directed recursion variant")
    p.set_defaults(func=cmd_smd)

    p = sub.add_parser("srg", help="edges of the strong resolving graph")
    _add_input(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_srg)

    p = sub.add_parser("recognize", help="co-tree of an edge list, or the reason there is none")
    p.add_argument("--edges", metavar="FILE", required=True)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("verify", help="check a strong resolving set with the oracle")
    _add_input(p)
    p.add_argument("--set", default="", metavar="a,b,c")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="seeded random co-tree")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--directed", action="store_true", help="directed kinds, join root")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the recursion on seeded random co-trees")
    p.add_argument("--sizes", default="1000,10000,100000,1000000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("discrepancy", help="compare directed rule variants with the oracle")
    p.add_argument("--max-leaves", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200, help="random trees on top of the exhaustive ones")
    p.add_argument("--fuzz-leaves", type=int, default=12)
    p.add_argument("--show", type=int, default=5, help="counterexamples listed per variant")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discrepancy)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConnectivityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONNECTIVITY
    except (CoTreeError, GraphError, oracle.OracleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
