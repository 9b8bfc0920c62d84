"""``faultembed`` command line.

Exit codes: 0 success, 1 domain failure (failed verification, rejected
screen with ``--expect-embeddable``, no catalog embedding), 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, graphio, treewidth
from .embed_clique import embed_clique_perfect
from .embed_faulty import ALGORITHMS, FLIP_DROP, GREEDY, SCHEMES, orchestrate
from .fabric import apply_faults, build_fabric
from .graph import complete_graph
from .minors import embed_via_catalog, enumerate_maximal_minors
from .verify import verify_minor_embedding, verify_tree_decomposition


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _graph_or_fabric(text):
    head = next((ln.split()[0] for ln in text.splitlines() if ln.split() and not ln.startswith("#")), "")
    if head == "fabric":
        return graphio.read_fabric(text).to_graph()
    return graphio.read_problem(text)


def cmd_gen_fabric(args):
    f = build_fabric(args.m, args.c)
    if args.fail_rate is not None and args.dead_list:
        raise UsageError("--fail-rate and --dead-list are mutually exclusive")
    if args.fail_rate is not None:
        f = apply_faults(f, rate=args.fail_rate, seed=args.seed)
    elif args.dead_list:
        tokens = _read(args.dead_list).split()
        try:
            dead = [int(t) for t in tokens]
        except ValueError:
            raise UsageError("dead list must contain integers only") from None
        if len(set(dead)) != len(dead):
            raise UsageError("dead list has duplicate vertices")
        f = apply_faults(f, dead)
    _write(graphio.write_fabric(f), args.output)
    return 0


def cmd_embed(args):
    f = graphio.read_fabric(_read(args.fabric))
    if f.is_perfect:
        rec = embed_clique_perfect(f.m, f.c).to_record("algorithm=canonical,corner=UL,drops=0")
    else:
        rec = orchestrate(f, args.algorithm, args.scheme, cross=args.greedy_cross).to_record()
    _write(graphio.write_embedding(rec), args.output)
    return 0


def cmd_verify(args):
    f = graphio.read_fabric(_read(args.fabric))
    if args.decomposition:
        bags, edges = graphio.read_decomposition(_read(args.decomposition))
        report = verify_tree_decomposition(f, bags, edges)
        _write(report.render(f"bags={len(bags)}"), args.output)
        return 0 if report.passed else 1
    if not args.embedding:
        raise UsageError("verify needs --embedding or --decomposition")
    rec = graphio.read_embedding(_read(args.embedding))
    if (rec.m, rec.c) != (f.m, f.c):
        raise UsageError(f"embedding is for F({rec.m}, {rec.c}) but fabric is F({f.m}, {f.c})")
    if args.problem:
        p = graphio.read_problem(_read(args.problem))
    else:
        p = complete_graph(args.clique if args.clique is not None else rec.n_nodes)
    if p.n != rec.n_nodes:
        raise UsageError(f"problem has {p.n} vertices but embedding has {rec.n_nodes} nodes")
    report = verify_minor_embedding(f, p, rec.chains)
    _write(report.render(f"nodes={rec.n_nodes}"), args.output)
    return 0 if report.passed else 1


def cmd_treewidth(args):
    lo, hi = treewidth.treewidth_bounds(args.m, args.c)
    out = f"bounds m={args.m} c={args.c} lower={lo} upper={hi}\n"
    if args.emit_decomposition is not None:
        td = treewidth.build_tree_decomposition(args.m, args.c)
        text = graphio.write_decomposition(td.bags, td.tree_edges)
        if args.emit_decomposition == "-":
            out += text
        else:
            Path(args.emit_decomposition).write_text(text)
    _write(out, args.output)
    return 0


def cmd_screen(args):
    p = graphio.read_problem(_read(args.problem))
    verdict = treewidth.screen_problem(p, args.m, args.c)
    _write(verdict.render(), args.output)
    if args.expect_embeddable and verdict.status == treewidth.REJECTED:
        return 1
    return 0


def cmd_minors(args):
    g = _graph_or_fabric(_read(args.graph))
    catalog = enumerate_maximal_minors(g)
    text = graphio.write_catalog(catalog)
    if args.embed is None:
        _write(text, args.catalog or args.output)
        return 0
    if args.catalog:
        Path(args.catalog).write_text(text)
    p = _graph_or_fabric(_read(args.embed))
    chains = embed_via_catalog(p, g, catalog)
    if chains is None:
        _write(f"NONE graph with {p.n} vertices is not a minor of the host\n", args.output)
        return 1
    _write(graphio.write_embedding(graphio.EmbeddingRecord(0, 0, chains, "catalog")), args.output)
    return 0


def cmd_simulate(args):
    cfg = bench.parse_config(_read(args.config))
    if args.workers is not None:
        cfg.workers = args.workers
    stats = bench.run_trials(cfg)
    _write(bench.to_csv(stats, histogram=cfg.histogram and not args.no_histogram), args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="faultembed", description="Clique minor embedding on faulty grid-of-cells fabrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("gen-fabric", cmd_gen_fabric, "write an F(m, c) fabric file, optionally with faults")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--fail-rate", type=float, default=None, help="fault fraction in [0, 1]")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dead-list", default=None, help="file of whitespace-separated dead vertex ids")

    sp = add("embed", cmd_embed, "embed the largest clique the fabric supports")
    sp.add_argument("--fabric", required=True)
    sp.add_argument("--algorithm", choices=ALGORITHMS, default=GREEDY)
    sp.add_argument("--scheme", choices=SCHEMES, default=FLIP_DROP)
    sp.add_argument("--greedy-cross", action="store_true",
                    help="let greedy pair half-chains of different diagonals")

    sp = add("verify", cmd_verify, "check an embedding or a tree decomposition against a fabric")
    sp.add_argument("--fabric", required=True)
    sp.add_argument("--embedding")
    sp.add_argument("--decomposition")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--clique", type=int, help="problem is K_n (default: one node per chain)")
    group.add_argument("--problem", help="problem graph or QUBO file")

    sp = add("treewidth", cmd_treewidth, "treewidth bounds of F(m, c)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--emit-decomposition", nargs="?", const="-", default=None,
                    help="also write the explicit decomposition (to PATH or stdout)")

    sp = add("screen", cmd_screen, "screen a problem graph for embeddability in F(m, c)")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--expect-embeddable", action="store_true",
                    help="exit 1 when the problem is rejected")

    sp = add("minors", cmd_minors, "maximal-minor catalog of a small graph")
    sp.add_argument("--graph", required=True, help="host graph or fabric file (<= 10 vertices)")
    sp.add_argument("--catalog", default=None, help="where to write the catalog")
    sp.add_argument("--embed", default=None, help="problem graph to embed through the catalog")

    sp = add("simulate", cmd_simulate, "Monte Carlo fault-resilience sweep to CSV")
    sp.add_argument("--config", required=True, help="key = value config file")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--no-histogram", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, graphio.ParseError) as exc:
        print(f"faultembed {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"faultembed {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
