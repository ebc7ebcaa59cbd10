"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from .branching import verify_branching
from .covers import neighborhood_cover, verify_cover
from .generators import FAMILIES, generate
from .graphs import Graph, ParseError, bipartize, degeneracy, format_edge_list, read_edge_list
from .oracle import contains_biclique, ladder_index, min_near_twin_pair_bruteforce
from .partition import compute_partition, verify_partition
from .reconstruct import parity_conflicts, reconstruct
from .sparsifier import build_sparse_rep, build_tree, format_sparse_rep, read_sparse_rep, stats

OK, FAILED, USAGE = 0, 1, 2


class CliError(Exception):
    pass


def _threads(args) -> int:
    value = args.threads or os.environ.get("SPARSEBRANCH_THREADS") or 1
    try:
        n = int(value)
    except ValueError:
        raise CliError(f"invalid thread count {value!r}") from None
    if n < 1:
        raise CliError("thread count must be positive")
    return n


def _load(path) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def _host(g: Graph, bipartite: bool):
    if bipartite:
        if g.sides is None:
            raise CliError("--bipartite needs side declarations ('s L <v>' / 's R <v>') in the input")
        return g.to_bipartite()
    return bipartize(g)[0]


def cmd_generate(args) -> int:
    try:
        g = generate(args.family, *args.params, seed=args.seed)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from None
    _emit(format_edge_list(g, [f"{args.family} {' '.join(args.params)}".strip()]), args.output)
    return OK


def _trace(node, g, br) -> None:
    host = g if br.side == "left" else g.swap()
    pr = compute_partition(host, record=True)
    out = sys.stderr
    out.write(f"c trace node {node.id} depth {node.depth} {br.side}-branching\n")
    for r in pr.rounds:
        frozen = "" if r.frozen is None else " freeze " + ",".join(host.label(v) for v in r.frozen.tolist())
        partner = "-" if r.partner is None else host.label(r.partner)
        k = "-" if r.k is None else r.k
        out.write(f"c trace   round {r.round} remove {host.label(r.removed)} partner {partner} k {k}{frozen}\n")


def cmd_sparsify(args) -> int:
    _threads(args)
    g = _load(args.input)
    if args.bipartite and g.sides is None:
        raise CliError("--bipartite needs side declarations ('s L <v>' / 's R <v>') in the input")
    sr = build_sparse_rep(g, bipartite=args.bipartite)
    if args.trace:
        build_tree(_host(g, args.bipartite), on_branch=_trace)
    comments = ["sparsebranch sparse representation"]
    if args.stats:
        comments += ["stats " + line for line in stats(sr).lines()]
    _emit(format_sparse_rep(sr, comments), args.output)
    return OK


def cmd_reconstruct(args) -> int:
    try:
        sr = read_sparse_rep(args.input)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    _emit(format_edge_list(reconstruct(sr)), args.output)
    return OK


def cmd_stats(args) -> int:
    g = _load(args.input)
    sr = build_sparse_rep(g, bipartite=args.bipartite)
    st = stats(sr)
    sys.stdout.write("\n".join(st.lines()) + "\n")
    return OK if st.membership_ok and st.degeneracy_ok else FAILED


def cmd_cover(args) -> int:
    g = _load(args.input)
    nc = neighborhood_cover(g)
    out = [f"c overlap {nc.overlap} k_star {nc.k_star}"]
    for center, cluster in zip(nc.centers, nc.clusters):
        out.append(f"center {g.labels[center]}")
        out.append(" ".join(g.labels[v] for v in np.flatnonzero(cluster).tolist()))
    _emit("\n".join(out) + "\n", args.output)
    return OK


def cmd_verify(args) -> int:
    _threads(args)
    g = _load(args.input)
    if args.bipartite and g.sides is None:
        raise CliError("--bipartite needs side declarations ('s L <v>' / 's R <v>') in the input")
    results: list[tuple[str, bool, str]] = []

    node_failures: list[str] = []

    def hook(node, sub, br):
        rep = verify_branching(sub, br)
        if not rep.ok:
            node_failures.append(f"node {node.id} branching: {rep.violations[0]}")
        host = sub if br.side == "left" else sub.swap()
        prep = verify_partition(host, br.partition)
        if not prep.ok:
            node_failures.append(f"node {node.id} partition: {prep.violations[0]}")
        if br.overlap != br.partition.k_star:
            node_failures.append(f"node {node.id}: overlap {br.overlap} != k_star {br.partition.k_star}")

    host = _host(g, args.bipartite)
    nodes = build_tree(host, on_branch=hook)
    results.append(("branchings", not node_failures, "; ".join(node_failures[:3])))

    sr = build_sparse_rep(g, bipartite=args.bipartite)
    same = reconstruct(sr).same_as(g)
    results.append(("roundtrip", same, "" if same else "reconstructed graph differs"))
    conflicts = parity_conflicts(sr)
    results.append(("parity", conflicts == 0, f"{conflicts} pairs disagree" if conflicts else ""))
    st = stats(sr)
    results.append(("membership-bound", st.membership_ok, " ".join(map(str, st.membership_by_depth))))
    results.append(("degeneracy-bound", st.degeneracy_ok, f"{st.degeneracy} > {st.tau}"))
    height = max(n.depth for n in nodes)
    if len(host) <= args.ladder_limit:
        t = ladder_index(host, args.cap)
        certified = t < args.cap or height <= 2 * t
        results.append(("height-bound", (height <= 2 * t) or not certified, f"height {height}, ladder index {t}"))

    if args.cover:
        nc = neighborhood_cover(g)
        rep = verify_cover(g, nc)
        good = rep.ok and nc.overlap <= nc.k_star
        results.append(("cover", good, "; ".join(rep.violations[:3]) or f"overlap {nc.overlap} > {nc.k_star}"))

    if args.rep:
        try:
            sr_file = read_sparse_rep(args.rep)
        except OSError as exc:
            raise CliError(f"cannot read {args.rep}: {exc.strerror or exc}") from None
        good = reconstruct(sr_file).same_as(g)
        results.append(("rep-file", good, "" if good else f"{args.rep} does not encode the input"))

    failed = 0
    for name, good, detail in results:
        if good:
            print(f"PASS {name}")
        else:
            failed += 1
            print(f"FAIL {name}: {detail}")
    return FAILED if failed else OK


def _bipartite_view(g: Graph):
    return g.to_bipartite() if g.sides is not None else bipartize(g)[0]


def cmd_oracle(args) -> int:
    g = _load(args.input)
    if args.kind == "ladder-index":
        print(ladder_index(_bipartite_view(g), args.cap))
    elif args.kind == "near-twin":
        try:
            u, v, k = min_near_twin_pair_bruteforce(_bipartite_view(g), args.side)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        bg_labels = _bipartite_view(g).labels
        print(f"{bg_labels[u]} {bg_labels[v]} {k}" if args.pair else k)
    elif args.kind == "degeneracy":
        print(degeneracy(g)[0])
    elif args.kind == "biclique":
        print("true" if contains_biclique(g, args.h) else "false")
    return OK


def cmd_bench(args) -> int:
    _threads(args)
    sizes, times = [], []
    for w in args.sizes:
        g = generate("grid", w, w)
        best = float("inf")
        for _ in range(args.repeat):
            start = time.perf_counter()
            build_sparse_rep(g, bipartite=args.bipartite)
            best = min(best, time.perf_counter() - start)
        sizes.append(g.n)
        times.append(best)
        print(f"grid {w}x{w} n {g.n} seconds {best:.4f}")
    if len(sizes) >= 2:
        slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
        print(f"slope {slope:.3f}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsebranch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def threads(sp):
        sp.add_argument("--threads", type=int, default=None, help="worker cap (env SPARSEBRANCH_THREADS)")

    sp = sub.add_parser("generate", help="write a graph family as an edge list")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("sparsify", help="edge list -> sparse representation")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    sp.add_argument("--bipartite", action="store_true", help="use the declared sides instead of bipartizing")
    sp.add_argument("--stats", action="store_true", help="append statistics as comments")
    sp.add_argument("--trace", action="store_true", help="dump per-round partition state to stderr")
    threads(sp)
    sp.set_defaults(func=cmd_sparsify)

    sp = sub.add_parser("reconstruct", help="sparse representation -> edge list")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("verify", help="run every check on one input graph")
    sp.add_argument("input")
    sp.add_argument("--bipartite", action="store_true")
    sp.add_argument("--cover", action="store_true", help="also build and verify a neighbourhood cover")
    sp.add_argument("--rep", help="also check that this representation file encodes the input")
    sp.add_argument("--cap", type=int, default=6, help="ladder-index search cap")
    sp.add_argument("--ladder-limit", type=int, default=200, help="skip the height check above this many host vertices")
    threads(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cover", help="compact neighbourhood cover")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("stats", help="structure of the sparse representation")
    sp.add_argument("input")
    sp.add_argument("--bipartite", action="store_true")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("oracle", help="reference computations")
    sp.add_argument("kind", choices=["ladder-index", "near-twin", "degeneracy", "biclique"])
    sp.add_argument("input")
    sp.add_argument("--cap", type=int, default=6)
    sp.add_argument("--side", choices=["L", "R"], default="L")
    sp.add_argument("--pair", action="store_true", help="near-twin: also print the pair")
    sp.add_argument("--h", type=int, default=2)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="time the build on square grids")
    sp.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 24, 32])
    sp.add_argument("--repeat", type=int, default=1)
    sp.add_argument("--bipartite", action="store_true")
    threads(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ParseError) as exc:
        print(f"sparsebranch: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
