"""Command-line front end.

Subcommands: generate fixture graphs (and decompositions), verify
certificates, run the partition pipeline, sweep the flexibility dial,
group a path-partition for a graph power, and cut a weighted tree.

Exit codes: 0 success, 1 semantic failure (invalid certificate, bound
violation), 2 usage or parse error.  Identical inputs and seed produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import graphs, lemmas, oracles, partitions, treedecomp
from .errors import (
    BoundExceededError,
    InvalidCertificateError,
    InvalidDecompositionError,
    InvalidPartitionError,
    TooLargeError,
)

PASS, FAIL, USAGE = 0, 1, 2


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_d(value):
    try:
        return Fraction(value)
    except ValueError:
        return float(value)


def _load_graph(path):
    return graphs.read_edge_list(_read(path))


def _load_decomp(path):
    return treedecomp.TreeDecomposition.from_json(_read(path))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args):
    fam = args.family
    seed = args.seed
    td = None
    if fam == "path":
        g = graphs.make_path(args.n)
    elif fam == "fan":
        g = graphs.make_fan(args.n)
    elif fam == "star":
        g = graphs.make_star(args.n)
    elif fam == "complete":
        g = graphs.make_complete(args.n)
    elif fam == "grid":
        g = graphs.make_grid(args.rows, args.cols)
        td = treedecomp.heuristic_treedecomp(g)
    elif fam == "ktree":
        g, parent, bags = graphs.make_ktree(args.n, args.k, seed=seed)
        td = treedecomp.TreeDecomposition(tuple(parent), tuple(bags))
    else:
        raise AssertionError(fam)
    _emit(graphs.write_edge_list(g), args.out)
    if td is not None and args.td_out:
        _emit(td.to_json() + "\n", args.td_out)
    return PASS


def cmd_verify(args):
    g = _load_graph(args.graph)
    verdict = {"kind": args.kind, "pass": False, "violation": None}
    code = FAIL
    if args.kind == "fanpartition":
        fp = partitions.FanPartition.from_json(_read(args.cert))
        try:
            report = partitions.check_fan_partition(
                g,
                fp,
                _parse_d(args.k) if args.k is not None else None,
                _parse_d(args.w) if args.w is not None else None,
            )
            verdict.update(
                {
                    "pass": True,
                    "central_size": report.central_size,
                    "path_width": report.path_width,
                    "overall_width": report.overall_width,
                }
            )
            code = PASS
        except (InvalidPartitionError, BoundExceededError) as e:
            verdict["violation"] = str(e)
    elif args.kind == "treedecomp":
        td = _load_decomp(args.cert)
        ok, why = treedecomp.validate(g, td)
        verdict["pass"] = ok
        verdict["violation"] = why
        if ok:
            verdict["width"] = td.width()
            verdict["adhesion"] = treedecomp.adhesion(td)
            code = PASS
    else:
        raise AssertionError(args.kind)
    if args.format == "json":
        _emit(json.dumps(verdict, sort_keys=True) + "\n", args.out)
    else:
        line = "PASS" if verdict["pass"] else f"FAIL: {verdict['violation']}"
        _emit(line + "\n", args.out)
    return code


def _make_oracle(args, td):
    name = args.oracle
    if name == "exact":
        return oracles.ExactOracle()
    if name == "separator":
        cap = max(1, td.width()) if td is not None else 1
        return oracles.SeparatorOracle(width_cap=cap)
    raise AssertionError(name)


def _get_decomp(args, g):
    if args.decomp:
        td = _load_decomp(args.decomp)
        ok, why = treedecomp.validate(g, td)
        if not ok:
            raise InvalidDecompositionError(why)
        return td
    sys.stderr.write(
        "warning: no decomposition supplied; deriving one by min-fill "
        "(bounds then depend on the heuristic width)\n"
    )
    return treedecomp.heuristic_treedecomp(g)


def cmd_partition(args):
    g = _load_graph(args.graph)
    d = _parse_d(args.d)
    if args.oracle == "certified":
        if not args.cert:
            raise ValueError("--oracle certified requires --cert")
        pe = _load_embedding(args.cert)
        res = oracles.certified_oracle(pe, d)
        fp = res.fan_partition
        report = partitions.check_fan_partition(g, fp)
    else:
        td = _get_decomp(args, g)
        oracle = _make_oracle(args, td)
        fp = lemmas.minor_free_pipeline(g, td, oracle, k=args.k, a=args.a, d=d)
        report = partitions.check_fan_partition(g, fp)
    _emit(fp.to_json() + "\n", args.out)
    sys.stderr.write(
        f"central_size={report.central_size} path_width={report.path_width} "
        f"overall_width={report.overall_width}\n"
    )
    return PASS


def cmd_sweep(args):
    g = _load_graph(args.graph)
    td = _get_decomp(args, g)
    oracle = _make_oracle(args, td)
    d_values = None
    if args.d_values:
        d_values = [_parse_d(v) for v in args.d_values.split(",")]
    rows = lemmas.sweep_flexibility(g, td, oracle, k=args.k, a=args.a, d_values=d_values)
    _emit(lemmas.sweep_to_csv(rows), args.out)
    return PASS if all(r.passed for r in rows) else FAIL


def cmd_power(args):
    g = _load_graph(args.graph)
    fp = partitions.FanPartition.from_json(_read(args.cert))
    if fp.central:
        raise InvalidPartitionError("power expects a pure path-partition (empty central part)")
    d = int(args.d)
    grouped = lemmas.power_path_partition(g, list(fp.path_parts), d)
    out = partitions.FanPartition(g.n, frozenset(), tuple(grouped))
    _emit(out.to_json() + "\n", args.out)
    return PASS


def cmd_treecut(args):
    if args.decomp:
        td = _load_decomp(args.decomp)
        weights = [len(td.bags[t] - td.adhesion_set(t)) for t in range(td.size)]
        wt = treedecomp.WeightedTree(td.parent, tuple(weights))
    else:
        g = _load_graph(args.graph)
        # breadth-first parents from vertex 0; the graph must be a tree
        if g.m != g.n - 1:
            raise InvalidDecompositionError("treecut --graph expects a tree")
        parent = [-2] * g.n
        parent[0] = -1
        queue = [0]
        for u in queue:
            for v in g.adj[u]:
                if parent[v] == -2:
                    parent[v] = u
                    queue.append(v)
        if any(p == -2 for p in parent):
            raise InvalidDecompositionError("treecut --graph expects a connected tree")
        wt = treedecomp.WeightedTree(tuple(parent), (1,) * g.n)
    z = lemmas.tree_deletion_set(wt, args.q)
    comp = {}
    for t in range(wt.size):
        if t in z:
            continue
        cur = t
        while wt.parent[cur] != -1 and wt.parent[cur] not in z:
            cur = wt.parent[cur]
        comp.setdefault(cur, []).append(t)
    payload = {
        "z": sorted(z),
        "components": [
            {"nodes": sorted(nodes), "weight": str(sum(wt.weight[t] for t in nodes))}
            for _root, nodes in sorted(comp.items())
        ],
    }
    _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return PASS


def _load_embedding(path):
    data = json.loads(_read(path))
    try:
        host = graphs.Graph(int(data["host_n"]), [tuple(e) for e in data["host_edges"]])
        host_td = treedecomp.TreeDecomposition(
            tuple(data["host_td"]["parent"]),
            tuple(frozenset(b) for b in data["host_td"]["bags"]),
        )
        return lemmas.ProductEmbedding(
            host, host_td, int(data["path_len"]), tuple(tuple(c) for c in data["coords"])
        )
    except KeyError as e:
        raise ValueError(f"embedding.v1: missing field {e}") from None


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="fanpart",
        description="fan-partition toolkit: generate, verify, partition, sweep",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a fixture graph (and decomposition)")
    p.add_argument("--family", required=True,
                   choices=["path", "fan", "star", "grid", "ktree", "complete"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--td-out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--kind", required=True, choices=["fanpartition", "treedecomp"])
    p.add_argument("--k", default=None, help="central-size bound (rational)")
    p.add_argument("--w", default=None, help="path-width bound (rational)")
    p.add_argument("--format", default="human", choices=["human", "json"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="fan-partition a graph at flexibility d")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomp", default=None)
    p.add_argument("--cert", default=None, help="product embedding (certified oracle)")
    p.add_argument("--oracle", default="separator", choices=["exact", "separator", "certified"])
    p.add_argument("--d", default="1")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("sweep", help="sweep the flexibility dial, emit CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomp", default=None)
    p.add_argument("--oracle", default="separator", choices=["exact", "separator"])
    p.add_argument("--d-values", default=None, help="comma-separated d values")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("power", help="group a path-partition for a graph power")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("treecut", help="weighted tree deletion set")
    p.add_argument("--graph", default=None, help="tree edge list (unit weights)")
    p.add_argument("--decomp", default=None, help="decomposition (bag-introduction weights)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_treecut)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (BoundExceededError, InvalidPartitionError, InvalidDecompositionError,
            InvalidCertificateError) as e:
        sys.stderr.write(f"error: {e}\n")
        return FAIL
    except (OSError, ValueError, json.JSONDecodeError, TooLargeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
