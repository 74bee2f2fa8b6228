"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 usage or input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .constructions import (Construction, cycle_power_coloring, cycle_product_coloring, hypercube_class_coloring,
                            hypercube_det_coloring, kn_power_coloring, path_power_coloring,
                            path_product_coloring, small_hypercube_coloring)
from .graph import EDGE, MODES, TOTAL, VERTEX, GraphError, TwoColoring, emit_dot, emit_graph6, parse_edge_list, parse_graph6
from .kn import kn_table, procedure1, quintas_params, rho_prime_kn, table_csv, table_runs
from .product import ProductGraph, factorize, format_vertex, parse_elements, parse_product_spec, product_automorphism_group
from .reduced import aul_check, reduced_factor_coloring
from .search import default_workers, exact_cost
from .symmetry import (ColoredGraph, SearchBudgetExceeded, automorphism_group, canonical_certificate,
                       is_distinguishing, min_determining_set)
from .symmetry.group import GroupTooLarge
from .trees import MAX_TREE_ORDER, TreeCatalog, enumerate_asymmetric_trees, enumerate_trees, load_catalog

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_CATALOG_DEPTH = 13


class UsageError(Exception):
    pass


# --- shared input handling ---------------------------------------------------------


def _add_graph_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--graph", help='product spec such as "Q3", "P5^3", "C5*C6", "K6^2"')
    src.add_argument("--g6", help="graph6 string")
    src.add_argument("--edges-file", help='edge-list file: order on the first line, then "u v" lines')


def _add_coloring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=MODES, default=EDGE)
    p.add_argument("--red", default="", help='red literals, e.g. "000-100,100-110" (edges) or "000,011" (vertices)')


def _load_graph(args) -> tuple[str, ProductGraph]:
    if args.graph:
        return args.graph, parse_product_spec(args.graph)
    if args.g6:
        g = parse_graph6(args.g6)
        return args.g6, ProductGraph(g, (g,), ())
    path = Path(args.edges_file)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    g = parse_edge_list(path.read_text())
    return str(path), ProductGraph(g, (g,), ())


def _load_coloring(pg: ProductGraph, args) -> TwoColoring:
    verts, edges = parse_elements(pg, args.red)
    if args.mode == VERTEX and edges:
        raise UsageError("vertex mode accepts vertex literals only")
    if args.mode == EDGE and verts:
        raise UsageError("edge mode accepts edge literals only")
    return TwoColoring(args.mode, frozenset(verts), frozenset(edges))


def _catalog_for(n_max: int, depth: Optional[int]) -> TreeCatalog:
    """The requested catalog depth, or the shallowest bundled depth covering ``n_max``."""
    if depth is not None:
        return load_catalog(depth)
    cat = load_catalog(DEFAULT_CATALOG_DEPTH)
    d = DEFAULT_CATALOG_DEPTH
    while cat.partial_sums()[-1] <= n_max and d < MAX_TREE_ORDER:
        d += 1
        cat = load_catalog(d)
    return cat


def _emit(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _short(cert: bytes) -> str:
    return hashlib.sha256(cert).hexdigest()[:16]


# --- subcommands ---------------------------------------------------------------------


def cmd_aut(args, out) -> int:
    spec, pg = _load_graph(args)
    grp = automorphism_group(pg.graph, node_budget=args.node_budget)
    out.write(_emit({"graph": spec, "order": grp.order, "base": list(grp.base),
                     "generators": [list(p) for p in grp.generators],
                     "vertex_orbits": grp.vertex_orbits()}) + "\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    spec, pg = _load_graph(args)
    c = _load_coloring(pg, args)
    ok = is_distinguishing(pg.graph, c, node_budget=args.node_budget)
    out.write(_emit({"graph": spec, "mode": c.mode, "red_count": c.red_count, "distinguishing": ok}) + "\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_cert(args, out) -> int:
    spec, pg = _load_graph(args)
    c = _load_coloring(pg, args)
    cert = canonical_certificate(ColoredGraph.from_two_coloring(pg.graph, c))
    out.write(_emit({"graph": spec, "certificate": cert.hex(), "digest": _short(cert)}) + "\n")
    return EXIT_OK


def cmd_trees(args, out) -> int:
    trees = enumerate_asymmetric_trees(args.order) if args.asymmetric else enumerate_trees(args.order)
    out.write(_emit({"order": args.order, "asymmetric": args.asymmetric, "count": len(trees),
                     "graph6": [emit_graph6(t) for t in trees]}) + "\n")
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    out.write(load_catalog(args.max_order).to_json() + "\n")
    return EXIT_OK


def cmd_kn_cost(args, out) -> int:
    cat = _catalog_for(args.n, args.depth)
    res = {"n": args.n, "rho_prime": rho_prime_kn(args.n, cat)}
    if args.n >= 8:
        q = quintas_params(args.n, cat)
        res.update({"N": q.N, "w": q.w, "r": q.r})
    out.write(_emit(res) + "\n")
    return EXIT_OK


def cmd_kn_table(args, out) -> int:
    cat = _catalog_for(args.to, args.depth)
    rows = kn_table(args.from_, args.to, cat)
    out.write(table_runs(rows) if args.format == "runs" else table_csv(rows))
    return EXIT_OK


def cmd_procedure1(args, out) -> int:
    cat = _catalog_for(args.n, args.depth)
    cover = procedure1(args.n, cat)
    out.write(cover.to_dot() if args.format == "dot" else cover.to_json() + "\n")
    return EXIT_OK


def cmd_product(args, out) -> int:
    pg = parse_product_spec(args.graph)
    grp = product_automorphism_group(pg)
    out.write(_emit({"graph": args.graph, "order": pg.graph.order, "size": pg.graph.size,
                     "factors": list(pg.names), "aut_order": grp.order}) + "\n")
    return EXIT_OK


def cmd_factorize(args, out) -> int:
    spec, pg = _load_graph(args)
    fs = factorize(pg.graph)
    out.write(_emit({"graph": spec, "prime": len(fs) == 1,
                     "factors": [{"order": f.order, "size": f.size, "graph6": emit_graph6(f)} for f in fs]}) + "\n")
    return EXIT_OK


def cmd_reduced_factor(args, out) -> int:
    pg = parse_product_spec(args.graph)
    c = _load_coloring(pg, args)
    rf = reduced_factor_coloring(pg, c, args.factor)
    out.write(_emit({"graph": args.graph, "factor": args.factor,
                     "vertex_colors": [_short(x) for x in rf.vertex_color],
                     "edge_colors": {f"{u}-{v}": _short(x) for (u, v), x in zip(rf.factor.edges, rf.edge_color)}}) + "\n")
    return EXIT_OK


def cmd_aul(args, out) -> int:
    pg = parse_product_spec(args.graph)
    c = _load_coloring(pg, args)
    verdict = aul_check(pg, c)
    res = json.loads(verdict.to_json())
    if verdict.satisfied:
        out.write(_emit(res) + "\n")
        return EXIT_OK
    print("inconclusive: falling back to exact check", file=sys.stderr)
    res["exact_distinguishing"] = is_distinguishing(pg.graph, c)
    out.write(_emit(res) + "\n")
    return EXIT_OK if res["exact_distinguishing"] else EXIT_NEGATIVE


def _construct(args) -> Construction:
    name = args.name
    orders = [int(x) for x in args.orders.split(",")] if args.orders else []
    if name == "path-power":
        return path_power_coloring(args.n, args.k, args.mode)
    if name == "path-product":
        return path_product_coloring(orders, args.mode)
    if name == "cycle-power":
        return cycle_power_coloring(args.n, args.k, args.mode)
    if name == "cycle-product":
        return cycle_product_coloring(orders, args.mode)
    if name == "small-hypercube":
        return small_hypercube_coloring(args.k)
    if name == "hypercube-det":
        return hypercube_det_coloring(args.n)
    if name == "hypercube-class":
        return hypercube_class_coloring(args.n)
    return kn_power_coloring(args.n, args.k, _catalog_for(args.n, None))


def cmd_construct(args, out) -> int:
    res = _construct(args)
    if args.format == "dot":
        out.write(emit_dot(res.product.graph, res.coloring, labels=[format_vertex(res.product, v)
                                                                     for v in range(res.product.graph.order)]))
    else:
        out.write(res.to_json() + "\n")
    return EXIT_OK


def cmd_cost(args, out) -> int:
    spec, pg = _load_graph(args)
    if args.mode == TOTAL:
        raise UsageError("cost supports vertex or edge mode")
    group = product_automorphism_group(pg) if pg.k > 1 else None
    res = exact_cost(pg.graph, args.mode, args.max_size, args.budget, group=group, graph_spec=spec,
                     workers=args.workers, checkpoint=args.checkpoint)
    out.write(res.to_json() + "\n")
    if res.status == "budget":
        return EXIT_BUDGET
    return EXIT_OK if res.status == "found" else EXIT_NEGATIVE


def cmd_det_set(args, out) -> int:
    spec, pg = _load_graph(args)
    ds = min_determining_set(pg.graph, args.distance_floor, budget=args.budget)
    out.write(_emit({"graph": spec, "size": len(ds), "vertices": [format_vertex(pg, v) for v in ds.vertices],
                     "minimum": ds.minimum, "distance_floor": ds.distance_floor, "note": ds.note}) + "\n")
    return EXIT_OK


def cmd_render(args, out) -> int:
    spec, pg = _load_graph(args)
    c = _load_coloring(pg, args) if args.red else None
    labels = [format_vertex(pg, v) for v in range(pg.graph.order)] if pg.k > 1 else None
    out.write(emit_dot(pg.graph, c, labels=labels))
    return EXIT_OK


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symbreak", description="Graph symmetry-breaking toolkit.")
    p.add_argument("--version", action="version", version=f"symbreak {__version__}")
    p.add_argument("--workers", type=int, default=default_workers(),
                   help="worker processes for sharded searches (default: $SYMBREAK_WORKERS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("aut", help="automorphism group")
    _add_graph_args(s)
    s.add_argument("--node-budget", type=int, default=None)
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("check", help="exact distinguishing check")
    _add_graph_args(s)
    _add_coloring_args(s)
    s.add_argument("--node-budget", type=int, default=None)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cert", help="canonical certificate of a (colored) graph")
    _add_graph_args(s)
    _add_coloring_args(s)
    s.set_defaults(func=cmd_cert)

    s = sub.add_parser("trees", help="free trees of one order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--asymmetric", action="store_true")
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("catalog", help="catalog of asymmetric trees as JSON")
    s.add_argument("--max-order", type=int, default=12)
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("kn-cost", help="edge-distinguishing cost of K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--depth", type=int, default=None, help="catalog depth (default: smallest sufficient)")
    s.set_defaults(func=cmd_kn_cost)

    s = sub.add_parser("kn-table", help="table of the edge-distinguishing cost of K_n")
    s.add_argument("--from", dest="from_", type=int, default=6)
    s.add_argument("--to", type=int, default=630)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--format", choices=("csv", "runs"), default="csv")
    s.set_defaults(func=cmd_kn_table)

    s = sub.add_parser("procedure1", help="greedy asymmetric red forest in K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_procedure1)

    s = sub.add_parser("product", help="product graph summary and automorphism group order")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("factorize", help="prime factorization")
    _add_graph_args(s)
    s.set_defaults(func=cmd_factorize)

    s = sub.add_parser("reduced-factor", help="reduced-factor coloring of one factor")
    s.add_argument("--graph", required=True)
    _add_coloring_args(s)
    s.add_argument("--factor", type=int, required=True)
    s.set_defaults(func=cmd_reduced_factor)

    s = sub.add_parser("aul", help="reduced-factor sufficient condition, with exact fallback")
    s.add_argument("--graph", required=True)
    _add_coloring_args(s)
    s.set_defaults(func=cmd_aul)

    s = sub.add_parser("construct", help="explicit distinguishing colorings")
    s.add_argument("name", choices=("path-power", "path-product", "cycle-power", "cycle-product",
                                     "small-hypercube", "hypercube-det", "hypercube-class", "kn-power"))
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--orders", help="comma-separated factor orders")
    s.add_argument("--mode", choices=(VERTEX, EDGE), default=EDGE)
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("cost", help="exact cost of (edge-)distinguishing")
    _add_graph_args(s)
    s.add_argument("--mode", choices=(VERTEX, EDGE), default=EDGE)
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--budget", type=int, default=None, help="canonicity tests per shard")
    s.add_argument("--checkpoint", default=None)
    s.set_defaults(func=cmd_cost)

    s = sub.add_parser("det-set", help="minimum determining set")
    _add_graph_args(s)
    s.add_argument("--distance-floor", type=int, default=None)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_det_set)

    s = sub.add_parser("render", help="DOT rendering")
    _add_graph_args(s)
    _add_coloring_args(s)
    s.set_defaults(func=cmd_render)
    return p


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (SearchBudgetExceeded, GroupTooLarge) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
