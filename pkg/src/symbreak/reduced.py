"""Reduced-factor colorings and the sufficient product-distinguishing test.

For factor ``i`` of a product, vertex ``j`` of G_i is colored by the class of
the colored Q_i-layer with i-th coordinate ``j``; an edge ``uv`` of G_i is
colored by the class of the Q_i-shaped graph whose vertex ``x`` carries the
color of product edge ``(u, x)(v, x)``.  Classes are canonical certificates,
so colors are comparable across factors.  If every reduced factor is
distinguishing and no two are color-isomorphic, the coloring of the product
is distinguishing.  The converse does not hold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import EDGE, VERTEX, Graph, GraphError, TwoColoring
from .product import ProductGraph, quotient, quotient_layer
from .symmetry import BLANK, RED, ColoredGraph, are_color_isomorphic, canonical_certificate, has_nontrivial_automorphism


def _red_sets(pg: ProductGraph, f: TwoColoring) -> tuple[set[int], set[tuple[int, int]]]:
    f.check_hosted(pg.graph)
    verts = set(f.red_vertices) if f.mode != EDGE else set()
    edges = set(f.red_edges) if f.mode != VERTEX else set()
    return verts, edges


def _check_index(pg: ProductGraph, i: int) -> None:
    if pg.k < 2:
        raise GraphError("reduced factors need a product of at least two factors")
    if not 0 <= i < pg.k:
        raise GraphError(f"factor index {i} out of range")


def _quotient_graph(pg: ProductGraph, i: int) -> Graph:
    return quotient(pg, i).graph


def _vertex_quotient(pg: ProductGraph, q: Graph, verts, edges, i: int, j: int) -> ColoredGraph:
    layer = quotient_layer(pg, i, j)
    vc = tuple(RED if layer[x] in verts else BLANK for x in range(q.order))
    ec = []
    for x, y in q.edges:
        a, b = layer[x], layer[y]
        ec.append(RED if (min(a, b), max(a, b)) in edges else BLANK)
    return ColoredGraph(q, vc, tuple(ec))


def _edge_quotient(pg: ProductGraph, q: Graph, edges, i: int, e: tuple[int, int]) -> ColoredGraph:
    lu, lv = quotient_layer(pg, i, e[0]), quotient_layer(pg, i, e[1])
    vc = []
    for a, b in zip(lu, lv):
        vc.append(RED if (min(a, b), max(a, b)) in edges else BLANK)
    return ColoredGraph(q, tuple(vc), (BLANK,) * q.size)


def vertex_quotient_color(pg: ProductGraph, f: TwoColoring, i: int, j: int) -> ColoredGraph:
    """The Q_i-layer with i-th coordinate ``j`` carrying f's colors, labeled by Q_i coordinates."""
    _check_index(pg, i)
    if not 0 <= j < pg.radices[i]:
        raise GraphError(f"factor vertex {j} out of range")
    verts, edges = _red_sets(pg, f)
    return _vertex_quotient(pg, _quotient_graph(pg, i), verts, edges, i, j)


def edge_quotient_color(pg: ProductGraph, f: TwoColoring, i: int, e: tuple[int, int]) -> ColoredGraph:
    """Q_i with vertex ``x`` colored by f on the product edge ``(u, x)(v, x)``."""
    _check_index(pg, i)
    u, v = min(e), max(e)
    if not pg.factors[i].has_edge(u, v):
        raise GraphError(f"{e} is not an edge of factor {i}")
    _, edges = _red_sets(pg, f)
    return _edge_quotient(pg, _quotient_graph(pg, i), edges, i, (u, v))


@dataclass(frozen=True)
class ReducedFactor:
    factor_index: int
    factor: Graph
    vertex_color: tuple[bytes, ...]
    edge_color: tuple[bytes, ...]

    def colored(self) -> ColoredGraph:
        return ColoredGraph(self.factor, self.vertex_color, self.edge_color)


def reduced_factor_coloring(pg: ProductGraph, f: TwoColoring, i: int) -> ReducedFactor:
    _check_index(pg, i)
    verts, edges = _red_sets(pg, f)
    q = _quotient_graph(pg, i)
    fi = pg.factors[i]
    vc = tuple(canonical_certificate(_vertex_quotient(pg, q, verts, edges, i, j)) for j in range(fi.order))
    ec = tuple(canonical_certificate(_edge_quotient(pg, q, edges, i, e)) for e in fi.edges)
    return ReducedFactor(i, fi, vc, ec)


@dataclass(frozen=True)
class AulVerdict:
    satisfied: bool
    per_factor_distinguishing: tuple[bool, ...]
    equivalent_pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> str:
        return json.dumps({
            "satisfied": self.satisfied,
            "factors": [{"index": i, "distinguishing": d} for i, d in enumerate(self.per_factor_distinguishing)],
            "equivalent_pairs": [list(p) for p in self.equivalent_pairs],
        })


def aul_check(pg: ProductGraph, f: TwoColoring) -> AulVerdict:
    """One-sided test: ``satisfied`` proves f distinguishing; ``False`` is inconclusive."""
    if pg.k < 2:
        raise GraphError("the reduced-factor test needs a product of at least two prime factors")
    reduced = [reduced_factor_coloring(pg, f, i).colored() for i in range(pg.k)]
    dist = tuple(has_nontrivial_automorphism(r) is None for r in reduced)
    pairs = []
    for a in range(pg.k):
        for b in range(a + 1, pg.k):
            if are_color_isomorphic(reduced[a], reduced[b]) is not None:
                pairs.append((a, b))
    return AulVerdict(all(dist) and not pairs, dist, tuple(pairs))
