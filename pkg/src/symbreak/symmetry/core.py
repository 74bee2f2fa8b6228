"""Colored graphs, automorphism groups, certificates and symmetry-breaking checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np

from ..graph import EDGE, VERTEX, Graph, GraphError, TwoColoring
from .engine import Engine, SearchBudgetExceeded
from .group import DEFAULT_ENUMERATION_CAP, AutGroup, Perm, edge_action, orbits_of_action
from .subsets import pointwise_stabilizer_size, subset_representatives

BLANK = 0
RED = 1

CanonicalCert = bytes


@dataclass(frozen=True)
class ColoredGraph:
    """A graph with a total vertex coloring and a total edge coloring.

    ``edge_color[i]`` colors ``graph.edges[i]``; :data:`BLANK` marks
    uncolored elements.
    """

    graph: Graph
    vertex_color: tuple[Hashable, ...]
    edge_color: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        if len(self.vertex_color) != self.graph.order or len(self.edge_color) != self.graph.size:
            raise GraphError("coloring maps must be total over vertices and edges")

    @classmethod
    def plain(cls, g: Graph) -> "ColoredGraph":
        return cls(g, (BLANK,) * g.order, (BLANK,) * g.size)

    @classmethod
    def from_maps(cls, g: Graph, vertex_color: Optional[dict[int, Hashable]] = None,
                  edge_color: Optional[dict[tuple[int, int], Hashable]] = None) -> "ColoredGraph":
        vertex_color = vertex_color or {}
        edge_color = edge_color or {}
        return cls(g, tuple(vertex_color.get(v, BLANK) for v in range(g.order)),
                   tuple(edge_color.get(e, BLANK) for e in g.edges))

    @classmethod
    def from_two_coloring(cls, g: Graph, c: TwoColoring) -> "ColoredGraph":
        c.check_hosted(g)
        vc = tuple(RED if (c.mode != EDGE and v in c.red_vertices) else BLANK for v in range(g.order))
        ec = tuple(RED if (c.mode != VERTEX and e in c.red_edges) else BLANK for e in g.edges)
        return cls(g, vc, ec)

    def engine(self, node_budget: Optional[int] = None) -> Engine:
        return Engine(self.graph.order, self.graph.edges, self.vertex_color, self.edge_color, node_budget)


def _as_colored(x: Graph | ColoredGraph) -> ColoredGraph:
    return x if isinstance(x, ColoredGraph) else ColoredGraph.plain(x)


def automorphism_group(cg: Graph | ColoredGraph, node_budget: Optional[int] = None) -> AutGroup:
    """Full group of adjacency- and color-preserving permutations.

    Raises :class:`SearchBudgetExceeded` when the node budget runs out.
    """
    cg = _as_colored(cg)
    eng = cg.engine(node_budget)
    base, gens, orbit_sizes = eng.automorphism_group()
    order = 1
    for s in orbit_sizes:
        order *= s
    return AutGroup(cg.graph.order, tuple(g for g, _ in gens), order, tuple(base), tuple(gens))


def has_nontrivial_automorphism(cg: Graph | ColoredGraph, node_budget: Optional[int] = None) -> Optional[Perm]:
    """Some non-identity color-preserving automorphism, or ``None``."""
    cg = _as_colored(cg)
    _, gens, _ = cg.engine(node_budget).automorphism_group(stop_at_first=True)
    return gens[0][0] if gens else None


def _canonical(cg: ColoredGraph) -> tuple[list[int], bytes]:
    eng = cg.engine()
    lab, key, _ = eng.canonical_labeling()
    vcols = tuple(eng.vrank[v] for v in lab)
    cert = repr((cg.graph.order, tuple(eng.vcolor_values), tuple(eng.ecolor_values), vcols, key)).encode()
    return lab, cert


def canonical_certificate(cg: Graph | ColoredGraph) -> CanonicalCert:
    """Byte string equal for two colored graphs iff they are color-isomorphic."""
    return _canonical(_as_colored(cg))[1]


def canonical_form(cg: Graph | ColoredGraph) -> tuple[list[int], CanonicalCert]:
    """Canonical ordering (position -> vertex) together with the certificate."""
    return _canonical(_as_colored(cg))


def are_color_isomorphic(a: Graph | ColoredGraph, b: Graph | ColoredGraph) -> Optional[Perm]:
    """A color-preserving isomorphism ``a -> b`` (as images of a's vertices) or ``None``."""
    a, b = _as_colored(a), _as_colored(b)
    if a.graph.order != b.graph.order or a.graph.size != b.graph.size:
        return None
    lab_a, cert_a = _canonical(a)
    lab_b, cert_b = _canonical(b)
    if cert_a != cert_b:
        return None
    phi = [0] * a.graph.order
    for x, y in zip(lab_a, lab_b):
        phi[x] = y
    return tuple(phi)


def is_distinguishing(g: Graph, c: TwoColoring, node_budget: Optional[int] = None) -> bool:
    """True iff only the identity preserves the coloring (per its mode)."""
    return has_nontrivial_automorphism(ColoredGraph.from_two_coloring(g, c), node_budget) is None


def _individualized(g: Graph, s: Iterable[int]) -> ColoredGraph:
    s = sorted(set(s))
    for v in s:
        if not 0 <= v < g.order:
            raise GraphError(f"vertex {v} is not in the graph")
    colors = {v: i + 1 for i, v in enumerate(s)}
    return ColoredGraph.from_maps(g, colors)


def is_determining_set(g: Graph, s: Iterable[int], node_budget: Optional[int] = None) -> bool:
    """True iff the pointwise stabilizer of ``s`` is trivial."""
    return has_nontrivial_automorphism(_individualized(g, s), node_budget) is None


def pointwise_stabilizer(g: Graph, s: Iterable[int], node_budget: Optional[int] = None) -> AutGroup:
    return automorphism_group(_individualized(g, s), node_budget)


@dataclass(frozen=True)
class DeterminingSet:
    vertices: tuple[int, ...]
    minimum: bool
    distance_floor: Optional[int] = None
    note: str = ""

    def __len__(self) -> int:
        return len(self.vertices)


def _distance_table(g: Graph) -> list[list[int]]:
    return [g.distances_from(v) for v in range(g.order)]


def min_determining_set(g: Graph, distance_floor: Optional[int] = None, *,
                        enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
                        budget: Optional[int] = None) -> DeterminingSet:
    """Minimum determining set, optionally among sets with pairwise distance >= floor.

    Exhaustive (orbit representatives by size) when the automorphism group can
    be enumerated; otherwise a greedy stabilizer-shrinking construction that is
    only an upper bound (``minimum=False``).
    """
    if not g.is_connected():
        raise GraphError("min_determining_set needs a connected graph")
    dist = _distance_table(g) if distance_floor else None

    def accept(s: tuple[int, ...]) -> bool:
        if dist is None:
            return True
        x = s[-1]
        return all(dist[x][y] >= distance_floor for y in s[:-1])

    group = automorphism_group(g)
    if group.order == 1:
        return DeterminingSet((), True, distance_floor)
    if group.order <= enumeration_cap:
        elems = group.elements(enumeration_cap)
        m = 0
        try:
            for m in range(1, g.order + 1):
                for rep in subset_representatives(elems, m, accept=accept, budget=budget):
                    if pointwise_stabilizer_size(elems, rep) == 1:
                        return DeterminingSet(rep, True, distance_floor)
        except SearchBudgetExceeded:
            best = _greedy_determining_set(g, accept, distance_floor)
            return DeterminingSet(best.vertices, False, distance_floor,
                                  note=f"search budget exhausted at size {m}; greedy upper bound")
        raise GraphError("no determining set satisfies the distance floor")
    return _greedy_determining_set(g, accept, distance_floor)


def _greedy_determining_set(g: Graph, accept, distance_floor) -> DeterminingSet:
    chosen: tuple[int, ...] = ()
    stab = automorphism_group(g)
    while stab.order > 1:
        best = None
        for orbit in orbits_of_action(g.order, stab.generators):
            v = orbit[0]
            if v in chosen:
                continue
            cand = tuple(sorted(chosen + (v,)))
            if not accept(tuple(chosen) + (v,)):
                continue
            order = pointwise_stabilizer(g, cand).order
            if best is None or order < best[0]:
                best = (order, v)
        if best is None:
            raise GraphError("greedy determining-set search is stuck under the distance floor")
        chosen = chosen + (best[1],)
        stab = pointwise_stabilizer(g, chosen)
    return DeterminingSet(tuple(sorted(chosen)), False, distance_floor,
                          note="greedy upper bound; group too large to enumerate")


def orbits(group: AutGroup, kind: str, graph: Optional[Graph] = None, m: Optional[int] = None):
    """Orbit partition of vertices or edges, or lex-min representatives of m-subsets of vertices."""
    if kind == "vertices":
        return orbits_of_action(group.degree, group.generators)
    if kind == "edges":
        if graph is None:
            raise GraphError("edge orbits need the host graph")
        acts = [edge_action(p, graph.edge_index, graph.edges) for p in group.generators]
        return orbits_of_action(graph.size, acts)
    if kind == "subsets":
        if m is None:
            raise GraphError("subset orbits need a size m")
        return list(subset_representatives(group.elements(), m))
    raise GraphError(f"unknown orbit kind {kind!r}")


def edge_elements(group_elements: np.ndarray, g: Graph) -> np.ndarray:
    """Induced action of enumerated vertex permutations on edge indices."""
    n = g.order
    idx = np.full((n, n), -1, dtype=np.int32)
    for i, (u, v) in enumerate(g.edges):
        idx[u, v] = idx[v, u] = i
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    if not len(eu):
        return np.zeros((len(group_elements), 0), dtype=np.int32)
    out = idx[group_elements[:, eu], group_elements[:, ev]]
    return out.astype(np.int16 if g.size < 2**15 else np.int32)


def preserving_count(action: np.ndarray, red: Sequence[int]) -> int:
    """Number of group elements mapping the red set onto itself (identity included)."""
    if not len(red):
        return len(action)
    mask = np.zeros(action.shape[1], dtype=bool)
    mask[list(red)] = True
    return int(mask[action[:, list(red)]].all(axis=1).sum())


def is_distinguishing_by_enumeration(g: Graph, c: TwoColoring, elements: np.ndarray) -> bool:
    """Independent check: no non-identity element of the uncolored group preserves c."""
    c.check_hosted(g)
    keep = np.ones(len(elements), dtype=bool)
    if c.mode != EDGE and c.red_vertices:
        keep &= _preserves(elements, sorted(c.red_vertices), g.order)
    if c.mode != VERTEX and c.red_edges:
        eact = edge_elements(elements, g)
        keep &= _preserves(eact, sorted(g.edge_index[e] for e in c.red_edges), g.size)
    return int(keep.sum()) == 1


def _preserves(action: np.ndarray, red: list[int], npoints: int) -> np.ndarray:
    mask = np.zeros(npoints, dtype=bool)
    mask[red] = True
    return mask[action[:, red]].all(axis=1)


def subset_count_check(action: np.ndarray, m: int) -> tuple[int, int]:
    """(sum of orbit sizes over representatives, C(N, m)) for verification."""
    order = len(action)
    total = 0
    for rep in subset_representatives(action, m):
        mask = np.zeros(action.shape[1], dtype=bool)
        mask[list(rep)] = True
        stab = int(mask[action[:, list(rep)]].all(axis=1).sum())
        total += order // stab
    return total, comb(action.shape[1], m)


__all__ = [
    "BLANK", "RED", "CanonicalCert", "ColoredGraph", "DeterminingSet", "SearchBudgetExceeded",
    "are_color_isomorphic", "automorphism_group", "canonical_certificate", "canonical_form",
    "edge_elements", "has_nontrivial_automorphism", "is_determining_set", "is_distinguishing",
    "is_distinguishing_by_enumeration", "min_determining_set", "orbits", "pointwise_stabilizer",
    "preserving_count", "subset_count_check",
]
