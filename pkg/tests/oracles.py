"""Independent reference implementations used only by the tests.

Nothing here calls the package's symmetry engine: automorphisms come from
networkx's VF2 matcher or from explicit permutation enumeration, trees from
Pruefer sequences with AHU canonical forms.
"""

from __future__ import annotations

import heapq
from itertools import combinations, combinations_with_replacement, permutations, product

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


def to_nx(g, vertex_color=None, edge_color=None) -> nx.Graph:
    h = nx.Graph()
    for v in range(g.order):
        h.add_node(v, c=(vertex_color or {}).get(v, 0))
    for e in g.edges:
        h.add_edge(*e, c=(edge_color or {}).get(e, 0))
    return h


def _matcher(a: nx.Graph, b: nx.Graph) -> GraphMatcher:
    return GraphMatcher(a, b, node_match=lambda x, y: x["c"] == y["c"], edge_match=lambda x, y: x["c"] == y["c"])


def automorphisms(g, vertex_color=None, edge_color=None) -> list[tuple[int, ...]]:
    h = to_nx(g, vertex_color, edge_color)
    out = []
    for m in _matcher(h, h).isomorphisms_iter():
        out.append(tuple(m[v] for v in range(g.order)))
    return out


def aut_order(g, vertex_color=None, edge_color=None) -> int:
    return len(automorphisms(g, vertex_color, edge_color))


def isomorphic(a, b, ca=None, cb=None) -> bool:
    ca = ca or ({}, {})
    cb = cb or ({}, {})
    return _matcher(to_nx(a, *ca), to_nx(b, *cb)).is_isomorphic()


def coloring_maps(c):
    vc = {v: 1 for v in c.red_vertices} if c.mode != "edge" else {}
    ec = {e: 1 for e in c.red_edges} if c.mode != "vertex" else {}
    return vc, ec


def brute_is_distinguishing(g, c, auts=None) -> bool:
    auts = auts if auts is not None else automorphisms(g)
    vc, ec = coloring_maps(c)
    rv = set(vc)
    re = set(ec)
    count = 0
    for p in auts:
        if {p[v] for v in rv} != rv:
            continue
        if {tuple(sorted((p[u], p[v]))) for u, v in re} != re:
            continue
        count += 1
    return count == 1


def brute_cost(g, mode: str) -> int | None:
    """Smallest red-set size over all subsets (no symmetry reduction), up to half the elements."""
    from symbreak.graph import TwoColoring

    auts = automorphisms(g)
    items = list(range(g.order)) if mode == "vertex" else list(g.edges)
    for m in range(0, len(items) // 2 + 1):
        for s in combinations(items, m):
            c = TwoColoring.vertices(s) if mode == "vertex" else TwoColoring.edges(s)
            if brute_is_distinguishing(g, c, auts):
                return m
    return None


# --- trees -------------------------------------------------------------------------


def prufer_decode(seq, n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(adj, v, parent) -> str:
    return "(" + "".join(sorted(_ahu(adj, w, v) for w in adj[v] if w != parent)) + ")"


def _rooted_asymmetric(adj, v, parent) -> bool:
    kids = [w for w in adj[v] if w != parent]
    codes = [_ahu(adj, w, v) for w in kids]
    return len(set(codes)) == len(codes) and all(_rooted_asymmetric(adj, w, v) for w in kids)


def tree_code(n: int, edges) -> str:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    cs = _centers(adj)
    if len(cs) == 1:
        return _ahu(adj, cs[0], -1)
    a, b = cs
    return min(_ahu(adj, a, -1), _ahu(adj, b, -1))


def tree_is_asymmetric(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    cs = _centers(adj)
    if len(cs) == 1:
        return _rooted_asymmetric(adj, cs[0], -1)
    a, b = cs
    return (_ahu(adj, a, b) != _ahu(adj, b, a) and _rooted_asymmetric(adj, a, b)
            and _rooted_asymmetric(adj, b, a))


def prufer_tree_classes(n: int, full: bool = False) -> dict[str, list[tuple[int, int]]]:
    """One tree per AHU class.  ``full`` scans all n^(n-2) sequences; otherwise only
    non-decreasing sequences (every tree admits such a labeling)."""
    if n == 1:
        return {"()": []}
    if n == 2:
        return {tree_code(2, [(0, 1)]): [(0, 1)]}
    seqs = product(range(n), repeat=n - 2) if full else combinations_with_replacement(range(n), n - 2)
    out: dict[str, list[tuple[int, int]]] = {}
    for seq in seqs:
        edges = prufer_decode(seq, n)
        out.setdefault(tree_code(n, edges), edges)
    return out


def prufer_asymmetric_count(n: int, full: bool = False) -> int:
    return sum(1 for edges in prufer_tree_classes(n, full).values() if tree_is_asymmetric(n, edges))


# --- complete graphs -----------------------------------------------------------------


def kn_costs_by_packing(n_max: int, counts: dict[int, int], unlimited_from: int) -> list[int]:
    """``out[n]`` = n minus the largest number of pairwise distinct asymmetric trees with orders summing to n.

    A bounded knapsack over tree orders; orders >= ``unlimited_from`` are
    assumed to have as many trees as needed.  Entries with no packing are -1.
    """
    NEG = -1
    best = [NEG] * (n_max + 1)
    best[0] = 0
    for order in range(1, n_max + 1):
        avail = counts.get(order, 0) if order < unlimited_from else n_max
        if avail == 0:
            continue
        new = best[:]
        for total in range(n_max + 1):
            if best[total] == NEG:
                continue
            for c in range(1, avail + 1):
                t = total + c * order
                if t > n_max:
                    break
                new[t] = max(new[t], best[total] + c)
        best = new
    return [n - b if b != NEG else -1 for n, b in enumerate(best)]


def all_permutations(n: int):
    return list(permutations(range(n)))
