"""Edge-distinguishing cost of complete graphs.

A red/blue edge coloring of K_n with fewer red edges is distinguishing iff
the red edges form a spanning forest (plus at most one untouched vertex)
whose components are pairwise non-isomorphic asymmetric trees.  The minimum
red count follows from the counts ``a_i`` of asymmetric trees: with
``s(N) = sum(i * a_i for i <= N)`` and ``s(N) <= n < s(N + 1)``, write
``n = s(N) + w * (N + 1) + r``; then the cost is ``n - sum(a_i for i <= N) - w``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .graph import Graph, GraphError, TwoColoring, build_graph, emit_dot, emit_graph6, generate
from .symmetry import (automorphism_group, canonical_certificate, edge_elements,
                       has_nontrivial_automorphism, is_distinguishing, preserving_count)
from .trees import TreeCatalog, spine_tree

# The smallest asymmetric graph: six vertices, one triangle.
UNICYCLIC_EDGES = ((0, 1), (1, 2), (1, 3), (2, 3), (2, 4), (4, 5))


class CatalogTooShallow(GraphError):
    pass


@dataclass(frozen=True)
class QuintasParams:
    n: int
    N: int
    w: int
    r: int


def quintas_params(n: int, cat: TreeCatalog) -> QuintasParams:
    if n < 8:
        raise GraphError("the (N, w, r) decomposition is defined for n >= 8")
    s = cat.partial_sums()
    top = cat.max_order
    if n >= s[top]:
        raise CatalogTooShallow(
            f"a catalog of depth {top} covers n < {s[top]}; n={n} needs depth at least {top + 1}")
    N = max(i for i in range(top) if s[i] <= n)
    w, r = divmod(n - s[N], N + 1)
    return QuintasParams(n, N, w, r)


def rho_prime_kn(n: int, cat: TreeCatalog) -> int:
    if n < 6:
        raise GraphError("K_n with n < 6 needs more than two edge colors")
    if n <= 7:
        return 6
    q = quintas_params(n, cat)
    return n - sum(cat.counts.get(i, 0) for i in range(1, q.N + 1)) - q.w


def small_kn_witness(n: int) -> TwoColoring:
    """Six red edges for K_6 (the asymmetric unicyclic graph) and K_7 (the 7-vertex asymmetric tree)."""
    if n == 6:
        return TwoColoring.edges(UNICYCLIC_EDGES)
    if n == 7:
        return TwoColoring.edges(spine_tree(7).edges)
    raise GraphError("small witnesses exist for n in {6, 7}")


# --- greedy asymmetric forest --------------------------------------------------------


@dataclass(frozen=True)
class ForestCover:
    n: int
    components: tuple[tuple[Graph, tuple[int, ...]], ...]
    red_edges: frozenset[tuple[int, int]]

    def coloring(self) -> TwoColoring:
        return TwoColoring.edges(self.red_edges)

    def component_orders(self) -> list[int]:
        return sorted(t.order for t, _ in self.components)

    def verify(self) -> None:
        """Re-check the cover invariants with the symmetry module."""
        seen = sorted(v for _, block in self.components for v in block)
        if seen != list(range(self.n)):
            raise GraphError("component blocks do not partition the vertex set")
        certs = set()
        for t, _ in self.components:
            if has_nontrivial_automorphism(t) is not None:
                raise GraphError("a component tree is not asymmetric")
            certs.add(canonical_certificate(t))
        if len(certs) != len(self.components):
            raise GraphError("two components are isomorphic")
        if len(self.red_edges) != self.n - len(self.components):
            raise GraphError("red edge count differs from n minus the number of components")

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "red_edge_count": len(self.red_edges),
            "components": [{"order": t.order, "graph6": emit_graph6(t), "block": list(b)}
                           for t, b in self.components],
            "red_edges": sorted(list(e) for e in self.red_edges),
        })

    def to_dot(self) -> str:
        return emit_dot(generate("complete", self.n), self.coloring(), name=f"K{self.n}")


def _fits(pool: list[tuple[int, int]], count: int, total: int) -> Optional[list[int]]:
    """First ``count`` pool entries (in pool order) whose orders sum to ``total``."""
    for combo in combinations(range(len(pool)), count):
        if sum(pool[i][1] for i in combo) == total:
            return list(combo)
    return None


def procedure1(n: int, cat: TreeCatalog, extend: bool = True) -> ForestCover:
    """Greedy asymmetric red forest in K_n.

    Vertex 0 is reserved and plays the role of the one-vertex tree.  Trees are
    taken in catalog order while the next unused tree fits into the remaining
    vertices.  A nonzero remainder triggers the replacement step: the last
    tree is removed and an unused tree with exactly the freed vertex count is
    placed.  If no such tree exists the last two trees are replaced by two
    unused trees, and so on.  With ``extend`` the pool also contains one
    asymmetric spine tree for every order above the catalog depth.
    """
    if n < 8:
        raise GraphError("the greedy forest is defined for n >= 8")
    quintas_params(n, cat)  # depth check
    omega = list(cat.omega)
    if not omega or omega[0].order != 1:
        raise GraphError("the catalog must start with the one-vertex tree")
    used = {0}
    placed: list[tuple[object, Graph]] = []  # (key, tree) after the reserved vertex
    avail = n - 1

    def first_unused() -> Optional[int]:
        return next((i for i in range(len(omega)) if i not in used), None)

    while True:
        i = first_unused()
        if i is None:
            raise CatalogTooShallow(f"catalog of depth {cat.max_order} exhausted at n={n}")
        used.add(i)
        placed.append((i, omega[i]))
        avail -= omega[i].order
        j = first_unused()
        if j is not None and avail >= omega[j].order:
            continue
        if avail == 0:
            break
        for depth in range(1, len(placed) + 1):
            popped = placed[-depth:]
            residue = avail + sum(t.order for _, t in popped)
            free = used - {k for k, _ in popped}
            pool: list[tuple[object, int]] = [(k, omega[k].order) for k in range(len(omega)) if k not in free]
            if extend:
                pool += [(("spine", m), m) for m in range(cat.max_order + 1, residue + 1)]
            choice = _fits(pool, depth, residue)
            if choice is not None:
                del placed[-depth:]
                for k, _ in popped:
                    used.discard(k)
                for c in choice:
                    key = pool[c][0]
                    tree = omega[key] if isinstance(key, int) else spine_tree(key[1])
                    if isinstance(key, int):
                        used.add(key)
                    placed.append((key, tree))
                avail = 0
                break
        else:
            raise GraphError(f"no replacement tree of order {avail} is available for n={n}")
        break

    components = [(omega[0], (0,))]
    red = set()
    nxt = 1
    for _, t in placed:
        block = tuple(range(nxt, nxt + t.order))
        components.append((t, block))
        red.update((block[u], block[v]) for u, v in t.edges)
        nxt += t.order
    return ForestCover(n, tuple(components), frozenset(red))


# --- table ---------------------------------------------------------------------------


def kn_table(lo: int, hi: int, cat: TreeCatalog) -> list[tuple[int, int]]:
    if not 6 <= lo <= hi:
        raise GraphError("need 6 <= lo <= hi")
    return [(n, rho_prime_kn(n, cat)) for n in range(lo, hi + 1)]


def table_csv(rows: Sequence[tuple[int, int]]) -> str:
    return "n,rho_prime\n" + "".join(f"{n},{v}\n" for n, v in rows)


def _runs(rows: Sequence[tuple[int, int]]) -> Iterator[tuple[int, int, str]]:
    """Maximal runs: equal values below 8, equal offsets ``n - value`` from 8 on."""
    start = None
    for idx, (n, v) in enumerate(rows):
        label = str(v) if n < 8 else (f"n-{n - v}" if n != v else "n")
        if start is None:
            start, cur = n, label
        elif label != cur:
            yield start, rows[idx - 1][0], cur
            start, cur = n, label
    if start is not None:
        yield start, rows[-1][0], cur


def table_runs(rows: Sequence[tuple[int, int]]) -> str:
    """Run-length rendering, one ``lo..hi<TAB>value`` line per row of the table."""
    return "".join(f"{a}..{b}\t{label}\n" for a, b, label in _runs(rows))


# --- exhaustive minimum -------------------------------------------------------------


def min_asymmetric_edge_count(n: int) -> tuple[int, Graph]:
    """Fewest edges of an asymmetric graph on exactly ``n`` vertices, with a witness.

    Graphs are grown one edge at a time with isomorphs removed by canonical
    certificate.  At most one vertex may be isolated, so ``ceil((n - 1) / 2)``
    edges is a lower bound and the scan starts there.
    """
    if not 6 <= n <= 9:
        raise GraphError("the exhaustive regime is 6 <= n <= 9")
    all_edges = generate("complete", n).edges
    layer = {canonical_certificate(build_graph(n, [])): build_graph(n, [])}
    lower = (n - 1 + 1) // 2
    for m in range(1, len(all_edges) + 1):
        nxt: dict[bytes, Graph] = {}
        for g in layer.values():
            for e in all_edges:
                if e in g.edge_index:
                    continue
                h = build_graph(n, g.edges + (e,))
                nxt.setdefault(canonical_certificate(h), h)
        layer = nxt
        if m < lower:
            continue
        for h in layer.values():
            if has_nontrivial_automorphism(h) is None:
                return m, h
    raise GraphError("no asymmetric graph found")


def min_asymmetric_edge_count_orderly(n: int) -> int:
    """Same minimum via orderly generation under the enumerated action of S_n on edges."""
    kn = generate("complete", n)
    action = edge_elements(automorphism_group(kn).elements(), kn)
    from .symmetry import subset_representatives

    for m in range(1, kn.size + 1):
        for rep in subset_representatives(action, m):
            if preserving_count(action, rep) == 1:
                return m
    raise GraphError("no asymmetric graph found")


def check_cover_distinguishing(cover: ForestCover) -> bool:
    return is_distinguishing(generate("complete", cover.n), cover.coloring())


__all__ = [
    "CatalogTooShallow", "ForestCover", "QuintasParams", "check_cover_distinguishing", "kn_table",
    "min_asymmetric_edge_count", "min_asymmetric_edge_count_orderly", "procedure1", "quintas_params",
    "rho_prime_kn", "small_kn_witness", "table_csv", "table_runs",
]
