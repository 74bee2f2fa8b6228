"""Explicit distinguishing 2-colorings of products, each verified before it is returned.

Coordinates are 0-based: factor ``i`` vertex ``j`` is coordinate value ``j``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import ceil, log2
from typing import Optional, Sequence

from .graph import EDGE, VERTEX, GraphError, TwoColoring
from .kn import procedure1, rho_prime_kn, small_kn_witness
from .product import ProductGraph, format_vertex, parse_product_spec
from .symmetry import (automorphism_group, edge_elements, is_distinguishing, preserving_count,
                       subset_representatives)
from .symmetry.group import GroupTooLarge
from .trees import TreeCatalog

MAX_HYPERCUBE = 10
MAX_KN_POWER_ORDER = 2000
EXHAUSTIVE_GROUP_LIMIT = 50_000


class ConstructionError(GraphError):
    pass


@dataclass(frozen=True)
class Construction:
    graph_spec: str
    product: ProductGraph
    coloring: TwoColoring
    verified: bool
    note: str = ""

    @property
    def red_count(self) -> int:
        return self.coloring.red_count

    def to_json(self) -> str:
        pg = self.product
        return json.dumps({
            "graph_spec": self.graph_spec,
            "mode": self.coloring.mode,
            "red_vertices": [format_vertex(pg, v) for v in sorted(self.coloring.red_vertices)],
            "red_edges": [f"{format_vertex(pg, u)}-{format_vertex(pg, v)}" for u, v in sorted(self.coloring.red_edges)],
            "verified": self.verified,
            "note": self.note,
        })


def _check_mode(mode: str) -> None:
    if mode not in (VERTEX, EDGE):
        raise ConstructionError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def _finish(spec: str, pg: ProductGraph, c: TwoColoring, note: str = "") -> Construction:
    if not is_distinguishing(pg.graph, c):
        raise ConstructionError(f"{spec}: constructed coloring failed the exact distinguishing check")
    return Construction(spec, pg, c, True, note)


def _edge(pg: ProductGraph, a: Sequence[int], b: Sequence[int]) -> tuple[int, int]:
    u, v = pg.index(a), pg.index(b)
    if not pg.graph.has_edge(u, v):
        raise ConstructionError(f"{tuple(a)}-{tuple(b)} is not an edge")
    return (min(u, v), max(u, v))


def _power(kind: str, n: int, k: int) -> tuple[str, ProductGraph]:
    spec = f"{kind}{n}^{k}"
    return spec, parse_product_spec(spec)


def _distinct_product(kind: str, orders: Sequence[int], minimum: int) -> tuple[str, ProductGraph]:
    orders = list(orders)
    if len(orders) < 2:
        raise ConstructionError("need at least two factors")
    if len(set(orders)) != len(orders):
        raise ConstructionError(f"factor orders must be pairwise distinct, got {orders}")
    if min(orders) < minimum:
        raise ConstructionError(f"factor orders must be >= {minimum}")
    spec = "*".join(f"{kind}{n}" for n in orders)
    return spec, parse_product_spec(spec)


# --- paths ---------------------------------------------------------------------------


def path_power_coloring(n: int, k: int, mode: str) -> Construction:
    """One red element on P_n^k.

    Edge mode: the edge (0, 0, 1, ..., k-2)-(1, 0, 1, ..., k-2).  Vertex mode:
    the vertex (0, 1, ..., k-1); its coordinates are distinct, so no factor
    swap fixes it.
    """
    _check_mode(mode)
    if n < 3 or k < 2:
        raise ConstructionError("need n >= 3 and k >= 2")
    limit = 1 + n // 2 if mode == EDGE else n // 2
    if k > limit:
        raise ConstructionError(f"{mode} mode needs k <= {limit} for n={n}")
    spec, pg = _power("P", n, k)
    if mode == EDGE:
        tail = [i - 1 for i in range(1, k)]
        c = TwoColoring.edges([_edge(pg, [0] + tail, [1] + tail)])
    else:
        c = TwoColoring.vertices([pg.index(list(range(k)))])
    return _finish(spec, pg, c)


def path_product_coloring(orders: Sequence[int], mode: str) -> Construction:
    """One red element at the all-zero corner of a product of distinct paths."""
    _check_mode(mode)
    spec, pg = _distinct_product("P", orders, 3)
    zero = [0] * pg.k
    if mode == EDGE:
        c = TwoColoring.edges([_edge(pg, zero, [1] + zero[1:])])
    else:
        c = TwoColoring.vertices([pg.index(zero)])
    return _finish(spec, pg, c)


# --- cycles --------------------------------------------------------------------------


def _cycle_pattern(pg: ProductGraph, mode: str, square_fix: bool = False) -> TwoColoring:
    k = pg.k
    diag = list(range(k))
    for i, r in enumerate(pg.radices):
        if diag[i] >= r or (i == 1 and r < 3):
            raise ConstructionError(f"factor {i} is too small for the diagonal pattern")
    zero = [0] * k
    one = [1] + zero[1:]
    if mode == EDGE:
        if k >= 3 and 2 * (k - 1) == pg.radices[-1]:
            # k - 1 is antipodal to 0, so a reflection fixes both red edges
            diag[-1] = pg.radices[-1] - 1
        shifted = diag.copy()
        shifted[1] = 2
        return TwoColoring.edges([_edge(pg, zero, one), _edge(pg, diag, shifted)])
    third = [0, 2] if square_fix else diag
    return TwoColoring.vertices([pg.index(zero), pg.index(one), pg.index(third)])


def cycle_power_coloring(n: int, k: int, mode: str) -> Construction:
    """Two red edges (0,...,0)-(1,0,...,0) and (0,1,2,...,k-1)-(0,2,2,...,k-1), or
    three red vertices (0,...,0), (1,0,...,0), (0,1,2,...,k-1), on C_n^k.

    For k = 2 the third red vertex (0, 1) would make the red set invariant
    under the factor swap, so (0, 2) is used instead.  In edge mode with
    k - 1 = n/2 the last diagonal coordinate becomes n - 1.
    """
    _check_mode(mode)
    if n < 5 or k < 2:
        raise ConstructionError("need n >= 5 and k >= 2")
    limit = 1 + n // 2 if mode == EDGE else n // 2
    if k > limit:
        raise ConstructionError(f"{mode} mode needs k <= {limit} for n={n}")
    spec, pg = _power("C", n, k)
    return _finish(spec, pg, _cycle_pattern(pg, mode, square_fix=(k == 2)))


def cycle_product_coloring(orders: Sequence[int], mode: str) -> Construction:
    """The cycle-power pattern on a product of cycles of distinct orders."""
    _check_mode(mode)
    spec, pg = _distinct_product("C", orders, 5)
    return _finish(spec, pg, _cycle_pattern(pg, mode))


# --- hypercubes ----------------------------------------------------------------------

_Q3_EDGES = (((0, 0, 0), (1, 0, 0)), ((1, 0, 0), (1, 1, 0)), ((0, 1, 1), (1, 1, 1)))
_Q4_EDGES = (((0, 0, 0, 1), (1, 0, 0, 1)), ((0, 0, 0, 0), (0, 1, 0, 0)), ((0, 0, 0, 1), (0, 1, 0, 1)))


def small_hypercube_coloring(k: int) -> Construction:
    """Three red edges on Q_3 or Q_4."""
    if k not in (3, 4):
        raise ConstructionError("small hypercube colorings exist for k in {3, 4}")
    spec = f"Q{k}"
    pg = parse_product_spec(spec)
    pattern = _Q3_EDGES if k == 3 else _Q4_EDGES
    c = TwoColoring.edges([_edge(pg, a, b) for a, b in pattern])
    if is_distinguishing(pg.graph, c):
        return Construction(spec, pg, c, True)
    action = edge_elements(automorphism_group(pg.graph).elements(), pg.graph)
    for rep in subset_representatives(action, 3):
        if preserving_count(action, rep) == 1:
            c = TwoColoring.edges([pg.graph.edges[i] for i in rep])
            return _finish(spec, pg, c, note="listed pattern failed; replaced by the first distinguishing triple")
    raise ConstructionError(f"no 3-edge distinguishing coloring of {spec}")


def _hypercube(n: int) -> tuple[str, ProductGraph]:
    if n < 5:
        raise ConstructionError("need n >= 5")
    if n > MAX_HYPERCUBE:
        raise ConstructionError(f"verification is limited to n <= {MAX_HYPERCUBE}")
    return f"Q{n}", parse_product_spec(f"Q{n}")


def _min_distance(points: Sequence[int]) -> int:
    return min((bin(a ^ b).count("1") for a, b in combinations(points, 2)), default=99)


def hypercube_determining_sets(n: int) -> list[tuple[list[int], int]]:
    """Determining sets of Q_n of size ceil(log2 n) + 1, with their minimum pairwise distance.

    Each set contains vertex 0 (vertex-transitivity).  Writing the other
    members as rows of a binary matrix, the pointwise stabilizer consists of
    the coordinate permutations fixing every row, so the set is determining
    iff the n columns are distinct.  Sets are listed by decreasing minimum
    distance, then by lexicographic column choice.
    """
    rows = ceil(log2(n))
    found = []
    for cols in combinations(range(1 << rows), n):
        members = [0]
        for r in range(rows):
            v = 0
            for pos, col in enumerate(cols):
                if col >> (rows - 1 - r) & 1:
                    v |= 1 << (n - 1 - pos)
            members.append(v)
        if len(set(members)) == len(members):
            found.append((sorted(members), _min_distance(members)))
    found.sort(key=lambda item: -item[1])
    return found


def _assign_red_edges(n: int, centers: Sequence[int], counts: Sequence[int]) -> Optional[list[tuple[int, int]]]:
    """Pick ``counts[i]`` edges at ``centers[i]`` so that no red edge joins two centers and
    every other vertex meets at most one red edge; lowest dimensions first, with backtracking."""
    S = set(centers)
    touched: set[int] = set()
    out: list[tuple[int, int]] = []

    def rec(i: int) -> bool:
        if i == len(centers):
            return True
        v = centers[i]
        free = [d for d in range(n) if (v ^ (1 << d)) not in S and (v ^ (1 << d)) not in touched]
        for dims in combinations(free, counts[i]):
            nbrs = [v ^ (1 << d) for d in dims]
            touched.update(nbrs)
            out.extend((min(v, w), max(v, w)) for w in nbrs)
            if rec(i + 1):
                return True
            del out[-len(nbrs):]
            touched.difference_update(nbrs)
        return False

    return out if rec(0) else None


def hypercube_det_coloring(n: int) -> Construction:
    """Red edges at a determining set v_1..v_r of Q_n, with i + 1 of them at v_i.

    Red edges never join two set members and every other vertex meets at most
    one red edge, so the members are exactly the vertices of red degree >= 2
    and their red degrees tell them apart.
    """
    spec, pg = _hypercube(n)
    candidates = hypercube_determining_sets(n)
    if not candidates:
        raise ConstructionError(f"Q{n} has no determining set of size {ceil(log2(n)) + 1}")
    r = len(candidates[0][0])
    counts = [i + 1 for i in range(1, r + 1)]
    if counts[-1] > n:
        raise ConstructionError(f"Q{n} has degree {n} < {counts[-1]}")
    for S, dmin in candidates:
        for order in permutations(S):
            red = _assign_red_edges(n, order, counts)
            if red is not None:
                note = "" if dmin >= 3 else f"determining set has minimum distance {dmin} (< 3)"
                return _finish(spec, pg, TwoColoring.edges(red), note)
    raise ConstructionError(f"no admissible red-edge assignment around any determining set of Q{n}")


def _distinguishing_class_exhaustive(g, size: int, floor: int) -> Optional[tuple[int, ...]]:
    elems = automorphism_group(g).elements(EXHAUSTIVE_GROUP_LIMIT)

    def accept(s: tuple[int, ...]) -> bool:
        x = s[-1]
        return all(bin(x ^ y).count("1") >= floor for y in s[:-1])

    for rep in subset_representatives(elems, size, accept=accept):
        if preserving_count(elems, rep) == 1:
            return rep
    return None


def _distinguishing_class_sampled(n: int, g, size: int, floor: int, attempts: int = 2000) -> Optional[tuple[int, ...]]:
    rng = random.Random(1000 * n + floor)
    for _ in range(attempts):
        pts: list[int] = [0]
        tries = 0
        while len(pts) < size and tries < 10000:
            tries += 1
            x = rng.randrange(1 << n)
            if all(bin(x ^ y).count("1") >= floor for y in pts):
                pts.append(x)
        if len(pts) == size and is_distinguishing(g, TwoColoring.vertices(pts)):
            return tuple(sorted(pts))
    return None


def hypercube_distinguishing_class(n: int) -> tuple[tuple[int, ...], int]:
    """A vertex set of size 2*ceil(log2 n) - 1 whose red coloring distinguishes Q_n.

    Prefers pairwise distance >= 3, relaxing to 2 and 1.  Exhaustive over
    orbit representatives when the group is small enough to enumerate,
    otherwise a seeded random search verified by the exact checker.
    """
    size = 2 * ceil(log2(n)) - 1
    g = parse_product_spec(f"Q{n}").graph
    for floor in (3, 2, 1):
        try:
            found = _distinguishing_class_exhaustive(g, size, floor)
        except GroupTooLarge:
            found = _distinguishing_class_sampled(n, g, size, floor)
        if found is not None:
            return found, floor
    raise ConstructionError(f"no distinguishing class of size {size} found in Q{n}")


def hypercube_class_coloring(n: int) -> Construction:
    """Two red edges at each vertex of a distinguishing class of Q_n."""
    spec, pg = _hypercube(n)
    S, floor = hypercube_distinguishing_class(n)
    red = _assign_red_edges(n, list(S), [2] * len(S))
    if red is None:
        raise ConstructionError(f"no admissible red-edge assignment around the class of Q{n}")
    note = "" if floor >= 3 else f"class has minimum distance {floor} (< 3)"
    return _finish(spec, pg, TwoColoring.edges(red), note)


# --- complete-graph powers ------------------------------------------------------------


def kn_power_coloring(n: int, k: int, cat: TreeCatalog) -> Construction:
    """A red asymmetric forest of K_n in the factor-i layer through (i-1, 0, ..., 0), for each i."""
    if n < 6 or k < 2:
        raise ConstructionError("need n >= 6 and k >= 2")
    if k > n + 1:
        raise ConstructionError(f"need k <= n + 1 = {n + 1}")
    if n**k > MAX_KN_POWER_ORDER:
        raise ConstructionError(f"K{n}^{k} has {n**k} vertices; verification is limited to {MAX_KN_POWER_ORDER}")
    if k > n:
        raise ConstructionError("the layer anchors (i-1, 0, ..., 0) need k <= n")
    forest = small_kn_witness(n) if n <= 7 else procedure1(n, cat).coloring()
    spec, pg = _power("K", n, k)
    red = []
    for i in range(k):
        anchor = [0] * k
        anchor[0] = i
        for a, b in forest.red_edges:
            ca, cb = anchor.copy(), anchor.copy()
            ca[i], cb[i] = a, b
            red.append(_edge(pg, ca, cb))
    c = TwoColoring.edges(red)
    expected = k * rho_prime_kn(n, cat)
    if c.red_count != expected:
        raise ConstructionError(f"expected {expected} red edges, built {c.red_count}")
    return _finish(spec, pg, c)
