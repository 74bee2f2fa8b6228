"""Free trees, asymmetric trees and the size-ordered catalog of asymmetric trees.

Free trees are generated once per isomorphism class by rooting at the
centroid.  A tree with a unique centroid is a root whose branches all have at
most ``(n - 1) // 2`` vertices; a tree with two centroids (``n`` even) is an
unordered pair of rooted trees on ``n / 2`` vertices joined at their roots.
Rooted trees are canonical nested tuples (children sorted), so a multiset of
branches chosen in non-decreasing order is produced exactly once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

from .graph import Graph, GraphError, build_graph, emit_graph6, parse_graph6
from .symmetry import canonical_certificate, has_nontrivial_automorphism

MAX_TREE_ORDER = 16

Rooted = tuple  # tuple of child Rooted trees, sorted


@lru_cache(maxsize=None)
def _rooted_size(t: Rooted) -> int:
    return 1 + sum(_rooted_size(c) for c in t)


@lru_cache(maxsize=None)
def rooted_trees(s: int) -> tuple[Rooted, ...]:
    """All rooted trees on ``s`` vertices as canonical nested tuples, sorted."""
    if s == 1:
        return ((),)
    return tuple(sorted(_forests(s - 1, s - 1)))


def _pool(max_size: int) -> list[Rooted]:
    return [t for size in range(1, max_size + 1) for t in rooted_trees(size)]


def _forests(total: int, max_size: int) -> Iterator[Rooted]:
    """Sorted tuples of rooted trees, each of size <= max_size, with sizes summing to total."""
    pool = _pool(min(max_size, total))
    sizes = [_rooted_size(t) for t in pool]

    def rec(start: int, remaining: int, acc: list[Rooted]) -> Iterator[Rooted]:
        if remaining == 0:
            yield tuple(sorted(acc))
            return
        for i in range(start, len(pool)):
            if sizes[i] > remaining:
                break
            acc.append(pool[i])
            yield from rec(i, remaining - sizes[i], acc)
            acc.pop()

    yield from rec(0, total, [])


def _rooted_to_edges(t: Rooted, offset: int, edges: list[tuple[int, int]]) -> int:
    """Append edges of ``t`` with its root labeled ``offset``; return the next free label."""
    nxt = offset + 1
    for child in t:
        edges.append((offset, nxt))
        nxt = _rooted_to_edges(child, nxt, edges)
    return nxt


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_TREE_ORDER:
        raise GraphError(f"tree order must be in 1..{MAX_TREE_ORDER}, got {n}")


def enumerate_trees(n: int, shard: tuple[int, int] = (0, 1)) -> list[Graph]:
    """All free trees on ``n`` vertices, one per isomorphism class, in a fixed order.

    ``shard=(i, k)`` keeps only trees whose centroid root degree is ``i`` mod ``k``
    (two-centroid trees count as degree 0); the shards partition the full list.
    """
    _check_order(n)
    index, count = shard
    out: list[Graph] = []
    if n == 1:
        return [build_graph(1, [])] if index == 0 else []
    for t in _forests(n - 1, (n - 1) // 2):
        if len(t) % count != index:
            continue
        edges: list[tuple[int, int]] = []
        _rooted_to_edges(t, 0, edges)
        out.append(build_graph(n, edges))
    if n % 2 == 0 and index == 0:
        half = rooted_trees(n // 2)
        for i, a in enumerate(half):
            for b in half[i:]:
                edges = []
                nxt = _rooted_to_edges(a, 0, edges)
                _rooted_to_edges(b, nxt, edges)
                edges.append((0, nxt))
                out.append(build_graph(n, edges))
    return out


def is_asymmetric(g: Graph) -> bool:
    return has_nontrivial_automorphism(g) is None


def enumerate_asymmetric_trees(n: int, shard: tuple[int, int] = (0, 1)) -> list[Graph]:
    """Asymmetric trees on ``n`` vertices, sorted by canonical certificate."""
    trees = [t for t in enumerate_trees(n, shard) if is_asymmetric(t)]
    return sorted(trees, key=canonical_certificate)


def spine_tree(m: int) -> Graph:
    """Path on ``m - 1`` vertices plus a leaf on its third vertex.

    The branches at the degree-3 vertex have lengths 1, 2 and ``m - 4``, so
    the tree is asymmetric for ``m >= 7``; ``m = 7`` is the smallest
    asymmetric tree.
    """
    if m < 7:
        raise GraphError("spine trees are asymmetric only from 7 vertices on")
    edges = [(i, i + 1) for i in range(m - 2)] + [(2, m - 1)]
    return build_graph(m, edges)


@dataclass(frozen=True)
class TreeCatalog:
    """The list of asymmetric trees in non-decreasing order, with counts per order."""

    max_order: int
    omega: tuple[Graph, ...]
    counts: dict[int, int] = field(hash=False)

    def trees_of_order(self, n: int) -> list[Graph]:
        return [t for t in self.omega if t.order == n]

    def partial_sums(self) -> list[int]:
        """``s[N] = sum(i * a_i for i <= N)`` for ``N = 0..max_order``."""
        s = [0]
        for i in range(1, self.max_order + 1):
            s.append(s[-1] + i * self.counts.get(i, 0))
        return s

    def to_json(self) -> str:
        return json.dumps({
            "max_order": self.max_order,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "omega": [{"order": t.order, "graph6": emit_graph6(t)} for t in self.omega],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TreeCatalog":
        data = json.loads(text)
        omega = tuple(parse_graph6(item["graph6"]) for item in data["omega"])
        counts = {int(k): int(v) for k, v in data["counts"].items()}
        return cls(int(data["max_order"]), omega, counts)


def build_catalog(max_order: int, workers: int = 1) -> TreeCatalog:
    """Concatenate the asymmetric trees of orders ``1..max_order``."""
    if max_order < 1:
        raise GraphError("catalog depth must be >= 1")
    if max_order > MAX_TREE_ORDER:
        raise GraphError(f"catalog depth is limited to {MAX_TREE_ORDER}")
    orders = list(range(1, max_order + 1))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            per_order = list(ex.map(enumerate_asymmetric_trees, orders))
    else:
        per_order = [enumerate_asymmetric_trees(n) for n in orders]
    omega = tuple(t for trees in per_order for t in trees)
    counts = {n: len(trees) for n, trees in zip(orders, per_order)}
    return TreeCatalog(max_order, omega, counts)


DATA_DIR = Path(__file__).parent / "data"


def load_catalog(max_order: int) -> TreeCatalog:
    """Catalog from the bundled golden file when it is deep enough, else generated."""
    path = DATA_DIR / "tree_catalog_13.json"
    if path.exists() and max_order <= 13:
        full = TreeCatalog.from_json(path.read_text())
        omega = tuple(t for t in full.omega if t.order <= max_order)
        counts = {k: v for k, v in full.counts.items() if k <= max_order}
        return TreeCatalog(max_order, omega, counts)
    return build_catalog(max_order)


def find_in_catalog(cat: TreeCatalog, t: Graph) -> Optional[int]:
    cert = canonical_certificate(t)
    for i, s in enumerate(cat.omega):
        if s.order == t.order and canonical_certificate(s) == cert:
            return i
    return None
