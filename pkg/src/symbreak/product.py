"""Cartesian products with mixed-radix coordinates.

Vertex ``v`` of a product of factors with orders ``n_1..n_k`` has coordinates
``(c_1, ..., c_k)`` in row-major order: ``v = sum(c_i * stride_i)`` with
``stride_i = n_{i+1} * ... * n_k``.  Layer and quotient maps are pure index
arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, GraphError, build_graph, generate
from .symmetry import AutGroup, are_color_isomorphic, automorphism_group, canonical_certificate


class ProductError(GraphError):
    pass


@dataclass(frozen=True)
class ProductGraph:
    graph: Graph
    factors: tuple[Graph, ...]
    names: tuple[str, ...] = ()

    @property
    def k(self) -> int:
        return len(self.factors)

    @cached_property
    def radices(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for r in reversed(self.radices):
            out.append(s)
            s *= r
        return tuple(reversed(out))

    @cached_property
    def coord_array(self) -> np.ndarray:
        v = np.arange(self.graph.order)
        return np.stack([(v // s) % r for s, r in zip(self.strides, self.radices)], axis=1)

    def coords(self, v: int) -> tuple[int, ...]:
        return tuple((v // s) % r for s, r in zip(self.strides, self.radices))

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.k:
            raise ProductError(f"expected {self.k} coordinates, got {len(coords)}")
        for c, r in zip(coords, self.radices):
            if not 0 <= c < r:
                raise ProductError(f"coordinate {tuple(coords)} out of range for radices {self.radices}")
        return sum(c * s for c, s in zip(coords, self.strides))

    def edge_direction(self, u: int, v: int) -> int:
        """Index of the factor along which the product edge ``uv`` runs."""
        cu, cv = self.coords(u), self.coords(v)
        diff = [i for i in range(self.k) if cu[i] != cv[i]]
        if len(diff) != 1:
            raise ProductError(f"({u}, {v}) is not a product edge")
        return diff[0]

    @property
    def spec(self) -> str:
        return "*".join(self.names) if self.names else f"product of {self.k} factors"


def _check_factor(f: Graph) -> None:
    if f.order < 2:
        raise ProductError("product factors need order >= 2")
    if not f.is_connected():
        raise ProductError("product factors must be connected")


def cartesian_product(factors: Sequence[Graph], names: Sequence[str] = (), check_prime: bool = True) -> ProductGraph:
    factors = tuple(factors)
    if not factors:
        raise ProductError("need at least one factor")
    for f in factors:
        _check_factor(f)
    if check_prime and len(factors) > 1:
        for i, f in enumerate(factors):
            if len(factorize(f)) > 1:
                raise ProductError(f"factor {i} is not prime with respect to the Cartesian product")
    radices = [f.order for f in factors]
    strides = []
    s = 1
    for r in reversed(radices):
        strides.append(s)
        s *= r
    strides.reverse()
    total = s
    edges = []
    for v in range(total):
        for i, f in enumerate(factors):
            c = (v // strides[i]) % radices[i]
            for w in f.adjacency[c]:
                if w > c:
                    edges.append((v, v + (w - c) * strides[i]))
    return ProductGraph(build_graph(total, edges), factors, tuple(names))


def layer(pg: ProductGraph, i: int, v: int) -> tuple[Graph, list[int]]:
    """The G_i-layer through ``v``; ``embedding[j]`` is the product vertex with i-th coordinate j."""
    if not 0 <= i < pg.k:
        raise ProductError(f"factor index {i} out of range")
    c = pg.coords(v)
    base = v - c[i] * pg.strides[i]
    emb = [base + j * pg.strides[i] for j in range(pg.radices[i])]
    sub, _ = pg.graph.induced(emb)
    return sub, emb


def quotient(pg: ProductGraph, i: int) -> ProductGraph:
    """Q_i: the product of every factor except the i-th."""
    if pg.k < 2:
        raise ProductError("a quotient needs at least two factors")
    if not 0 <= i < pg.k:
        raise ProductError(f"factor index {i} out of range")
    rest = [f for j, f in enumerate(pg.factors) if j != i]
    names = tuple(nm for j, nm in enumerate(pg.names) if j != i) if pg.names else ()
    return cartesian_product(rest, names, check_prime=False)


def quotient_layer(pg: ProductGraph, i: int, j: int) -> list[int]:
    """Product vertices with i-th coordinate ``j``, ordered by their Q_i coordinates."""
    others = [t for t in range(pg.k) if t != i]
    radices = [pg.radices[t] for t in others]
    out = []
    for x in range(prod(radices)):
        coords = [0] * pg.k
        coords[i] = j
        rem = x
        for t, r in zip(reversed(others), reversed(radices)):
            coords[t] = rem % r
            rem //= r
        out.append(pg.index(coords))
    return out


# --- factorization ---------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    factors: tuple[Graph, ...]
    coordinates: tuple[tuple[int, ...], ...]
    prime: bool


def _product_relation_classes(g: Graph) -> list[list[int]]:
    """Edge classes of the transitive closure of Djokovic-Winkler Theta and tau."""
    n, m = g.order, g.size
    dist = [g.distances_from(v) for v in range(n)]
    edges = g.edges
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    for a in range(m):
        x, y = edges[a]
        dx, dy = dist[x], dist[y]
        for b in range(a + 1, m):
            u, v = edges[b]
            if dx[u] + dy[v] != dx[v] + dy[u]:
                union(a, b)
    adj = [set(a) for a in g.adjacency]
    eidx = g.edge_index
    for x in range(n):
        nb = sorted(adj[x])
        for p in range(len(nb)):
            for q in range(p + 1, len(nb)):
                y, z = nb[p], nb[q]
                square = (z not in adj[y]) and any(w != x and w not in adj[x] for w in adj[y] & adj[z])
                if not square:
                    union(eidx[(min(x, y), max(x, y))], eidx[(min(x, z), max(x, z))])
    classes: dict[int, list[int]] = {}
    for e in range(m):
        classes.setdefault(find(e), []).append(e)
    return sorted(classes.values())


def _components_without(g: Graph, removed: set[int]) -> list[int]:
    comp = [-1] * g.order
    label = 0
    adj: list[list[int]] = [[] for _ in range(g.order)]
    for e, (u, v) in enumerate(g.edges):
        if e not in removed:
            adj[u].append(v)
            adj[v].append(u)
    for s in range(g.order):
        if comp[s] >= 0:
            continue
        comp[s] = label
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w] = label
                    stack.append(w)
        label += 1
    return comp


def _split(g: Graph) -> Optional[tuple[list[Graph], list[tuple[int, ...]]]]:
    classes = _product_relation_classes(g)
    if len(classes) < 2:
        return None
    factors = []
    coords_per = []
    for cls in classes:
        members = set(cls)
        comp = _components_without(g, members)
        order = max(comp) + 1
        fedges = {(min(comp[u], comp[v]), max(comp[u], comp[v])) for e, (u, v) in enumerate(g.edges) if e in members}
        factors.append(build_graph(order, fedges))
        coords_per.append(comp)
    coords = [tuple(c[v] for c in coords_per) for v in range(g.order)]
    if len(set(coords)) != g.order or prod(f.order for f in factors) != g.order:
        return None
    for u, v in g.edges:
        diff = [i for i in range(len(factors)) if coords[u][i] != coords[v][i]]
        if len(diff) != 1 or not factors[diff[0]].has_edge(coords[u][diff[0]], coords[v][diff[0]]):
            return None
    if sum(f.size * g.order // f.order for f in factors) != g.size:
        return None
    return factors, coords


def factorization(g: Graph) -> Factorization:
    """Prime factorization with a verified coordinate map ``vertex -> factor coordinates``."""
    if not g.is_connected():
        raise ProductError("factorization needs a connected graph")
    if g.order < 2:
        return Factorization((g,), tuple((0,) for _ in range(g.order)), True)
    split = _split(g)
    if split is None:
        return Factorization((g,), tuple((v,) for v in range(g.order)), True)
    factors, coords = split
    out_f: list[Graph] = []
    sub_coords: list[tuple[tuple[int, ...], ...]] = []
    for f in factors:
        sub = factorization(f)
        out_f.extend(sub.factors)
        sub_coords.append(sub.coordinates)
    full = tuple(tuple(x for i, c in enumerate(cv) for x in sub_coords[i][c]) for cv in coords)
    order = sorted(range(len(out_f)), key=lambda i: (out_f[i].order, out_f[i].size, canonical_certificate(out_f[i])))
    return Factorization(tuple(out_f[i] for i in order), tuple(tuple(c[i] for i in order) for c in full), True)


def factorize(g: Graph) -> list[Graph]:
    """Prime factors of a connected graph, sorted by (order, size, certificate)."""
    return list(factorization(g).factors)


# --- automorphisms (product structure) --------------------------------------------


def product_automorphism_group(pg: ProductGraph) -> AutGroup:
    """Aut of a product of connected primes: factor automorphisms and swaps of isomorphic factors."""
    n = pg.graph.order
    C = pg.coord_array
    strides = np.array(pg.strides)
    gens: list[tuple[int, ...]] = []
    factor_orders = []
    for i, f in enumerate(pg.factors):
        fg = automorphism_group(f)
        factor_orders.append(fg.order)
        for p in fg.generators:
            new = C.copy()
            new[:, i] = np.asarray(p)[C[:, i]]
            gens.append(tuple(int(x) for x in new @ strides))
    certs = [canonical_certificate(f) for f in pg.factors]
    classes: dict[bytes, list[int]] = {}
    for i, c in enumerate(certs):
        classes.setdefault(c, []).append(i)
    expected = prod(factor_orders)
    for members in classes.values():
        expected *= factorial(len(members))
        for a, b in zip(members, members[1:]):
            phi = are_color_isomorphic(pg.factors[b], pg.factors[a])  # G_b -> G_a
            phi_inv = [0] * len(phi)
            for x, y in enumerate(phi):
                phi_inv[y] = x
            new = C.copy()
            new[:, a] = np.asarray(phi)[C[:, b]]
            new[:, b] = np.asarray(phi_inv)[C[:, a]]
            gens.append(tuple(int(x) for x in new @ strides))
    grp = AutGroup.from_generators(n, gens)
    if grp.order != expected:
        raise ProductError(f"generated group has order {grp.order}, product formula gives {expected}")
    return grp


# --- spec strings ------------------------------------------------------------------

_TERM = re.compile(r"^([PCKQ])(\d+)(?:\^(\d+))?$")


def parse_product_spec(spec: str) -> ProductGraph:
    """Parse strings such as ``P5^3``, ``C5*C6*C7``, ``Q4`` or ``K6^2``."""
    text = spec.replace(" ", "")
    if not text:
        raise ProductError("empty graph spec")
    factors: list[Graph] = []
    names: list[str] = []
    for term in text.split("*"):
        mt = _TERM.match(term)
        if not mt:
            raise ProductError(f"cannot parse graph spec term {term!r}")
        kind, num, power = mt.group(1), int(mt.group(2)), int(mt.group(3) or 1)
        if power < 1:
            raise ProductError(f"exponent must be >= 1 in {term!r}")
        if kind == "Q":
            if num < 1:
                raise ProductError("hypercube dimension must be >= 1")
            base, name, reps = generate("complete", 2), "K2", num * power
        else:
            family = {"P": "path", "C": "cycle", "K": "complete"}[kind]
            try:
                base = generate(family, num)
            except GraphError as exc:
                raise ProductError(f"{term}: {exc}") from None
            name, reps = f"{kind}{num}", power
        factors.extend([base] * reps)
        names.extend([name] * reps)
    if len(factors) == 1:
        f = factors[0]
        if f.order < 2:
            return ProductGraph(f, (f,), tuple(names))
        if not f.is_connected():
            raise ProductError("disconnected graph")
        return ProductGraph(f, (f,), tuple(names))
    return cartesian_product(factors, names)


def parse_vertex(pg: ProductGraph, text: str) -> int:
    """Vertex literal: ``#17`` (raw index), ``010`` (single-digit coords), ``0.1.12`` or ``(0,1,12)``."""
    t = text.strip()
    if t.startswith("#"):
        v = int(t[1:])
        if not 0 <= v < pg.graph.order:
            raise ProductError(f"vertex {v} out of range")
        return v
    t = t.strip("()")
    if "," in t:
        parts = [int(x) for x in t.split(",")]
    elif "." in t:
        parts = [int(x) for x in t.split(".")]
    elif pg.k == 1:
        parts = [int(t)]
    else:
        if len(t) != pg.k or not t.isdigit():
            raise ProductError(f"cannot read vertex literal {text!r} for {pg.k} coordinates")
        parts = [int(ch) for ch in t]
    return pg.index(parts)


def format_vertex(pg: ProductGraph, v: int) -> str:
    c = pg.coords(v)
    if pg.k == 1:
        return str(c[0])
    if all(x < 10 for x in c):
        return "".join(str(x) for x in c)
    return ".".join(str(x) for x in c)


def parse_elements(pg: ProductGraph, text: str) -> tuple[list[int], list[tuple[int, int]]]:
    """Comma-separated vertex literals and ``a-b`` edge literals."""
    verts: list[int] = []
    edges: list[tuple[int, int]] = []
    for item in filter(None, (s.strip() for s in re.split(r",(?![^()]*\))", text))):
        if "-" in item:
            a, b = item.split("-", 1)
            u, v = parse_vertex(pg, a), parse_vertex(pg, b)
            if not pg.graph.has_edge(u, v):
                raise ProductError(f"{item} is not an edge")
            edges.append((min(u, v), max(u, v)))
        else:
            verts.append(parse_vertex(pg, item))
    return verts, edges
