"""Simple undirected graphs on dense vertex labels, standard families and I/O.

Vertices are the integers ``0..n-1``.  Edges are stored as sorted pairs in a
canonical (lexicographic) order, so two equal graphs serialize identically and
an edge's index is its position in :attr:`Graph.edges`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

Edge = tuple[int, int]

VERTEX, EDGE, TOTAL = "vertex", "edge", "total"
MODES = (VERTEX, EDGE, TOTAL)


class GraphError(ValueError):
    """Invalid graph construction or a coloring that does not fit its host."""


class GraphFormatError(GraphError):
    """Malformed serialized graph; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    order: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise GraphError(f"graph order must be >= 1, got {self.order}")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.order)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def size(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edge_index

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.order

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; unreachable vertices get -1."""
        dist = [-1] * self.order
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def relabel(self, images: Iterable[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``images[v]``."""
        images = list(images)
        return build_graph(self.order, [(images[u], images[v]) for u, v in self.edges])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (in the given order) and the embedding."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return build_graph(len(vs), sub), vs


def build_graph(order: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate, deduplicate and canonically sort an edge list."""
    if order < 1:
        raise GraphError(f"graph order must be >= 1, got {order}")
    edges = set()
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        if u == v:
            raise GraphError(f"loop at edge ({u}, {v})")
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
        edges.add(_norm_edge(u, v))
    return Graph(order, tuple(sorted(edges)))


def generate(family: str, parameter: int) -> Graph:
    """Path, cycle, complete graph (on ``parameter`` vertices) or hypercube Q_k."""
    k = parameter
    if family == "path":
        if k < 1:
            raise GraphError("path needs n >= 1")
        return build_graph(k, [(i, i + 1) for i in range(k - 1)])
    if family == "cycle":
        if k < 3:
            raise GraphError("cycle needs n >= 3")
        return build_graph(k, [(i, (i + 1) % k) for i in range(k)])
    if family == "complete":
        if k < 1:
            raise GraphError("complete graph needs n >= 1")
        return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
    if family == "hypercube":
        if k < 1:
            raise GraphError("hypercube needs k >= 1")
        n = 1 << k
        return build_graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(k) if not v >> b & 1])
    raise GraphError(f"unknown family {family!r}")


@dataclass(frozen=True)
class TwoColoring:
    """Red elements of a red/blue coloring; everything not listed is blue."""

    mode: str
    red_vertices: frozenset[int] = field(default_factory=frozenset)
    red_edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise GraphError(f"unknown coloring mode {self.mode!r}")
        object.__setattr__(self, "red_vertices", frozenset(int(v) for v in self.red_vertices))
        object.__setattr__(self, "red_edges", frozenset(_norm_edge(int(u), int(v)) for u, v in self.red_edges))
        if self.mode == VERTEX and self.red_edges:
            raise GraphError("vertex-mode coloring cannot have red edges")
        if self.mode == EDGE and self.red_vertices:
            raise GraphError("edge-mode coloring cannot have red vertices")

    @classmethod
    def vertices(cls, red: Iterable[int]) -> "TwoColoring":
        return cls(VERTEX, frozenset(red))

    @classmethod
    def edges(cls, red: Iterable[tuple[int, int]]) -> "TwoColoring":
        return cls(EDGE, red_edges=frozenset(red))

    @property
    def red_count(self) -> int:
        return len(self.red_vertices) + len(self.red_edges)

    def check_hosted(self, g: Graph) -> None:
        for v in self.red_vertices:
            if not 0 <= v < g.order:
                raise GraphError(f"red vertex {v} is not a vertex of the graph")
        for e in self.red_edges:
            if e not in g.edge_index:
                raise GraphError(f"red edge {e} is not an edge of the graph")

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "red_vertices": sorted(self.red_vertices),
            "red_edges": [list(e) for e in sorted(self.red_edges)],
        }


# --- graph6 -----------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(g: Graph) -> str:
    bits = [g.has_edge(i, j) for j in range(1, g.order) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        body.append(chr(63 + val))
    return _g6_size(g.order) + "".join(body)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    base = 0
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    if not data:
        raise GraphFormatError("empty graph6 string", base)
    vals = []
    for i, ch in enumerate(data):
        x = ord(ch) - 63
        if not 0 <= x <= 63:
            raise GraphFormatError(f"byte {ch!r} outside the graph6 range", base + i)
        vals.append(x)
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphFormatError("truncated 8-byte length prefix", base + len(vals))
        n = 0
        for x in vals[2:8]:
            n = n << 6 | x
        pos = 8
    else:
        if len(vals) < 4:
            raise GraphFormatError("truncated 4-byte length prefix", base + len(vals))
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        if n <= 62:
            raise GraphFormatError("order <= 62 must use the 1-byte length prefix", base)
        pos = 4
    if n < 1:
        raise GraphFormatError("graph6 order must be >= 1", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = vals[pos:]
    if len(payload) != need:
        raise GraphFormatError(f"expected {need} payload bytes, found {len(payload)}", base + pos + min(len(payload), need))
    pad = need * 6 - nbits
    if pad and payload[-1] & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", base + pos + need - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


# --- edge-list text ---------------------------------------------------------

def emit_edge_list(g: Graph) -> str:
    return "".join([f"{g.order}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list file")
    try:
        order = int(lines[0])
        pairs = []
        for ln in lines[1:]:
            u, v = ln.split()
            pairs.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed edge-list line: {exc}") from None
    return build_graph(order, pairs)


# --- DOT ----------------------------------------------------------------------

def emit_dot(g: Graph, coloring: Optional[TwoColoring] = None, name: str = "G",
             labels: Optional[list[str]] = None) -> str:
    """DOT text; red elements get ``color=red``, blue ones carry no attribute."""
    red_v: frozenset[int] = frozenset()
    red_e: frozenset[Edge] = frozenset()
    if coloring is not None:
        coloring.check_hosted(g)
        red_v, red_e = coloring.red_vertices, coloring.red_edges
    out = [f"graph {name} {{"]
    for v in range(g.order):
        attrs = []
        if labels is not None:
            attrs.append(f'label="{labels[v]}"')
        if v in red_v:
            attrs.append("color=red")
        out.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for e in g.edges:
        attr = " [color=red]" if e in red_e else ""
        out.append(f"  {e[0]} -- {e[1]}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"
