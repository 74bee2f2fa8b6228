"""Individualization-refinement search over ordered partitions.

The engine works on a vertex- and edge-colored graph.  Edge colors enter the
refinement through the neighbour counts: a vertex's key with respect to a
splitter cell is ``sum(weight(color(e)))`` over edges ``e`` into that cell,
with weights ``(n + 1) ** rank`` so per-color counts never collide.

Partitions are stored nauty-style: ``lab`` lists the vertices cell by cell,
``cell_of[v]`` is the start position of the cell holding ``v`` and
``cell_len[start]`` its length.  Every refinement records a trace; two search
nodes related by a color-preserving isomorphism produce identical traces,
which is the only pruning used when hunting for automorphisms.
"""

from __future__ import annotations

import sys
from collections import deque
from typing import Hashable, Optional, Sequence

Perm = tuple[int, ...]
Node = tuple[list[int], list[int], list[int], tuple]


class SearchBudgetExceeded(RuntimeError):
    """The search visited more nodes than its budget allows."""

    def __init__(self, nodes: int):
        super().__init__(f"search node budget of {nodes} exhausted")
        self.nodes = nodes


def color_sort_key(c: Hashable) -> tuple:
    return (type(c).__name__, c)


class Engine:
    """Single-use search engine for one colored graph."""

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], vertex_colors: Sequence[Hashable],
                 edge_colors: Sequence[Hashable], node_budget: Optional[int] = None):
        self.n = n
        self.vcolor_values = sorted(set(vertex_colors), key=color_sort_key)
        self.ecolor_values = sorted(set(edge_colors), key=color_sort_key)
        vrank = {c: i for i, c in enumerate(self.vcolor_values)}
        erank = {c: i for i, c in enumerate(self.ecolor_values)}
        self.vrank = [vrank[c] for c in vertex_colors]
        base = n + 1
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.edge_weight: dict[int, int] = {}
        self.edge_rank: list[tuple[int, int, int]] = []
        for (u, v), c in zip(edges, edge_colors):
            r = erank[c]
            wt = base ** r
            adj[u].append((v, wt))
            adj[v].append((u, wt))
            self.edge_weight[u * n + v] = wt
            self.edge_weight[v * n + u] = wt
            self.edge_rank.append((u, v, r))
        self.adj = adj
        self.node_budget = node_budget
        self.nodes = 0
        self._root: Optional[Node] = None

    # --- partitions -------------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise SearchBudgetExceeded(self.node_budget)

    def root(self) -> Node:
        if self._root is None:
            n = self.n
            lab = sorted(range(n), key=lambda v: self.vrank[v])
            cell_of = [0] * n
            cell_len = [0] * n
            starts = []
            i = 0
            while i < n:
                j = i
                r = self.vrank[lab[i]]
                while j < n and self.vrank[lab[j]] == r:
                    j += 1
                cell_len[i] = j - i
                for k in range(i, j):
                    cell_of[lab[k]] = i
                starts.append(i)
                i = j
            trace = self._refine(lab, cell_of, cell_len, starts, len(starts))
            self._tick()
            self._root = (lab, cell_of, cell_len, trace)
        return self._root

    def _refine(self, lab: list[int], cell_of: list[int], cell_len: list[int],
                queue_starts: list[int], ncells: int) -> tuple:
        n = self.n
        adj = self.adj
        in_q = [False] * n
        for s in queue_starts:
            in_q[s] = True
        q = deque(queue_starts)
        trace = []
        while q and ncells < n:
            s = q.popleft()
            in_q[s] = False
            cnt: dict[int, int] = {}
            for u in lab[s:s + cell_len[s]]:
                for w, wt in adj[u]:
                    cnt[w] = cnt.get(w, 0) + wt
            by_cell: dict[int, list[int]] = {}
            for w in cnt:
                c = cell_of[w]
                if cell_len[c] > 1:
                    by_cell.setdefault(c, []).append(w)
            splits = []
            for c in sorted(by_cell):
                members = by_cell[c]
                size = cell_len[c]
                groups: dict[int, list[int]] = {}
                for w in members:
                    groups.setdefault(cnt[w], []).append(w)
                if len(members) < size:
                    groups[0] = [w for w in lab[c:c + size] if w not in cnt]
                if len(groups) == 1:
                    continue
                keys = sorted(groups)
                pos = c
                frags = []
                for k in keys:
                    grp = groups[k]
                    start = pos
                    for w in grp:
                        lab[pos] = w
                        cell_of[w] = start
                        pos += 1
                    cell_len[start] = len(grp)
                    frags.append(start)
                ncells += len(keys) - 1
                splits.append((c, tuple((k, len(groups[k])) for k in keys)))
                if in_q[c]:
                    extra = frags[1:]
                else:
                    big = max(frags, key=lambda f: (cell_len[f], -f))
                    extra = [f for f in frags if f != big]
                for f in extra:
                    if not in_q[f]:
                        in_q[f] = True
                        q.append(f)
            if splits:
                trace.append((s, tuple(splits)))
        return tuple(trace)

    def individualize(self, node: Node, v: int) -> Node:
        self._tick()
        lab, cell_of, cell_len, _ = node
        lab = lab[:]
        cell_of = cell_of[:]
        cell_len = cell_len[:]
        s = cell_of[v]
        size = cell_len[s]
        i = lab.index(v, s, s + size)
        lab[i], lab[s] = lab[s], lab[i]
        cell_len[s] = 1
        cell_len[s + 1] = size - 1
        for w in lab[s + 1:s + size]:
            cell_of[w] = s + 1
        ncells = sum(1 for k in range(self.n) if cell_of[lab[k]] == k)
        trace = self._refine(lab, cell_of, cell_len, [s], ncells)
        return (lab, cell_of, cell_len, trace)

    @staticmethod
    def target_cell(node: Node) -> Optional[int]:
        _, _, cell_len, _ = node
        n = len(cell_len)
        i = 0
        while i < n:
            if cell_len[i] > 1:
                return i
            i += cell_len[i]
        return None

    @staticmethod
    def cell_members(node: Node, start: int) -> list[int]:
        return sorted(node[0][start:start + node[2][start]])

    def is_automorphism(self, gamma: Sequence[int]) -> bool:
        n = self.n
        ew = self.edge_weight
        for u, v, _ in self.edge_rank:
            if ew.get(gamma[u] * n + gamma[v]) != ew[u * n + v]:
                return False
        return all(self.vrank[gamma[v]] == self.vrank[v] for v in range(n))

    # --- automorphism group -----------------------------------------------

    def automorphism_group(self, stop_at_first: bool = False):
        """Return ``(base, [(generator, level)], orbit_sizes)``.

        ``generator`` fixes ``base[:level]`` pointwise; the group order is the
        product of ``orbit_sizes``.  With ``stop_at_first`` the search returns
        as soon as one non-identity automorphism is known (orbit sizes are then
        meaningless apart from signalling non-triviality).
        """
        limit = sys.getrecursionlimit()
        if limit < 4 * self.n + 1000:
            sys.setrecursionlimit(4 * self.n + 1000)
        node = self.root()
        path = [node]
        base: list[int] = []
        while (t := self.target_cell(node)) is not None:
            v = min(node[0][t:t + node[2][t]])
            base.append(v)
            node = self.individualize(node, v)
            path.append(node)
        first = node[0]
        gens: list[tuple[Perm, int]] = []
        orbit_sizes = [1] * len(base)
        for lvl in reversed(range(len(base))):
            parent = path[lvl]
            cell = self.cell_members(parent, self.target_cell(parent))
            b = base[lvl]
            uf = {x: x for x in cell}

            def find(x: int) -> int:
                while uf[x] != x:
                    uf[x] = uf[uf[x]]
                    x = uf[x]
                return x

            def absorb(g: Perm) -> None:
                for x in cell:
                    a, c = find(x), find(g[x])
                    if a != c:
                        uf[max(a, c)] = min(a, c)

            for g, _ in gens:
                absorb(g)
            failed: list[int] = []
            for w in cell:
                if w == b or find(w) == find(b):
                    continue
                fw = find(w)
                if any(find(f) == fw for f in failed):
                    continue
                gamma = self._find_automorphism(self.individualize(parent, w), lvl + 1, path, first)
                if gamma is None:
                    failed.append(w)
                    continue
                gens.append((gamma, lvl))
                absorb(gamma)
                if stop_at_first:
                    orbit_sizes[lvl] = 2
                    return base, gens, orbit_sizes
            rb = find(b)
            orbit_sizes[lvl] = sum(1 for x in cell if find(x) == rb)
        return base, gens, orbit_sizes

    def _find_automorphism(self, node: Node, depth: int, path: list[Node], first: list[int]) -> Optional[Perm]:
        ref = path[depth]
        if node[3] != ref[3] or node[2] != ref[2]:
            return None
        t = self.target_cell(node)
        if t is None:
            gamma = [0] * self.n
            for a, b in zip(first, node[0]):
                gamma[a] = b
            return tuple(gamma) if self.is_automorphism(gamma) else None
        for u in self.cell_members(node, t):
            found = self._find_automorphism(self.individualize(node, u), depth + 1, path, first)
            if found is not None:
                return found
        return None

    # --- canonical labeling -------------------------------------------------

    def _leaf_key(self, lab: list[int]) -> tuple:
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        edges = sorted((pos[u], pos[v], r) if pos[u] < pos[v] else (pos[v], pos[u], r)
                       for u, v, r in self.edge_rank)
        return tuple(edges)

    def canonical_labeling(self) -> tuple[list[int], tuple, list[Perm]]:
        """Canonical leaf ``lab`` (position -> vertex), its edge key and the
        automorphisms discovered on the way."""
        limit = sys.getrecursionlimit()
        if limit < 4 * self.n + 1000:
            sys.setrecursionlimit(4 * self.n + 1000)
        best: list = [None]  # [traces, key, lab]
        auts: list[Perm] = []

        def dfs(node: Node, traces: list, fixed: list[int]) -> None:
            if best[0] is not None:
                bt = best[0][0][:len(traces)]
                if traces > bt:
                    return
            t = self.target_cell(node)
            if t is None:
                key = self._leaf_key(node[0])
                if best[0] is None or (traces, key) < (best[0][0], best[0][1]):
                    best[0] = (traces, key, node[0])
                elif traces == best[0][0] and key == best[0][1]:
                    gamma = [0] * self.n
                    for a, b in zip(best[0][2], node[0]):
                        gamma[a] = b
                    auts.append(tuple(gamma))
                return
            done: list[int] = []
            for u in self.cell_members(node, t):
                if done and self._equivalent(u, done, fixed, auts):
                    continue
                child = self.individualize(node, u)
                dfs(child, traces + [child[3]], fixed + [u])
                done.append(u)

        root = self.root()
        dfs(root, [root[3]], [])
        _, key, lab = best[0]
        return lab, key, auts

    @staticmethod
    def _equivalent(u: int, done: list[int], fixed: list[int], auts: list[Perm]) -> bool:
        useful = [g for g in auts if all(g[p] == p for p in fixed)]
        if not useful:
            return False
        orbit = {u}
        frontier = [u]
        while frontier:
            x = frontier.pop()
            for g in useful:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(d in orbit for d in done)
