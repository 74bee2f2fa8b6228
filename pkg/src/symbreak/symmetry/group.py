"""Permutation groups given by a base and a strong generating set.

Permutations are tuples ``p`` with ``p[v]`` the image of ``v``; composition
``compose(p, q)`` applies ``q`` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Optional, Sequence

import numpy as np

Perm = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**7


class GroupTooLarge(RuntimeError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def _transversal(point: int, gens: list[Perm], n: int) -> dict[int, Perm]:
    reps = {point: identity(n)}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            ux = reps[x]
            for g in gens:
                y = g[x]
                if y not in reps:
                    reps[y] = compose(g, ux)
                    nxt.append(y)
        frontier = nxt
    return reps


def schreier_sims(n: int, generators: Iterable[Sequence[int]]) -> tuple[list[int], list[tuple[Perm, int]]]:
    """Deterministic Schreier-Sims.

    Returns ``(base, strong)`` where each strong generator is tagged with the
    deepest level ``l`` such that it fixes ``base[:l]``.
    """
    gens = [tuple(g) for g in generators if not is_identity(g)]
    base: list[int] = []
    strong: list[Perm] = []

    def first_moved(g: Perm) -> int:
        return next(i for i, x in enumerate(g) if x != i)

    for g in gens:
        if all(g[b] == b for b in base):
            base.append(first_moved(g))
        strong.append(g)

    def level_gens(i: int) -> list[Perm]:
        return [g for g in strong if all(g[base[j]] == base[j] for j in range(i))]

    trans: list[Optional[dict[int, Perm]]] = [None] * len(base)

    def strip(h: Perm, start: int) -> tuple[Perm, int]:
        for j in range(start, len(base)):
            beta = h[base[j]]
            t = trans[j]
            if beta not in t:
                return h, j
            h = compose(inverse(t[beta]), h)
        return h, len(base)

    for j in range(len(base)):
        trans[j] = _transversal(base[j], level_gens(j), n)
    i = len(base) - 1
    while i >= 0:
        trans[i] = _transversal(base[i], level_gens(i), n)
        t = trans[i]
        gi = level_gens(i)
        restarted = False
        for beta, u in list(t.items()):
            for s in gi:
                h = compose(inverse(t[s[beta]]), compose(s, u))
                if is_identity(h):
                    continue
                hh, j = strip(h, i + 1)
                if j < len(base) or not is_identity(hh):
                    if j == len(base):
                        base.append(first_moved(hh))
                        trans.append(None)
                    strong.append(hh)
                    for lvl in range(i + 1, j + 1):
                        trans[lvl] = _transversal(base[lvl], level_gens(lvl), n)
                    i = j
                    restarted = True
                    break
            if restarted:
                break
        if not restarted:
            i -= 1

    tagged = []
    for g in strong:
        lvl = 0
        while lvl < len(base) and g[base[lvl]] == base[lvl]:
            lvl += 1
        tagged.append((g, lvl))
    return base, tagged


@dataclass
class AutGroup:
    """A permutation group with a base and level-tagged strong generators.

    ``generators`` is the deterministic generator list; ``order`` is the
    product of the basic orbit lengths.
    """

    degree: int
    generators: tuple[Perm, ...]
    order: int
    base: tuple[int, ...] = ()
    strong: tuple[tuple[Perm, int], ...] = ()
    _transversals: Optional[list[dict[int, Perm]]] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_generators(cls, degree: int, generators: Iterable[Sequence[int]]) -> "AutGroup":
        gens = tuple(tuple(g) for g in generators if not is_identity(g))
        base, strong = schreier_sims(degree, gens)
        grp = cls(degree, gens, 1, tuple(base), tuple(strong))
        grp.order = prod(len(t) for t in grp.transversals())
        return grp

    def transversals(self) -> list[dict[int, Perm]]:
        if self._transversals is None:
            self._transversals = [
                _transversal(b, [g for g, lvl in self.strong if lvl >= i], self.degree)
                for i, b in enumerate(self.base)
            ]
        return self._transversals

    def basic_orbit_lengths(self) -> list[int]:
        return [len(t) for t in self.transversals()]

    def elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
        """All elements as an ``(order, degree)`` array; the identity is row 0."""
        if self.order > cap:
            raise GroupTooLarge(f"group order {self.order} exceeds enumeration cap {cap}")
        dtype = np.int16 if self.degree < 2**15 else np.int32
        elems = np.arange(self.degree, dtype=dtype)[None, :]
        for t in reversed(self.transversals()):
            reps = sorted(t.values(), key=lambda p: (not is_identity(p), p))
            u = np.array(reps, dtype=dtype)
            elems = u[:, elems].reshape(-1, self.degree)
        return elems

    def vertex_orbits(self) -> list[list[int]]:
        return orbits_of_action(self.degree, self.generators)

    def contains(self, p: Sequence[int]) -> bool:
        h = tuple(p)
        for b, t in zip(self.base, self.transversals()):
            beta = h[b]
            if beta not in t:
                return False
            h = compose(inverse(t[beta]), h)
        return is_identity(h)


def orbits_of_action(npoints: int, actions: Iterable[Sequence[int]]) -> list[list[int]]:
    """Orbit partition of ``0..npoints-1`` under permutations, sorted by minimum."""
    parent = list(range(npoints))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in actions:
        for x in range(npoints):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[int]] = {}
    for x in range(npoints):
        classes.setdefault(find(x), []).append(x)
    return sorted(classes.values())


def edge_action(perm: Sequence[int], edge_index: dict[tuple[int, int], int], edges: Sequence[tuple[int, int]]) -> Perm:
    out = []
    for u, v in edges:
        a, b = perm[u], perm[v]
        out.append(edge_index[(a, b) if a < b else (b, a)])
    return tuple(out)
