from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from oracles import aut_order, automorphisms, brute_is_distinguishing, isomorphic
from symbreak.graph import GraphError, TwoColoring, build_graph, generate
from symbreak.kn import UNICYCLIC_EDGES
from symbreak.product import parse_elements, parse_product_spec
from symbreak.symmetry import (
    ColoredGraph,
    are_color_isomorphic,
    automorphism_group,
    canonical_certificate,
    edge_elements,
    is_determining_set,
    is_distinguishing,
    is_distinguishing_by_enumeration,
    min_determining_set,
    orbits,
    subset_count_check,
)
from symbreak.trees import spine_tree
from test_graph import graphs


def _sympy_order(group) -> int:
    if not group.generators:
        return 1
    return PermutationGroup([Permutation(list(p)) for p in group.generators]).order()


@pytest.mark.parametrize("g, order", [
    (generate("complete", 4), 24),
    (build_graph(6, UNICYCLIC_EDGES), 1),
    (generate("cycle", 6), 12),
    (generate("hypercube", 3), 48),
    (generate("hypercube", 4), 384),
    (generate("path", 5), 2),
    (build_graph(5, []), 120),
])
def test_group_order_examples(g, order):
    grp = automorphism_group(g)
    assert grp.order == order
    assert _sympy_order(grp) == order


@settings(max_examples=120, deadline=None)
@given(graphs(max_order=8))
def test_group_order_matches_vf2(g):
    grp = automorphism_group(g)
    assert grp.order == aut_order(g)
    assert _sympy_order(grp) == grp.order
    for p in grp.generators:
        assert {tuple(sorted((p[u], p[v]))) for u, v in g.edges} == set(g.edges)


@settings(max_examples=80, deadline=None)
@given(graphs(max_order=7), st.randoms(use_true_random=False))
def test_colored_group_order_matches_vf2(g, rnd):
    vc = {v: rnd.randint(0, 1) for v in range(g.order)}
    ec = {e: rnd.randint(0, 2) for e in g.edges}
    grp = automorphism_group(ColoredGraph.from_maps(g, vc, ec))
    assert grp.order == aut_order(g, vc, ec)


@settings(max_examples=120, deadline=None)
@given(graphs(max_order=8), st.randoms(use_true_random=False))
def test_certificate_is_relabeling_invariant(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_certificate(g) == canonical_certificate(h)
    phi = are_color_isomorphic(g, h)
    assert phi is not None
    assert {tuple(sorted((phi[u], phi[v]))) for u, v in g.edges} == set(h.edges)


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=7), graphs(max_order=7))
def test_certificate_equality_matches_isomorphism(a, b):
    same = canonical_certificate(a) == canonical_certificate(b)
    assert same == (a.order == b.order and isomorphic(a, b))


def test_certificate_separates_colors():
    p4 = generate("path", 4)
    end = ColoredGraph.from_maps(p4, {0: 1})
    other_end = ColoredGraph.from_maps(p4, {3: 1})
    middle = ColoredGraph.from_maps(p4, {1: 1})
    assert canonical_certificate(end) == canonical_certificate(other_end)
    assert canonical_certificate(end) != canonical_certificate(middle)
    assert canonical_certificate(end) != canonical_certificate(p4)


def test_are_color_isomorphic_examples():
    p5 = generate("path", 5)
    a = ColoredGraph.from_maps(p5, {0: 1})
    b = ColoredGraph.from_maps(p5, {4: 1})
    assert are_color_isomorphic(a, b) == (4, 3, 2, 1, 0)
    assert are_color_isomorphic(generate("complete", 3), generate("path", 3)) is None
    t = spine_tree(7)
    rnd = random.Random(7)
    for _ in range(2):
        p1, p2 = list(range(7)), list(range(7))
        rnd.shuffle(p1)
        rnd.shuffle(p2)
        x, y = t.relabel(p1), t.relabel(p2)
        phi = are_color_isomorphic(x, y)
        assert phi is not None
        # asymmetric: the only isomorphism is the composite relabeling
        expected = [0] * 7
        for v in range(7):
            expected[p1[v]] = p2[v]
        assert phi == tuple(expected)


def test_is_distinguishing_examples():
    q3 = parse_product_spec("Q3")
    _, red = parse_elements(q3, "000-100,100-110,011-111")
    assert is_distinguishing(q3.graph, TwoColoring.edges(red))
    assert not is_distinguishing(generate("complete", 6), TwoColoring.edges([]))
    assert not is_distinguishing(generate("path", 3), TwoColoring.vertices([1]))
    with pytest.raises(GraphError):
        is_distinguishing(generate("path", 3), TwoColoring.vertices([7]))


@settings(max_examples=100, deadline=None)
@given(graphs(max_order=7), st.randoms(use_true_random=False), st.sampled_from(["vertex", "edge", "total"]))
def test_is_distinguishing_matches_enumeration(g, rnd, mode):
    rv = [v for v in range(g.order) if rnd.random() < 0.4] if mode != "edge" else []
    re = [e for e in g.edges if rnd.random() < 0.4] if mode != "vertex" else []
    c = TwoColoring(mode, frozenset(rv), frozenset(re))
    auts = automorphisms(g)
    expected = brute_is_distinguishing(g, c, auts)
    assert is_distinguishing(g, c) == expected
    elements = automorphism_group(g).elements()
    assert is_distinguishing_by_enumeration(g, c, elements) == expected


def test_determining_set_examples():
    assert is_determining_set(generate("cycle", 6), {0, 1})
    assert not is_determining_set(generate("cycle", 6), {0, 3})
    k5 = generate("complete", 5)
    assert not any(is_determining_set(k5, s) for s in combinations(range(5), 3))
    q4 = min_determining_set(generate("hypercube", 4))
    assert q4.minimum and len(q4) == 3 and is_determining_set(generate("hypercube", 4), q4.vertices)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_min_determining_set_small_families(n):
    assert len(min_determining_set(generate("complete", n))) == n - 1
    assert len(min_determining_set(generate("path", n))) == 1
    assert len(min_determining_set(generate("cycle", n))) == 2


def test_min_determining_set_q5():
    res = min_determining_set(generate("hypercube", 5))
    assert res.minimum and len(res) == 4


def test_min_determining_set_distance_floor():
    q4 = generate("hypercube", 4)
    res = min_determining_set(q4, distance_floor=2)
    dist = [q4.distances_from(v) for v in range(q4.order)]
    assert all(dist[a][b] >= 2 for a, b in combinations(res.vertices, 2))
    assert is_determining_set(q4, res.vertices)


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=7))
def test_min_determining_set_is_minimum_by_brute_force(g):
    if not g.is_connected():
        return
    auts = automorphisms(g)
    res = min_determining_set(g)
    assert res.minimum

    def fixes_only_identity(s):
        return sum(all(p[v] == v for v in s) for p in auts) == 1

    assert fixes_only_identity(res.vertices)
    assert not any(fixes_only_identity(s) for s in combinations(range(g.order), len(res) - 1)) if len(res) else True


def test_orbit_examples():
    q3 = generate("hypercube", 3)
    assert len(orbits(automorphism_group(q3), "edges", q3)) == 1
    p4 = generate("path", 4)
    assert sorted(map(sorted, orbits(automorphism_group(p4), "vertices"))) == [[0, 3], [1, 2]]
    c6 = generate("cycle", 6)
    reps = orbits(automorphism_group(c6), "subsets", m=2)
    assert sorted(c6.distances_from(a)[b] for a, b in reps) == [1, 2, 3]


@pytest.mark.parametrize("spec, m", [("Q3", 3), ("C6", 3), ("K5", 2), ("P3*P4", 4)])
def test_subset_orbits_cover_all_subsets(spec, m):
    g = parse_product_spec(spec).graph
    elements = automorphism_group(g).elements()
    total, expected = subset_count_check(elements, m)
    assert total == expected
    total, expected = subset_count_check(edge_elements(elements, g), m)
    assert total == expected
