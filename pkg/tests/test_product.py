from __future__ import annotations

import random

import networkx as nx
import pytest

from oracles import aut_order, isomorphic, to_nx
from symbreak.graph import build_graph, generate
from symbreak.product import (
    ProductError,
    cartesian_product,
    factorization,
    factorize,
    format_vertex,
    layer,
    parse_elements,
    parse_product_spec,
    parse_vertex,
    product_automorphism_group,
    quotient,
    quotient_layer,
)
from symbreak.symmetry import automorphism_group, canonical_certificate

P = lambda n: generate("path", n)  # noqa: E731
C = lambda n: generate("cycle", n)  # noqa: E731
K = lambda n: generate("complete", n)  # noqa: E731


def test_product_examples():
    q3 = cartesian_product([K(2)] * 3)
    assert isomorphic(q3.graph, generate("hypercube", 3))
    p2p3 = cartesian_product([P(2), P(3)], check_prime=False)
    assert (p2p3.graph.order, p2p3.graph.size) == (6, 7)
    c = cartesian_product([C(5), C(6)])
    assert (c.graph.order, c.graph.size) == (30, 60)
    assert {c.graph.degree(v) for v in range(30)} == {4}


@pytest.mark.parametrize("factors", [[P(3), C(5)], [K(3), P(4), C(5)], [C(6), C(6)]])
def test_product_matches_networkx(factors):
    pg = cartesian_product(factors)
    h = to_nx(factors[0])
    for f in factors[1:]:
        h = nx.cartesian_product(h, to_nx(f))
    assert nx.is_isomorphic(h, to_nx(pg.graph))


def test_product_rejects_bad_factors():
    with pytest.raises(ProductError):
        cartesian_product([build_graph(3, [(0, 1)]), K(2)])
    with pytest.raises(ProductError):
        cartesian_product([build_graph(1, []), K(2)])
    with pytest.raises(ProductError, match="not prime"):
        cartesian_product([C(4), K(3)])


def test_coordinates_round_trip():
    pg = parse_product_spec("P3*C5*K4")
    for v in range(pg.graph.order):
        assert pg.index(pg.coords(v)) == v
        assert tuple(pg.coord_array[v]) == pg.coords(v)
    for u, v in pg.graph.edges:
        i = pg.edge_direction(u, v)
        cu, cv = pg.coords(u), pg.coords(v)
        assert pg.factors[i].has_edge(cu[i], cv[i])


def test_layer_examples():
    q3 = parse_product_spec("Q3")
    g, emb = layer(q3, 0, q3.index((0, 0, 0)))
    assert g.size == 1 and [q3.coords(v) for v in emb] == [(0, 0, 0), (1, 0, 0)]
    c = parse_product_spec("C5*C6")
    for v in (0, 17, 29):
        g, emb = layer(c, 1, v)
        assert canonical_certificate(g) == canonical_certificate(C(6))
        assert all(c.coords(x)[0] == c.coords(v)[0] for x in emb)


def test_quotient_examples():
    q3 = parse_product_spec("Q3")
    assert isomorphic(quotient(q3, 1).graph, C(4))
    assert isomorphic(quotient(parse_product_spec("C5*C6"), 0).graph, C(6))
    q = quotient(parse_product_spec("P5^3"), 2)
    assert q.graph.order == 25 and q.k == 2
    with pytest.raises(ProductError):
        quotient(parse_product_spec("C5"), 0)


def test_quotient_layer_is_a_copy_of_the_quotient():
    pg = parse_product_spec("P3*C5*K4")
    for i in range(3):
        q = quotient(pg, i).graph
        for j in range(pg.radices[i]):
            emb = quotient_layer(pg, i, j)
            sub = {(min(a, b), max(a, b)) for a, b in ((emb[x], emb[y]) for x, y in q.edges)}
            assert sub <= set(pg.graph.edges)
            assert all(pg.coords(v)[i] == j for v in emb)


@pytest.mark.parametrize("spec, names", [
    ("Q3", ["K2", "K2", "K2"]),
    ("C5*C6", ["C5", "C6"]),
    ("K3", ["K3"]),
    ("P3*P4*C5", ["P3", "P4", "C5"]),
    ("K3*K4", ["K3", "K4"]),
    ("C6^2", ["C6", "C6"]),
])
def test_factorize_recovers_factors(spec, names):
    pg = parse_product_spec(spec)
    rnd = random.Random(spec)
    perm = list(range(pg.graph.order))
    rnd.shuffle(perm)
    found = factorize(pg.graph.relabel(perm))
    expected = sorted(canonical_certificate(parse_product_spec(n).graph) for n in names)
    assert sorted(canonical_certificate(f) for f in found) == expected
    rebuilt = cartesian_product(found) if len(found) > 1 else None
    if rebuilt is not None:
        assert canonical_certificate(rebuilt.graph) == canonical_certificate(pg.graph)


def test_factorize_c4_is_two_k2():
    assert [f.order for f in factorize(C(4))] == [2, 2]


def test_factorization_coordinates_are_verified():
    g = parse_product_spec("C5*C6").graph
    fz = factorization(g)
    assert len(set(fz.coordinates)) == g.order
    for u, v in g.edges:
        diff = [i for i in range(2) if fz.coordinates[u][i] != fz.coordinates[v][i]]
        assert len(diff) == 1


def test_factorize_prime_graphs():
    for g in (K(5), C(7), P(6), generate("hypercube", 1), build_graph(4, [(0, 1), (1, 2), (2, 3), (1, 3)])):
        assert len(factorize(g)) == 1


@pytest.mark.parametrize("spec, order", [
    ("Q3", 48), ("Q4", 384), ("C5*C6", 120), ("P5^3", 48), ("P5^2", 8), ("K3*K4", 144), ("C6^2", 288),
])
def test_product_group_matches_direct(spec, order):
    pg = parse_product_spec(spec)
    grp = product_automorphism_group(pg)
    assert grp.order == order == automorphism_group(pg.graph).order


@pytest.mark.parametrize("spec", ["P3*P4", "K2*K3", "C5*K2"])
def test_product_group_matches_vf2(spec):
    pg = parse_product_spec(spec)
    assert product_automorphism_group(pg).order == aut_order(pg.graph)


@pytest.mark.parametrize("bad", ["", "X5", "C2", "P5^0", "C5**C6", "Q0", "K", "P1*P3"])
def test_spec_errors(bad):
    with pytest.raises(ProductError):
        parse_product_spec(bad)


def test_vertex_literals():
    q3 = parse_product_spec("Q3")
    v = q3.index((0, 1, 1))
    for lit in ("011", "0.1.1", "(0,1,1)", f"#{v}"):
        assert parse_vertex(q3, lit) == v
    assert format_vertex(q3, v) == "011"
    big = parse_product_spec("C5*C12")
    assert format_vertex(big, big.index((3, 11))) == "3.11"
    assert parse_vertex(parse_product_spec("C6"), "4") == 4
    with pytest.raises(ProductError):
        parse_vertex(q3, "0112")
    with pytest.raises(ProductError):
        parse_elements(q3, "000-011")
    verts, edges = parse_elements(q3, "000,(1,1,1),000-100")
    assert verts == [0, 7] and edges == [(0, 4)]
