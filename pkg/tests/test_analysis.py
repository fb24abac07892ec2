from __future__ import annotations

import random
from itertools import combinations

import pytest

import oracles
from vcx.analysis import (
    analysis_report,
    are_cross_intersecting,
    find_linear_triangle,
    is_2_intersecting,
    is_intersecting,
    is_linear_triangle,
    link_graph,
    transversal_number,
)
from vcx.bits import elements_of, mask_of
from vcx.constructions import paper_family, random_family, star_family
from vcx.core import DomainError, Family, GroundSet
from vcx.graph import Graph, has_k22, matching_number, max_degree, two_element_transversals

LINEAR_TRIANGLE = [(1, 4, 2), (2, 6, 3), (1, 5, 3)]


def pairs(masks):
    return sorted(elements_of(m) for m in masks)


def test_linear_triangle_transversals():
    cert = transversal_number(Family.from_sets(6, LINEAR_TRIANGLE, 3))
    assert cert.tau == 2
    assert pairs(cert.minimum_transversals) == [(1, 2), (1, 3), (1, 6), (2, 3), (2, 5), (3, 4)]


def test_star_tau():
    assert transversal_number(star_family(6, 3, 1)).tau == 1


def test_f7_16_tau():
    assert transversal_number(paper_family("f7_16")).tau == 3


def test_tau_matches_oracle():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(3, 7)
        pool = list(combinations(range(1, n + 1), rng.randint(1, 3)))
        fam = Family.from_sets(n, rng.sample(pool, rng.randint(1, len(pool))))
        tau, hits = oracles.tau(fam.sets(), n)
        cert = transversal_number(fam)
        assert cert.tau == tau
        assert sorted(cert.minimum_transversals) == sorted(mask_of(h) for h in hits)


def test_tau_errors():
    with pytest.raises(DomainError):
        transversal_number(Family(GroundSet(3), (), 3))


def test_intersection_predicates():
    assert is_2_intersecting(Family.from_sets(4, combinations(range(1, 5), 3), 3))
    assert not is_2_intersecting(Family.from_sets(5, [(1, 2, 3), (1, 4, 5)], 3))
    assert is_intersecting(Family.from_sets(5, combinations(range(1, 6), 3), 3))
    a = Family.from_sets(5, [(1, 2, 3)], 3)
    b = Family.from_sets(5, [(3, 4, 5)], 3)
    c = Family.from_sets(5, [(4, 5)], 2)
    assert are_cross_intersecting(a, b)
    assert not are_cross_intersecting(a, c)


def test_linear_triangle_found():
    fam = Family.from_sets(6, LINEAR_TRIANGLE, 3)
    tri = find_linear_triangle(fam)
    assert tri is not None
    assert sorted(t.bits for t in tri) == sorted(fam.masks)


def test_star_has_no_linear_triangle():
    assert find_linear_triangle(star_family(7, 3, 1)) is None


def test_f6_13_linear_triangle_fixture():
    # brute force over all C(13,3) triples finds 28 linear triangles; the
    # first in colex member order is the one below
    fam = paper_family("f6_13")
    tri = find_linear_triangle(fam)
    assert [t.elements for t in tri] == [(2, 3, 4), (1, 3, 5), (1, 2, 6)]
    count = sum(1 for a, b, c in combinations(fam.masks, 3) if is_linear_triangle(a, b, c))
    assert count == 28


def test_linear_triangle_requires_3_uniform():
    with pytest.raises(DomainError):
        find_linear_triangle(paper_family("f8_45"))


def test_path_graph():
    g = Graph.from_edges([(1, 2), (2, 3)])
    assert matching_number(g) == 1
    assert max_degree(g) == 2
    assert not has_k22(g)
    assert sorted(two_element_transversals(g)) == [(1, 2), (1, 3), (2, 3)]


def test_four_cycle():
    g = Graph.from_edges([(1, 2), (2, 3), (3, 4), (4, 1)])
    assert has_k22(g)
    assert matching_number(g) == 2


def test_claw():
    g = Graph.from_edges([(1, 2), (1, 3), (1, 4)])
    assert matching_number(g) == 1
    assert max_degree(g) == 3


def naive_matching(edges):
    edges = list(edges)
    for size in range(len(edges), 0, -1):
        for sub in combinations(edges, size):
            if len({v for e in sub for v in e}) == 2 * size:
                return size
    return 0


def test_matching_number_matches_brute_force():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(2, 7)
        all_pairs = list(combinations(range(1, n + 1), 2))
        edges = rng.sample(all_pairs, rng.randint(0, len(all_pairs)))
        assert matching_number(Graph.from_edges(edges)) == naive_matching(edges)


def test_has_k22_matches_brute_force():
    rng = random.Random(6)
    for _ in range(150):
        n = rng.randint(4, 7)
        all_pairs = list(combinations(range(1, n + 1), 2))
        edges = {frozenset(e) for e in rng.sample(all_pairs, rng.randint(0, len(all_pairs)))}
        expect = any(
            all(frozenset(e) in edges for e in [(a, b), (b, c), (c, d), (d, a)])
            for q in combinations(range(1, n + 1), 4)
            for a, b, c, d in _cycles(q)
        )
        assert has_k22(Graph.from_edges([tuple(e) for e in edges])) == expect


def _cycles(q):
    a, b, c, d = q
    return [(a, b, c, d), (a, b, d, c), (a, c, b, d)]


def test_link_graph_of_star():
    lg = link_graph(star_family(5, 3, 1), 1)
    assert len(lg.graph) == 6
    assert link_graph(star_family(5, 3, 1), 2).graph.edge_list() == [(1, 3), (1, 4), (1, 5)]


def test_analysis_report_keys():
    rep = analysis_report(random_family(7, 3, 2, 12, seed=1))
    assert {"transversal", "intersecting", "2_intersecting", "linear_triangle", "link_graphs"} <= set(rep)
    assert len(rep["link_graphs"]) == 7
