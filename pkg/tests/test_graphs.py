from __future__ import annotations

import pytest
from hypothesis import given, settings

import oracles
from conftest import orbital_graphs, petersen, random_graphs, to_adj, vt_corpus
from syncgroups.catalogue import CATALOGUE, cyclic, symmetric
from syncgroups.families import hamming
from syncgroups.graphs import (IRREGULAR, Graph, GraphError, complement, complete_graph, cycle_graph,
                               degree_of, find_isomorphism, generalized_orbital_graph, is_invariant,
                               is_isomorphic, null_graph, orbital_masks)
from syncgroups.perm import orbits_on_2subsets


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))


def test_petersen_as_orbital_graph():
    G = CATALOGUE["sym5_pairs"]()
    orbs = orbits_on_2subsets(G)
    graphs = [generalized_orbital_graph(G, [i], orbs) for i in range(2)]
    pet = next(g for g in graphs if degree_of(g) == 3)
    assert pet.n == 10
    assert is_isomorphic(pet, petersen())
    # girth 5: triangle-free and no 4-cycles
    adj = to_adj(pet)
    assert oracles.clique_number(adj) == 2
    assert all(len(adj[a] & adj[b]) == 0 for a in range(10) for b in adj[a])
    assert all(len(adj[a] & adj[b]) <= 1 for a in range(10) for b in range(a + 1, 10))


def test_full_mask_is_complete_and_empty_mask_needs_flag():
    G = cyclic(7)
    orbs = orbits_on_2subsets(G)
    assert generalized_orbital_graph(G, range(len(orbs)), orbs).is_complete()
    with pytest.raises(GraphError):
        generalized_orbital_graph(G, [], orbs)
    assert generalized_orbital_graph(G, [], orbs, allow_null=True).is_null()


def test_c5_orbital_is_5_cycle():
    G = cyclic(5)
    g = generalized_orbital_graph(G, [0])
    assert is_isomorphic(g, cycle_graph(5))


@pytest.mark.parametrize("key", ["sym5_pairs", "pgl_2_7_d21", "affine_3_2_order36", "psp_4_3_d40",
                                 "sym4_wr_sym2"])
def test_orbital_graphs_are_invariant(key):
    G = CATALOGUE[key]()
    for g in orbital_graphs(G):
        assert is_invariant(g, G)
        assert all(g.has_edge(s[a], s[b]) for s in G.generators for a, b in g.edges())


@pytest.mark.parametrize("m", range(1, 11))
def test_number_of_masks(m):
    masks = list(orbital_masks(m))
    assert len(masks) == len(set(masks)) == 2**m - 2


def test_distinct_orbital_graphs_count():
    G = CATALOGUE["pgl_2_7_d21"]()
    m = len(orbits_on_2subsets(G))
    assert len(set(orbital_graphs(G))) == 2**m - 2


def test_complement_examples():
    assert complement(complete_graph(6)) == null_graph(6)
    t5 = complement(petersen())
    assert degree_of(t5) == 6


@given(random_graphs(max_n=14))
def test_complement_is_involution(g):
    assert complement(complement(g)) == g


def test_degree_of():
    assert degree_of(hamming(2, 3).graph) == 4
    assert degree_of(petersen()) == 3
    assert degree_of(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])) == IRREGULAR


def test_isomorphism_examples():
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    kneser = Graph.from_adjacency(10, lambda i, j: not set(pairs[i]) & set(pairs[j]))
    assert is_isomorphic(petersen(), kneser)
    assert not is_isomorphic(petersen(), complement(petersen()))
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(cycle_graph(6), two_triangles)


def test_isomorphism_mapping_is_valid():
    g1 = petersen()
    perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4]
    g2 = g1.relabel(perm)
    mapping = find_isomorphism(g1, g2)
    assert mapping is not None
    assert {frozenset((mapping[a], mapping[b])) for a, b in g1.edges()} == \
        {frozenset(e) for e in g2.edges()}


@settings(max_examples=80)
@given(random_graphs(min_n=2, max_n=7), random_graphs(min_n=2, max_n=7))
def test_isomorphism_agrees_with_brute_force(g1, g2):
    assert is_isomorphic(g1, g2) == oracles.isomorphic(to_adj(g1), to_adj(g2))


@settings(max_examples=40)
@given(random_graphs(min_n=2, max_n=9))
def test_isomorphism_reflexive_under_relabelling(g):
    perm = list(reversed(range(g.n)))
    assert is_isomorphic(g, g.relabel(perm))
    assert is_isomorphic(g.relabel(perm), g)


def test_corpus_graphs_are_symmetric_and_loopless():
    for name, g in vt_corpus():
        for v in range(g.n):
            assert not g.has_edge(v, v), name
            assert all(g.has_edge(u, v) for u in g.neighbours(v)), name


def test_sym_group_is_2set_transitive_so_no_proper_mask():
    assert len(orbits_on_2subsets(symmetric(5))) == 1
