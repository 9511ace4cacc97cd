from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import petersen, random_graphs, to_adj, vt_corpus
from syncgroups.catalogue import CATALOGUE, cyclic, dihedral, symmetric
from syncgroups.colouring import (Colouring, ColouringError, CoverInstance, check_certificate,
                                  chromatic_le, chromatic_number, classwise_invariant_colouring,
                                  colouring_cover_instance, exact_cover_invariant, find_colouring_defect,
                                  is_non_synchronizing_graph, parse_colouring, verify_colouring)
from syncgroups.families import hamming, kneser_complement
from syncgroups.graphs import Graph, complete_graph, cycle_graph, null_graph
from syncgroups.perm import from_cycles


def test_hamming_23_three_colouring_is_coordinate_sum():
    fg = hamming(2, 3, certify=False)
    col = chromatic_le(fg.graph, 3, fg.group)
    assert col is not None and col.k == 3
    verify_colouring(fg.graph, col)
    canonical = Colouring.from_labels([sum(w) % 3 for w in fg.labels])
    assert find_colouring_defect(fg.graph, canonical) is None


def test_petersen_chromatic_examples():
    assert chromatic_le(petersen(), 2) is None
    col = chromatic_le(petersen(), 3)
    assert col is not None and find_colouring_defect(petersen(), col) is None
    assert chromatic_number(petersen())[0] == 3 == oracles.chromatic_number(to_adj(petersen()))


def test_chromatic_le_edge_cases():
    assert chromatic_le(Graph.from_edges(0, []), 0) == Colouring(())
    assert chromatic_le(null_graph(3), 0) is None
    assert chromatic_le(null_graph(3), 1).k == 1
    with pytest.raises(ValueError):
        chromatic_le(petersen(), -1)


def test_is_non_synchronizing_examples():
    fg = hamming(2, 3, certify=False)
    res = is_non_synchronizing_graph(fg.graph, fg.group)
    assert res.non_synchronizing and res.omega == 3 and res.colouring.k == 3
    assert check_certificate(fg.graph, res.clique, res.colouring) is None
    pet = is_non_synchronizing_graph(petersen())
    assert not pet.non_synchronizing and pet.omega == 2
    assert not is_non_synchronizing_graph(complete_graph(5)).non_synchronizing
    assert not is_non_synchronizing_graph(null_graph(5)).non_synchronizing


def test_check_certificate_rejects_bad_pairs():
    g = cycle_graph(6)
    good = Colouring.from_classes([[0, 2, 4], [1, 3, 5]])
    assert check_certificate(g, (0, 1), good) is None
    assert "pairwise adjacent" in check_certificate(g, (0, 2), good)
    assert "edge {1, 2}" in check_certificate(g, (0, 1), Colouring.from_classes([[0, 1, 3], [2, 4, 5]]))
    three = Colouring.from_classes([[0, 2], [1, 3], [4], [5]])
    assert "4 classes" in check_certificate(g, (0, 1), three)
    assert check_certificate(complete_graph(3), (0, 1, 2), Colouring.from_classes([[0], [1], [2]]))


def test_colouring_lines_round_trip():
    col = Colouring.from_classes([[4, 1], [0, 3], [2]])
    assert col.lines() == ["class 1: 1 4", "class 2: 2 5", "class 3: 3"]
    assert parse_colouring(col.lines()) == col
    with pytest.raises(ColouringError):
        parse_colouring(["klass 1: 1 2"])


def test_defect_reports_missing_and_repeated_vertices():
    g = cycle_graph(4)
    assert "appears in 0 classes" in find_colouring_defect(g, Colouring.from_classes([[0, 2], [1]]))
    assert "appears in 2 classes" in find_colouring_defect(g, Colouring.from_classes([[0, 2], [1, 3, 0]]))


@settings(max_examples=60)
@given(random_graphs(max_n=12), st.integers(1, 6))
def test_chromatic_le_matches_brute_force(g, k):
    col = chromatic_le(g, k)
    assert (col is not None) == oracles.colourable(to_adj(g), k)
    if col is not None:
        assert col.k <= k and find_colouring_defect(g, col) is None


def _corpus_group(name):
    key = name.split("/")[0]
    if key in CATALOGUE:
        return CATALOGUE[key]()
    if key.endswith("-orbital"):
        n = int(key[1:].split("-")[0])
        return cyclic(n) if key[0] == "C" else dihedral(n)
    return None


def test_symmetry_does_not_change_colourability():
    checked = 0
    for name, g in vt_corpus():
        G = _corpus_group(name)
        if G is None or g.n > 21:
            continue
        omega = oracles.clique_number(to_adj(g))
        assert (chromatic_le(g, omega, G) is None) == (chromatic_le(g, omega) is None), name
        checked += 1
    assert checked >= 30


def test_vt_certificates_have_equal_classes():
    seen = 0
    for name, g in vt_corpus():
        G = _corpus_group(name)
        if G is None or g.is_null() or g.is_complete():
            continue
        res = is_non_synchronizing_graph(g, G)
        if not res.non_synchronizing:
            continue
        seen += 1
        alpha = g.n // res.omega
        assert res.colouring.k == res.omega, name
        assert all(len(c) == alpha for c in res.colouring.classes), name
        for c in res.colouring.classes:
            assert len(set(c) & set(res.clique)) == 1, name
    assert seen >= 10


# -- exact cover ------------------------------------------------------------------------


def test_cover_perfect_matching_trivial_h():
    seeds = (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5}))
    parts = exact_cover_invariant(CoverInstance(6, seeds, symmetric(6).generators))
    assert parts is not None and len(parts) == 3
    assert sorted(x for p in parts for x in p) == list(range(6))
    assert all(len(p) == 2 for p in parts)


def test_cover_one_factorization_of_k6():
    fg = kneser_complement(6, 2, certify=False)
    pairs = list(fg.labels)
    matching = frozenset(pairs.index(e) for e in ((0, 1), (2, 3), (4, 5)))
    parts = exact_cover_invariant(CoverInstance(15, (matching,), fg.group.generators))
    assert parts is not None and len(parts) == 5
    for p in parts:
        assert sorted(x for v in p for x in pairs[v]) == list(range(6))


def test_cover_infeasible_instance():
    seeds = (frozenset({0, 1}), frozenset({0, 2}), frozenset({0, 3}))
    assert exact_cover_invariant(CoverInstance(4, seeds)) is None
    assert exact_cover_invariant(CoverInstance(4, seeds), method="wclique") is None


def test_cover_instance_validation():
    with pytest.raises(ValueError):
        CoverInstance(3, (frozenset({3}),))
    with pytest.raises(ValueError):
        CoverInstance(4, (frozenset({0}),), cyclic(4).generators, (from_cycles(4, [(0, 1)]),))
    with pytest.raises(ValueError):
        exact_cover_invariant(CoverInstance(2, (frozenset({0, 1}),)), method="dlx")


def _random_cover(seed: int):
    rng = random.Random(seed)
    n = rng.randint(4, 9)
    sets = sorted({frozenset(rng.sample(range(n), rng.randint(1, 3))) for _ in range(rng.randint(4, 16))},
                  key=lambda s: tuple(sorted(s)))
    return n, sets


@pytest.mark.parametrize("seed", range(40))
def test_trivial_h_cover_matches_brute_force(seed):
    n, sets = _random_cover(seed)
    covers = oracles.exact_covers(n, sets)
    for method in ("direct", "wclique"):
        parts = exact_cover_invariant(CoverInstance(n, tuple(sets)), method=method)
        assert (parts is not None) == bool(covers)
        if parts is not None:
            idx = tuple(sorted(sets.index(frozenset(p)) for p in parts))
            assert idx in covers


def test_h_invariant_cover_is_invariant():
    # Sym(6) acting on the 15 pairs; H = <(1 2 3 4 5)> on the points
    fg = kneser_complement(6, 2, certify=False)
    pairs = list(fg.labels)
    rot = from_cycles(6, [(0, 1, 2, 3, 4)])
    h = tuple(pairs.index(tuple(sorted((rot[a], rot[b])))) for a, b in pairs)
    inst = colouring_cover_instance(fg.graph, fg.group, (h,))
    parts = exact_cover_invariant(inst)
    assert parts is not None
    pset = {frozenset(p) for p in parts}
    assert {frozenset(h[x] for x in p) for p in pset} == pset
    for method in ("direct", "wclique"):
        assert exact_cover_invariant(inst, method=method) == parts


@pytest.mark.parametrize("seed", range(10))
def test_cover_methods_agree_under_h(seed):
    rng = random.Random(seed)
    G = symmetric(6)
    k = rng.choice([2, 3])
    seeds = tuple(frozenset(c) for c in rng.sample(list(combinations(range(6), k)), 2))
    H = (from_cycles(6, [tuple(rng.sample(range(6), 3))]),)
    inst = CoverInstance(6, seeds, G.generators, H)
    assert exact_cover_invariant(inst) == exact_cover_invariant(inst, method="wclique")


# -- class-wise invariant colourings ---------------------------------------------------------------


def test_classwise_examples():
    rot2 = (2, 3, 4, 5, 0, 1)
    col = classwise_invariant_colouring(cycle_graph(6), [rot2], 2)
    assert col == Colouring.from_classes([[0, 2, 4], [1, 3, 5]])
    rot = (1, 2, 3, 4, 0)
    for k in range(1, 6):
        assert classwise_invariant_colouring(cycle_graph(5), [rot], k) is None
    with pytest.raises(ValueError):
        classwise_invariant_colouring(cycle_graph(5), [(1, 0, 2, 3, 4)], 3)


@settings(max_examples=40)
@given(random_graphs(max_n=10), st.integers(1, 5))
def test_classwise_trivial_k_is_chromatic_le(g, k):
    assert (classwise_invariant_colouring(g, [], k) is None) == (chromatic_le(g, k) is None)


def test_classwise_classes_are_unions_of_orbits():
    fg = hamming(2, 4, certify=False)
    words = list(fg.labels)
    diag = tuple(words.index(((a + 1) % 4, (b + 1) % 4)) for a, b in words)
    col = classwise_invariant_colouring(fg.graph, [diag], 4)
    assert col is not None and col.k == 4
    for c in col.classes:
        assert {diag[v] for v in c} == set(c)
