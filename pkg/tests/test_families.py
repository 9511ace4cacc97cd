from __future__ import annotations

from math import comb, factorial

import pytest

import oracles
from conftest import to_adj
from syncgroups.colouring import check_certificate, is_non_synchronizing_graph
from syncgroups.families import (CertificateError, FamilyError, certify, hamming, johnson_distance_one,
                                 kneser_complement, partition_graph, set_partitions)
from syncgroups.graphs import cycle_graph, degree_of, is_invariant, is_isomorphic
from syncgroups.search import max_clique


@pytest.mark.parametrize("d,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (2, 5), (4, 3)])
def test_hamming_counts_and_certificate(d, m):
    fg = hamming(d, m)
    assert fg.certified and fg.graph.n == m**d
    assert degree_of(fg.graph) == d * (m - 1)
    assert fg.colouring.k == m
    assert check_certificate(fg.graph, fg.clique, fg.colouring) is None
    assert is_invariant(fg.graph, fg.group)
    assert max_clique(fg.graph, fg.group)[0] == m


def test_hamming_22_is_c4():
    assert is_isomorphic(hamming(2, 2).graph, cycle_graph(4))


def test_hamming_small_omega_matches_oracle():
    for d, m in [(2, 3), (3, 2), (2, 4)]:
        fg = hamming(d, m)
        adj = to_adj(fg.graph)
        assert oracles.clique_number(adj) == m == oracles.chromatic_number(adj)


def test_hamming_rejects_bad_parameters():
    with pytest.raises(FamilyError):
        hamming(1, 3)
    with pytest.raises(FamilyError):
        hamming(2, 1)
    with pytest.raises(FamilyError):
        hamming(2, 400)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 2), (6, 3), (8, 2), (9, 3)])
def test_kneser_complement(n, k):
    fg = kneser_complement(n, k)
    assert fg.graph.n == comb(n, k)
    assert fg.expected_omega == comb(n - 1, k - 1) == len(fg.clique)
    assert fg.colouring.k == fg.expected_omega
    assert check_certificate(fg.graph, fg.clique, fg.colouring) is None
    # classes are parallel classes: each partitions the point set
    for c in fg.colouring.classes:
        assert sorted(x for v in c for x in fg.labels[v]) == list(range(n))


def test_kneser_complement_small_matches_oracle():
    for n, k in [(4, 2), (6, 2), (6, 3)]:
        fg = kneser_complement(n, k)
        adj = to_adj(fg.graph)
        assert oracles.clique_number(adj) == fg.expected_omega
    assert oracles.chromatic_number(to_adj(kneser_complement(4, 2).graph)) == 3


def test_kneser_complement_errors():
    with pytest.raises(FamilyError, match="k divides n"):
        kneser_complement(5, 2)
    with pytest.raises(FamilyError):
        kneser_complement(4, 4)
    assert kneser_complement(5, 2, certify=False).graph.n == 10


def test_johnson_distance_one_9():
    fg = johnson_distance_one(9)
    assert fg.graph.n == 84 and fg.expected_omega == 7
    assert max_clique(fg.graph, fg.group)[0] == 7
    assert fg.colouring.k == 7
    for c in fg.colouring.classes:
        # each class is a Steiner triple system: every pair of points in exactly one triple
        pairs = sorted(p for v in c for p in [(a, b) for i, a in enumerate(fg.labels[v])
                                              for b in fg.labels[v][i + 1:]])
        assert len(pairs) == len(set(pairs)) == 36


def test_johnson_clique_through_a_pair_is_accepted():
    fg = johnson_distance_one(9)
    clique = [i for i, t in enumerate(fg.labels) if t[:2] == (0, 1)]
    assert len(clique) == 7 and fg.graph.is_clique(clique)
    assert check_certificate(fg.graph, clique, fg.colouring) is None


def test_johnson_errors():
    with pytest.raises(FamilyError, match="Steiner"):
        johnson_distance_one(8)
    with pytest.raises(FamilyError):
        johnson_distance_one(13)
    assert johnson_distance_one(13, certify=False).graph.n == comb(13, 3)


@pytest.mark.parametrize("n,k", [(6, 2), (8, 2), (9, 3)])
def test_partition_graph(n, k):
    fg = partition_graph(n, k)
    assert fg.graph.n == factorial(n) // (factorial(k) ** (n // k) * factorial(n // k))
    assert fg.expected_omega == comb(n - 1, k - 1) == fg.colouring.k
    assert check_certificate(fg.graph, fg.clique, fg.colouring) is None
    # Cameron classes: same part through point 0
    for c in fg.colouring.classes:
        assert len({fg.labels[v][0] for v in c}) == 1


def test_partition_graph_6_2_matches_oracle():
    fg = partition_graph(6, 2)
    adj = to_adj(fg.graph)
    assert oracles.clique_number(adj) == 5 == oracles.chromatic_number(adj)


def test_partition_graph_errors():
    with pytest.raises(FamilyError):
        partition_graph(4, 2)
    with pytest.raises(FamilyError):
        partition_graph(7, 2)


def test_set_partitions_count():
    assert len(set_partitions(6, 2)) == 15
    assert len(set_partitions(6, 3)) == 10
    assert len(set(set_partitions(8, 2))) == 105


def test_certify_rejects_tampered_certificate():
    fg = hamming(2, 3)
    bad = type(fg)(fg.graph, fg.family, fg.params, 4, fg.labels, fg.group, fg.clique, fg.colouring)
    with pytest.raises(CertificateError):
        certify(bad)
    none = type(fg)(fg.graph, fg.family, fg.params, 3, fg.labels)
    with pytest.raises(CertificateError):
        certify(none)


@pytest.mark.parametrize("build", [lambda: hamming(2, 4), lambda: kneser_complement(6, 2),
                                   lambda: partition_graph(6, 2)])
def test_family_graphs_are_non_synchronizing(build):
    fg = build()
    res = is_non_synchronizing_graph(fg.graph, fg.group)
    assert res.non_synchronizing and res.omega == fg.expected_omega


def test_label_lines():
    assert hamming(2, 2).label_lines()[:2] == ["v 1 (1,1)", "v 2 (1,2)"]
    assert partition_graph(6, 2).label_lines()[0] == "v 1 {(1,2),(3,4),(5,6)}"
