from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, petersen, random_graphs
from syncgroups.catalogue import CATALOGUE
from syncgroups.colouring import CoverInstance
from syncgroups.formats import (FormatError, format_cover, format_dimacs, format_group, format_wclique,
                                parse_cover, parse_dimacs, parse_group, parse_wclique)
from syncgroups.graphs import Graph
from syncgroups.search import WeightedGraph


@pytest.mark.parametrize("key", sorted(CATALOGUE))
def test_group_round_trip(key):
    G = CATALOGUE[key]()
    H = parse_group(format_group(G))
    assert H.degree == G.degree and H.generators == G.generators
    assert H.name == G.name and H.onss_type == G.onss_type and H.affine_params == G.affine_params


def test_fixture_files_parse_to_catalogue_groups():
    for key in sorted(CATALOGUE):
        G = parse_group(FIXTURES / f"{key}.grp")
        assert G.generators == CATALOGUE[key]().generators


def test_group_file_is_one_based():
    G = parse_group("degree 3\nperm 2 3 1\n")
    assert G.generators == ((1, 2, 0),)
    assert format_group(G) == "degree 3\nperm 2 3 1\n"


@pytest.mark.parametrize("text,line", [
    ("perm 1 2\n", 1),
    ("degree 3\nperm 1 2\n", 2),
    ("degree 3\n\nperm 1 1 2\n", 3),
    ("degree 3\nperm 1 x 2\n", 2),
    ("degree 3\ntype sporadic\n", 2),
    ("degree 3\nfoo 1\n", 2),
    ("degree 3\ndegree 3\n", 2),
])
def test_group_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_group(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_group_missing_degree():
    with pytest.raises(FormatError):
        parse_group("# only a comment\n")


@settings(max_examples=60)
@given(random_graphs(min_n=1, max_n=14))
def test_dimacs_round_trip(g):
    text = format_dimacs(g)
    assert parse_dimacs(text) == g
    assert format_dimacs(parse_dimacs(text)) == text


def test_dimacs_petersen_fixture():
    g = parse_dimacs(FIXTURES / "petersen.dimacs")
    assert g.n == 10 and g.num_edges == 15


@pytest.mark.parametrize("text,line", [
    ("e 1 2\n", 1),
    ("p edge 3 1\ne 1 1\n", 2),
    ("p edge 3 1\ne 1 4\n", 2),
    ("c ok\np edge 3 1\ne 1\n", 3),
    ("p edge 3 1\nx 1 2\n", 2),
    ("p edge 3 1\np edge 3 1\n", 2),
    ("p graph 3 1\n", 1),
])
def test_dimacs_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_dimacs_edge_count_mismatch():
    with pytest.raises(FormatError, match="announces 2 edges"):
        parse_dimacs("p edge 3 2\ne 1 2\n")


@settings(max_examples=40)
@given(random_graphs(min_n=1, max_n=10), st.integers(1, 3), st.data())
def test_wclique_round_trip(g, d, data):
    weights = tuple(tuple(data.draw(st.lists(st.integers(0, 3), min_size=d, max_size=d)))
                    for _ in range(g.n))
    weights = tuple(w if any(w) else (1,) + w[1:] for w in weights)
    target = tuple(data.draw(st.lists(st.integers(0, 5), min_size=d, max_size=d)))
    wg = WeightedGraph(g, weights)
    text = format_wclique(wg, target)
    wg2, t2 = parse_wclique(text)
    assert wg2.graph == g and wg2.weights == weights and t2 == target


def test_wclique_fixture_and_errors():
    wg, target = parse_wclique(FIXTURES / "cover_instance.wcl")
    assert wg.graph.n == 15 and target == (1,) * 15
    with pytest.raises(FormatError, match="missing target"):
        parse_wclique("p wclique 1 1\nw 1 1\n")
    with pytest.raises(FormatError) as exc:
        parse_wclique("p wclique 2 1\nw 1 1\nw 1 1\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError, match="weight line"):
        parse_wclique("p wclique 1 2\nw 1 1\n")


def test_cover_round_trip_and_fixture():
    inst = parse_cover(FIXTURES / "k6_matchings.cover")
    assert inst.n == 15 and len(inst.seeds) == 1 and len(inst.G) == 2
    assert parse_cover(format_cover(inst)) == inst
    inst2 = CoverInstance(4, (frozenset({0, 1}),), ((1, 0, 3, 2),), ((1, 0, 3, 2),))
    assert parse_cover(format_cover(inst2)) == inst2


@pytest.mark.parametrize("text,line", [
    ("s 1 2\n", 1),
    ("p cover 3\ns 4\n", 2),
    ("p cover 3\ng 1 2\n", 2),
    ("p cover 3\nq 1\n", 2),
])
def test_cover_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_cover(text)
    assert exc.value.line == line


def test_cover_rejects_h_outside_g():
    with pytest.raises(FormatError, match="subgroup"):
        parse_cover("p cover 3\ns 1\ng 2 3 1\nh 2 1 3\n")


def test_graph_round_trip_is_stable_for_petersen():
    text = format_dimacs(petersen(), comments=["petersen"])
    assert text.startswith("c petersen\np edge 10 15\ne 1 ")
    assert isinstance(parse_dimacs(text), Graph)
