from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from syncgroups.catalogue import CATALOGUE, cyclic, dihedral, pgl2_natural, symmetric
from syncgroups.perm import (GroupError, GroupSpec, IndexTooLarge, apply, coset_action, enumerate_elements,
                             from_cycles, group_order, identity, inverse, is_2set_transitive,
                             is_permutation_isomorphic_by, is_primitive, mul, orbit, orbits_on_2subsets,
                             perm_order, stabilizer)


def test_apply_identity_and_cycle():
    assert apply(identity(5), 2) == 2
    g = from_cycles(3, [(0, 1, 2)])
    assert g == (1, 2, 0)
    assert apply(g, 0) == 1


def test_apply_out_of_range():
    with pytest.raises(GroupError):
        apply(identity(3), 3)


@given(st.permutations(range(7)))
def test_inverse_law(p):
    g = tuple(p)
    assert mul(g, inverse(g)) == identity(7)
    assert all(apply(inverse(g), apply(g, x)) == x for x in range(7))


def test_composition_is_left_to_right():
    g = from_cycles(3, [(0, 1)])
    h = from_cycles(3, [(1, 2)])
    # x^(gh) = (x^g)^h
    assert all(mul(g, h)[x] == h[g[x]] for x in range(3))


def test_group_orders():
    assert group_order(GroupSpec(5, (from_cycles(5, [(0, 1)]), from_cycles(5, [(0, 1, 2, 3, 4)])))) == 120
    assert group_order(GroupSpec(3, (from_cycles(3, [(0, 1, 2)]),))) == 3
    G = CATALOGUE["pgl_2_7_d21"]()
    assert G.order() == 336 == len(oracles.closure(G.generators, 21))


CATALOGUE_ORDERS = {
    # brute-force closure counts, frozen
    "c7": 7, "sym5_pairs": 120, "agl_2_3": 432, "affine_3_2_order36": 36, "pgl_2_7_d21": 336,
    "psl_3_3_2_d52": 11232, "pgl_2_11_d55": 1320, "sym8_d56": 40320, "pgl_2_13_d91": 2184,
    "psl_3_3_2_d117": 11232, "sym8_d120": 40320, "psp_4_3_d40": 25920, "psu_3_3_d63": 6048,
    "psu_3_3_2_d63": 12096, "sym6_pairs": 720, "sym7_pairs": 5040, "sym4_wr_sym2": 1152,
}


@pytest.mark.parametrize("key", sorted(CATALOGUE_ORDERS))
def test_catalogue_order_matches_enumeration(key):
    G = CATALOGUE[key]()
    assert G.order() == CATALOGUE_ORDERS[key]
    if G.order() <= 50_000:
        assert len(enumerate_elements(G)) == G.order()


def test_large_catalogue_orders():
    # too large to enumerate; known orders of PSL(3,4).D12, PSp(4,3):2 and Sym(9)
    assert CATALOGUE["psl_3_4_d12_d105"]().order() == 241920
    assert CATALOGUE["psp_4_3_2_d40"]().order() == 51840
    assert CATALOGUE["sym9_triples"]().order() == 362880


def test_pair_orbits_examples():
    assert len(orbits_on_2subsets(CATALOGUE["sym5_pairs"]())) == 2
    assert [len(o) for o in orbits_on_2subsets(cyclic(5))] == [5, 5]
    assert is_2set_transitive(symmetric(6))
    assert not is_2set_transitive(CATALOGUE["sym5_pairs"]())
    assert not is_2set_transitive(dihedral(5))


def test_pair_orbits_need_transitivity():
    with pytest.raises(GroupError):
        orbits_on_2subsets(GroupSpec(4, (from_cycles(4, [(0, 1)]),)))


@pytest.mark.parametrize("key", ["sym5_pairs", "pgl_2_7_d21", "affine_3_2_order36", "sym6_pairs"])
def test_pair_orbits_match_oracle(key):
    G = CATALOGUE[key]()
    ours = [frozenset(frozenset(p) for p in o) for o in orbits_on_2subsets(G)]
    theirs = oracles.pair_orbits(G.generators, G.degree)
    assert ours == theirs
    assert sum(len(o) for o in ours) == G.degree * (G.degree - 1) // 2


def test_primitivity_examples():
    assert not is_primitive(cyclic(4))
    assert is_primitive(CATALOGUE["sym5_pairs"]())
    assert is_primitive(cyclic(5))


TRANSITIVE_SMALL = [cyclic(n) for n in range(2, 13)] + [dihedral(n) for n in range(3, 13)] + [
    symmetric(4), CATALOGUE["sym5_pairs"](), CATALOGUE["agl_2_3"](), CATALOGUE["affine_3_2_order36"](),
    pgl2_natural(5), pgl2_natural(7), CATALOGUE["sym4_wr_sym2"](),
    # imprimitive wreath-like examples
    GroupSpec(6, (from_cycles(6, [(0, 1)]), from_cycles(6, [(0, 2, 4), (1, 3, 5)]))),
    GroupSpec(8, (from_cycles(8, [(0, 1, 2, 3)]), from_cycles(8, [(0, 4), (1, 5), (2, 6), (3, 7)]))),
]


@pytest.mark.parametrize("G", TRANSITIVE_SMALL, ids=lambda G: f"{G.name or 'G'}@{G.degree}")
def test_primitivity_agrees_with_block_search(G):
    assert is_primitive(G) == oracles.is_primitive(G.generators, G.degree)


@pytest.mark.parametrize("key", ["sym5_pairs", "pgl_2_7_d21", "agl_2_3", "sym6_pairs"])
def test_orbit_stabilizer(key):
    G = CATALOGUE[key]()
    for x in (0, G.degree - 1):
        assert len(orbit(G.generators, x)) * stabilizer(G, x).order() == G.order()


def test_stabilizer_examples():
    assert stabilizer(symmetric(4), 3).order() == 6
    assert stabilizer(cyclic(5), 0).order() == 1


def test_coset_action_point_stabilizer_sym4():
    S4 = symmetric(4)
    A = coset_action(S4, stabilizer(S4, 3).generators)
    assert A.degree == 4 and A.order() == 24


def test_coset_action_sym5_pairs():
    S5 = symmetric(5)
    # setwise stabilizer of {1, 2}; (1 2) and (3 4 5) alone generate only order 6
    H = [from_cycles(5, [(0, 1)]), from_cycles(5, [(2, 3, 4)]), from_cycles(5, [(2, 3)])]
    assert GroupSpec(5, tuple(H)).order() == 12
    A = coset_action(S5, H)
    assert A.degree == 10
    assert len(orbits_on_2subsets(A)) == 2


def test_coset_action_sylow2_of_pgl27():
    G = pgl2_natural(7)
    elems = enumerate_elements(G)
    a = next(g for g in elems if perm_order(g) == 8)
    b = next(g for g in elems if perm_order(g) == 2 and GroupSpec(8, (a, g)).order() == 16)
    A = coset_action(G, [a, b])
    assert A.degree == 336 // 16 == 21
    assert A.is_transitive()


def test_coset_action_rejects_non_subgroup_and_big_index():
    with pytest.raises(GroupError):
        coset_action(cyclic(4), [from_cycles(4, [(0, 1)])])
    with pytest.raises(IndexTooLarge):
        coset_action(symmetric(5), [identity(5)], max_index=100)


@pytest.mark.parametrize("key", ["sym5_pairs", "pgl_2_7_d21", "agl_2_3"])
def test_coset_action_of_point_stabilizer_is_equivalent(key):
    G = CATALOGUE[key]()
    A = coset_action(G, stabilizer(G, 0).generators)
    # coset H g <-> point 0^g; recover the bijection from the coset representatives
    bij = [None] * G.degree
    reps = _coset_reps(G, A)
    for i, r in enumerate(reps):
        bij[i] = r[0]
    assert sorted(bij) == list(range(G.degree))
    assert is_permutation_isomorphic_by(A, G, bij)


def _coset_reps(G, A):
    # walk A's Schreier tree from point 0 mirroring the walk in G
    reps = {0: identity(G.degree)}
    queue = [0]
    while queue:
        x = queue.pop(0)
        for gA, gG in zip(A.generators, G.generators):
            y = gA[x]
            if y not in reps:
                reps[y] = mul(reps[x], gG)
                queue.append(y)
    return [reps[i] for i in range(A.degree)]


def test_groupspec_validation():
    with pytest.raises(GroupError):
        GroupSpec(3, ((0, 1),))
    with pytest.raises(GroupError):
        GroupSpec(3, ((0, 0, 1),))
    with pytest.raises(GroupError):
        GroupSpec(9, (identity(9),), affine_params=(2, 3))
    with pytest.raises(GroupError):
        GroupSpec(3, (identity(3),), onss_type="sporadic")


@settings(max_examples=40)
@given(st.lists(st.permutations(range(6)), min_size=1, max_size=3))
def test_order_matches_closure(gens):
    G = GroupSpec(6, tuple(tuple(g) for g in gens))
    elems = oracles.closure(G.generators, 6)
    assert G.order() == len(elems)
    assert all(G.contains(g) for g in list(elems)[:50])


@settings(max_examples=40)
@given(st.lists(st.permutations(range(7)), min_size=1, max_size=2), st.permutations(range(7)))
def test_membership_matches_closure(gens, probe):
    G = GroupSpec(7, tuple(tuple(g) for g in gens))
    assert G.contains(tuple(probe)) == (tuple(probe) in oracles.closure(G.generators, 7))
