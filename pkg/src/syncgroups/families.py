"""The combinatorial non-synchronizing graph families: Hamming graphs, Kneser
complements, Johnson graphs at distance one, and partition graphs.

Vertices are numbered in lexicographic order of their labels.  Labels are
0-based tuples; sidecar files print them 1-based.  With ``certify=True``
each constructor attaches a clique and a colouring with the same number of
classes and checks both, so the graph is certified to have ``chi = omega``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, factorial
from typing import Callable, Sequence

from .catalogue import induced_action, symmetric
from .colouring import (Colouring, CoverInstance, check_certificate, exact_cover_invariant,
                        partition_into_cocliques)
from .graphs import Graph
from .perm import GroupSpec, Perm, perm_from_map
from .search import Budget

MAX_VERTICES = 100_000


class FamilyError(ValueError):
    pass


class CertificateError(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class FamilyGraph:
    graph: Graph
    family: str
    params: tuple[int, ...]
    expected_omega: int
    labels: tuple
    group: GroupSpec | None = None
    clique: tuple[int, ...] | None = None
    colouring: Colouring | None = None
    certified: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def name(self) -> str:
        return f"{self.family}({', '.join(map(str, self.params))})"

    def label_lines(self) -> list[str]:
        return [f"v {i + 1} {format_label(lab)}" for i, lab in enumerate(self.labels)]


def format_label(lab) -> str:
    """1-based text form of a vertex label (nested tuples become nested braces)."""
    if isinstance(lab, tuple) and lab and isinstance(lab[0], tuple):
        return "{" + ",".join(format_label(x) for x in lab) + "}"
    if isinstance(lab, tuple):
        return "(" + ",".join(str(x + 1) for x in lab) + ")"
    return str(lab)


def _guard(count: int) -> None:
    if count > MAX_VERTICES:
        raise FamilyError(f"{count} vertices exceeds the limit of {MAX_VERTICES}")


def _graph(labels: Sequence, adjacent: Callable) -> Graph:
    return Graph.from_adjacency(len(labels), lambda a, b: adjacent(labels[a], labels[b]))


def certify(fg: FamilyGraph) -> FamilyGraph:
    """Check the attached clique and colouring; return ``fg`` marked certified."""
    if fg.clique is None or fg.colouring is None:
        raise CertificateError(f"{fg.name}: no certificate attached")
    why = check_certificate(fg.graph, fg.clique, fg.colouring)
    if why is not None:
        raise CertificateError(f"{fg.name}: {why}")
    if len(fg.clique) != fg.expected_omega:
        raise CertificateError(f"{fg.name}: clique size {len(fg.clique)} != {fg.expected_omega}")
    return FamilyGraph(fg.graph, fg.family, fg.params, fg.expected_omega, fg.labels, fg.group,
                       fg.clique, fg.colouring, True, fg.notes)


def _cover_colouring(n: int, seeds, G: GroupSpec, budget: Budget | None) -> Colouring | None:
    parts = exact_cover_invariant(CoverInstance(n, tuple(frozenset(s) for s in seeds), G.generators),
                                  budget=budget)
    return None if parts is None else Colouring.from_classes(parts)


def _finish(fg: FamilyGraph, certify_flag: bool) -> FamilyGraph:
    if not certify_flag:
        return fg
    if fg.colouring is None:
        raise CertificateError(f"{fg.name}: no colouring found")
    return certify(fg)


# -- Hamming graphs -------------------------------------------------------------------------------


def hamming(d: int, m: int, certify: bool = True) -> FamilyGraph:
    """H(d, m): words of length d over m letters, adjacent iff they differ in one place."""
    if d < 2 or m < 2:
        raise FamilyError("hamming needs d > 1 and m > 1")
    _guard(m**d)
    words = list(product(range(m), repeat=d))
    graph = _graph(words, lambda a, b: sum(x != y for x, y in zip(a, b)) == 1)
    gens: list[Perm] = []
    for sigma in ((1, 0) + tuple(range(2, m)), tuple(range(1, m)) + (0,)):
        gens.append(perm_from_map(words, lambda w, s=sigma: (s[w[0]],) + w[1:]))
    for pi in ((1, 0) + tuple(range(2, d)), tuple(range(1, d)) + (0,)):
        gens.append(perm_from_map(words, lambda w, p=pi: tuple(w[p[i]] for i in range(d))))
    G = GroupSpec(len(words), tuple(gens), name=f"Sym({m}) wr Sym({d})")
    clique = tuple(words.index((a,) + (0,) * (d - 1)) for a in range(m))
    col = Colouring.from_labels([sum(w) % m for w in words])
    fg = FamilyGraph(graph, "hamming", (d, m), m, tuple(words), G, clique, col)
    return _finish(fg, certify)


# -- Kneser complements -------------------------------------------------------------------------------


def _sym_on(objects: Sequence, n: int, image: Callable[[Perm, object], object], name: str) -> GroupSpec:
    return induced_action(symmetric(n), objects, image, name=name)


def _set_image(g: Perm, s: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(g[x] for x in s))


def kneser_complement(n: int, k: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """k-subsets of an n-set, adjacent iff they meet."""
    if not 1 < k < n:
        raise FamilyError("kneser_complement needs 1 < k < n")
    if certify and n % k:
        raise FamilyError(f"kneser_complement({n}, {k}): condition 'k divides n' violated "
                          "(the colouring comes from a Baranyai resolution)")
    _guard(comb(n, k))
    subsets = list(combinations(range(n), k))
    graph = _graph(subsets, lambda a, b: bool(set(a) & set(b)))
    G = _sym_on(subsets, n, _set_image, f"Sym({n}) on {k}-sets")
    clique = tuple(i for i, s in enumerate(subsets) if 0 in s)
    fg = FamilyGraph(graph, "kneser_complement", (n, k), comb(n - 1, k - 1), tuple(subsets), G, clique)
    if certify:
        index = {s: i for i, s in enumerate(subsets)}
        parallel = [index[tuple(range(i, i + k))] for i in range(0, n, k)]
        col = _cover_colouring(len(subsets), [parallel], G, budget)
        fg = FamilyGraph(graph, fg.family, fg.params, fg.expected_omega, fg.labels, G, clique, col,
                         notes=("colour classes are the parallel classes of a Baranyai factorization",))
    return _finish(fg, certify)


# -- Johnson graphs at distance one -------------------------------------------------------------------


def _affine_plane_triples() -> list[tuple[int, ...]]:
    """The 12 lines of AG(2, 3) on points 0..8 (point 3x + y is (x, y))."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for a, b in combinations(pts, 2):
        c = ((-a[0] - b[0]) % 3, (-a[1] - b[1]) % 3)
        lines.add(tuple(sorted(3 * p[0] + p[1] for p in (a, b, c))))
    return sorted(lines)


def johnson_distance_one(n: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """3-subsets of an n-set, adjacent iff they share exactly two points."""
    if certify and (n < 9 or n % 6 not in (1, 3)):
        raise FamilyError("johnson_distance_one is certified only for n >= 9 with n = 1 or 3 mod 6, "
                          "where Steiner triple systems exist")
    if certify and n != 9:
        raise FamilyError("certificate search for johnson_distance_one is supported for n = 9 only; "
                          "use certify=False for larger n")
    if n < 4:
        raise FamilyError("johnson_distance_one needs n >= 4")
    _guard(comb(n, 3))
    triples = list(combinations(range(n), 3))
    graph = _graph(triples, lambda a, b: len(set(a) & set(b)) == 2)
    G = _sym_on(triples, n, _set_image, f"Sym({n}) on 3-sets")
    clique = tuple(i for i, s in enumerate(triples) if s[0] == 0 and s[1] == 1)
    col = None
    if certify:
        index = {s: i for i, s in enumerate(triples)}
        col = _cover_colouring(len(triples), [[index[b] for b in _affine_plane_triples()]], G, budget)
    fg = FamilyGraph(graph, "johnson_distance_one", (n,), n - 2, tuple(triples), G, clique, col,
                     notes=("colour classes are pairwise disjoint Steiner triple systems",))
    return _finish(fg, certify)


# -- partition graphs -----------------------------------------------------------------------------


def set_partitions(n: int, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """Partitions of ``range(n)`` into k-subsets, lexicographic as sorted tuples of parts."""
    out = []

    def rec(rest: tuple[int, ...], parts: list[tuple[int, ...]]):
        if not rest:
            out.append(tuple(parts))
            return
        first = rest[0]
        for others in combinations(rest[1:], k - 1):
            part = (first,) + others
            rec(tuple(x for x in rest if x not in part), parts + [part])

    rec(tuple(range(n)), [])
    return out


def _partition_image(g: Perm, P) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(g[x] for x in part)) for part in P))


def partition_graph(n: int, k: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """Partitions of an n-set into k-subsets, adjacent iff they have no part in common."""
    if k < 2 or n % k or n // k <= 2:
        raise FamilyError("partition_graph needs k > 1, k dividing n and n/k > 2")
    count = factorial(n) // (factorial(k) ** (n // k) * factorial(n // k))
    _guard(count)
    parts = set_partitions(n, k)
    partsets = [frozenset(P) for P in parts]
    graph = Graph.from_adjacency(len(parts), lambda a, b: not partsets[a] & partsets[b])
    G = _sym_on(parts, n, _partition_image, f"Sym({n}) on partitions into {k}-sets")
    # colour class c_A: the part containing point 0 is {0} + A
    col = Colouring.from_labels([P[0] for P in parts])
    clique = None
    if certify:
        # a clique is a set of partitions using every k-subset once (Baranyai)
        subsets = list(combinations(range(n), k))
        index = {s: i for i, s in enumerate(subsets)}
        Gk = _sym_on(subsets, n, _set_image, "")
        seed = [index[p] for p in parts[0]]
        cover = exact_cover_invariant(CoverInstance(len(subsets), (frozenset(seed),), Gk.generators),
                                      budget=budget)
        if cover is not None:
            pos = {P: i for i, P in enumerate(parts)}
            clique = tuple(sorted(pos[tuple(sorted(subsets[i] for i in c))] for c in cover))
    fg = FamilyGraph(graph, "partition_graph", (n, k), comb(n - 1, k - 1), tuple(parts), G, clique, col,
                     notes=("colour class of a partition is the part containing point 1",))
    if certify and clique is None:
        raise CertificateError(f"{fg.name}: no clique of the expected size found")
    return _finish(fg, certify)


FAMILIES: dict[str, Callable[..., FamilyGraph]] = {
    "hamming": hamming,
    "kneser_complement": kneser_complement,
    "johnson_distance_one": johnson_distance_one,
    "partition_graph": partition_graph,
}


def colour_by_partition(fg: FamilyGraph, budget: Budget | None = None) -> Colouring | None:
    """Colouring by maximum cocliques found with the attached group (fallback certificate)."""
    size = fg.graph.n // fg.expected_omega
    return partition_into_cocliques(fg.graph, size, fg.group, budget=budget)
