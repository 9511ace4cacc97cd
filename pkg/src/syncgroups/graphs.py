"""Simple undirected graphs with bitset adjacency, and generalized orbital graphs.

Row ``v`` of a :class:`Graph` is an int whose bit ``w`` is set iff ``{v, w}``
is an edge.  Vertices are ``0..n-1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import GroupSpec, Perm, orbits_on_2subsets


class GraphError(ValueError):
    pass


class IsomorphismBudgetExceeded(RuntimeError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise GraphError("row count does not match vertex count")
        for v, row in enumerate(self.rows):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            if row >> self.n:
                raise GraphError(f"row {v} has bits beyond n")
        for v, row in enumerate(self.rows):
            for w in bits(row):
                if not self.rows[w] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at {{{v}, {w}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for a, b in edges:
            if a == b:
                raise GraphError(f"loop at vertex {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, n: int, adjacent) -> "Graph":
        """Graph with ``{a, b}`` an edge iff ``adjacent(a, b)`` (called for a < b)."""
        return cls.from_edges(n, ((a, b) for a, b in combinations(range(n), 2) if adjacent(a, b)))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.rows):
            for w in bits(row >> (v + 1)):
                yield v, v + 1 + w

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_null(self) -> bool:
        return not any(self.rows)

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def is_clique(self, vertices: Sequence[int]) -> bool:
        return all(self.has_edge(a, b) for a, b in combinations(vertices, 2))

    def is_coclique(self, vertices: Sequence[int]) -> bool:
        return not any(self.has_edge(a, b) for a, b in combinations(vertices, 2))

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for a, b in self.edges():
            A[a, b] = A[b, a] = 1.0
        return A

    def is_automorphism(self, g: Perm) -> bool:
        rows = self.rows
        for a, b in self.edges():
            if not rows[g[a]] >> g[b] & 1:
                return False
        return True

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``mapping[v]``."""
        return Graph.from_edges(self.n, ((mapping[a], mapping[b]) for a, b in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(len(vertices), ((index[a], index[b]) for a, b in combinations(vertices, 2)
                                                 if self.has_edge(a, b)))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def null_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complement(graph: Graph) -> Graph:
    full = graph.full_mask
    return Graph(graph.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(graph.rows)))


IRREGULAR = "irregular"


def degree_of(graph: Graph) -> int | str:
    """Common vertex degree, or ``IRREGULAR``."""
    degs = set(graph.degrees)
    if len(degs) > 1:
        return IRREGULAR
    return degs.pop() if degs else 0


def is_invariant(graph: Graph, G: GroupSpec) -> bool:
    return all(graph.is_automorphism(g) for g in G.generators)


# -- generalized orbital graphs -------------------------------------------------


def generalized_orbital_graph(G: GroupSpec, mask: Iterable[int], orbits=None,
                              allow_null: bool = False) -> Graph:
    """Union of the selected pair-orbits of G (``mask`` holds orbit indices)."""
    if orbits is None:
        orbits = orbits_on_2subsets(G)
    mask = sorted(set(mask))
    if not mask and not allow_null:
        raise GraphError("empty orbital mask gives the null graph")
    for i in mask:
        if not 0 <= i < len(orbits):
            raise GraphError(f"orbit index {i} out of range (m = {len(orbits)})")
    rows = [0] * G.degree
    for i in mask:
        for a, b in orbits[i]:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
    return Graph(G.degree, tuple(rows))


def orbital_masks(m: int) -> Iterator[tuple[int, ...]]:
    """All non-empty proper subsets of ``range(m)``, as sorted tuples, by bitmask."""
    for code in range(1, (1 << m) - 1):
        yield tuple(i for i in range(m) if code >> i & 1)


# -- isomorphism ----------------------------------------------------------------


def spectrum(graph: Graph) -> np.ndarray:
    if graph.n == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(graph.adjacency_matrix())


def invariant_key(graph: Graph) -> tuple:
    """Cheap combinatorial isomorphism invariant: degrees and triangles per vertex."""
    rows = graph.rows
    tri = []
    for v in range(graph.n):
        t = 0
        for w in bits(rows[v]):
            t += (rows[v] & rows[w]).bit_count()
        tri.append(t // 2)
    return (graph.n, graph.num_edges, tuple(sorted(graph.degrees)), tuple(sorted(tri)))


def _refine(graph: Graph, colours: list[int]) -> tuple[list[int], tuple]:
    """Equitable refinement; returns new colours and a trace used for pruning.

    Colour names are assigned canonically from sorted signatures, so running
    the same refinement on two graphs gives comparable colourings.
    """
    rows = graph.rows
    n = graph.n
    trace = []
    while True:
        classes: dict[int, int] = {}
        for c in colours:
            classes[c] = classes.get(c, 0) + 1
        masks: dict[int, int] = {}
        for v, c in enumerate(colours):
            masks[c] = masks.get(c, 0) | (1 << v)
        ordered = sorted(masks)
        sigs = []
        for v in range(n):
            row = rows[v]
            sigs.append((colours[v], tuple((row & masks[c]).bit_count() for c in ordered)))
        names = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [names[s] for s in sigs]
        trace.append(tuple(sorted(Counter(sigs).items())))
        if len(names) == len(classes):
            return new, tuple(trace)
        colours = new


class _IsoSearch:
    def __init__(self, g1: Graph, g2: Graph, budget: int):
        self.g1, self.g2 = g1, g2
        self.budget = budget
        self.nodes = 0

    def run(self) -> list[int] | None:
        c1, t1 = _refine(self.g1, [0] * self.g1.n)
        c2, t2 = _refine(self.g2, [0] * self.g2.n)
        if t1 != t2 or sorted(c1) != sorted(c2):
            return None
        return self._search(c1, c2)

    def _search(self, c1: list[int], c2: list[int]) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise IsomorphismBudgetExceeded(f"isomorphism search exceeded {self.budget} nodes")
        n = self.g1.n
        counts: dict[int, int] = {}
        for c in c1:
            counts[c] = counts.get(c, 0) + 1
        nontrivial = [c for c, k in counts.items() if k > 1]
        if not nontrivial:
            pos = {c: v for v, c in enumerate(c2)}
            mapping = [pos[c1[v]] for v in range(n)]
            rows1, rows2 = self.g1.rows, self.g2.rows
            for a, b in self.g1.edges():
                if not rows2[mapping[a]] >> mapping[b] & 1:
                    return None
            return mapping
        cell = min(nontrivial, key=lambda c: (counts[c], c))
        v = c1.index(cell)
        top = max(c1) + 1
        ind1 = list(c1)
        ind1[v] = top
        r1, t1 = _refine(self.g1, ind1)
        for w in (u for u in range(n) if c2[u] == cell):
            ind2 = list(c2)
            ind2[w] = top
            r2, t2 = _refine(self.g2, ind2)
            if t1 != t2:
                continue
            found = self._search(r1, r2)
            if found is not None:
                return found
        return None


def find_isomorphism(g1: Graph, g2: Graph, budget: int = 10_000_000) -> list[int] | None:
    """A vertex bijection ``mapping`` with ``g2`` edges = images of ``g1`` edges, or None.

    Invariant screening first, then individualization-refinement backtracking.
    Raises :class:`IsomorphismBudgetExceeded` if the node budget runs out.
    """
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    if sorted(g1.degrees) != sorted(g2.degrees):
        return None
    if invariant_key(g1) != invariant_key(g2):
        return None
    if not np.allclose(spectrum(g1), spectrum(g2), atol=1e-6):
        return None
    return _IsoSearch(g1, g2, budget).run()


def is_isomorphic(g1: Graph, g2: Graph, budget: int = 10_000_000) -> bool:
    return find_isomorphism(g1, g2, budget) is not None
