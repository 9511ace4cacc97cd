"""Proper vertex colourings, invariant exact covers and class-wise invariant colourings.

A k-colouring is searched in one of two ways.  When an automorphism group
is given, it is transitive, and k times the independence number equals the
vertex count, every colour class must be a maximum coclique, so the search
partitions the vertex set into cocliques of that size (lazy Algorithm X that
always branches on the uncovered vertex with the fewest free non-neighbours).
The group is used at the root: only stabilizer-orbit representatives of the
cocliques through the first vertex are tried.  Otherwise a DSATUR backtrack
decides k-colourability exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, bits, complement, mask_of
from .perm import GroupSpec, Perm, StabChain, orbits, set_orbit
from .search import (Budget, CliqueWitness, SearchBudgetExceeded, WeightedGraph, _budget,
                     _check_group, _Symmetry, all_cliques_of_size, max_clique, parallel_search_driver,
                     vector_weighted_clique)


class ColouringError(ValueError):
    pass


class CandidateExplosion(SearchBudgetExceeded):
    pass


@dataclass(frozen=True)
class Colouring:
    """Colour classes, each a sorted tuple; classes ordered by least vertex."""

    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "Colouring":
        cl = [tuple(sorted(c)) for c in classes]
        cl = [c for c in cl if c]
        return cls(tuple(sorted(cl)))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Colouring":
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        return cls.from_classes(groups.values())

    @property
    def k(self) -> int:
        return len(self.classes)

    def labels(self, n: int) -> list[int]:
        out = [-1] * n
        for i, c in enumerate(self.classes):
            for v in c:
                out[v] = i
        return out

    def lines(self) -> list[str]:
        """``class <i>: <v1> <v2> ...`` with 1-based class and vertex numbers."""
        return [f"class {i + 1}: " + " ".join(str(v + 1) for v in c) for i, c in enumerate(self.classes)]

    def to_json(self) -> list[list[int]]:
        return [[v + 1 for v in c] for c in self.classes]


def find_colouring_defect(graph: Graph, col: Colouring) -> str | None:
    """Reason the colouring is not a proper colouring of ``graph``, or None."""
    seen = [0] * graph.n
    for c in col.classes:
        for v in c:
            if not 0 <= v < graph.n:
                return f"vertex {v + 1} out of range"
            seen[v] += 1
    for v, s in enumerate(seen):
        if s != 1:
            return f"vertex {v + 1} appears in {s} classes"
    for i, c in enumerate(col.classes):
        m = mask_of(c)
        for v in c:
            if graph.rows[v] & m:
                w = next(bits(graph.rows[v] & m))
                return f"edge {{{v + 1}, {w + 1}}} inside class {i + 1}"
    return None


def verify_colouring(graph: Graph, col: Colouring) -> Colouring:
    why = find_colouring_defect(graph, col)
    if why is not None:
        raise ColouringError(why)
    return col


def parse_colouring(lines: Iterable[str]) -> Colouring:
    """Inverse of :meth:`Colouring.lines` (blank lines and ``#`` comments skipped)."""
    classes = []
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.split() or head.split()[0] != "class":
            raise ColouringError(f"line {no}: expected 'class <i>: <vertices>'")
        try:
            classes.append([int(t) - 1 for t in rest.split()])
        except ValueError:
            raise ColouringError(f"line {no}: non-integer vertex") from None
    return Colouring.from_classes(classes)


# -- partition into equal cocliques -------------------------------------------------------


class PartitionProblem:
    """Partition the vertices into cocliques of exactly ``size`` vertices.

    Nodes are ``(uncovered mask, classes so far)``.  With ``sym`` the root
    branches only on orbit representatives (under the stabilizer of the root
    vertex) of the cocliques through the root vertex.

    ``cliques`` (bitmasks of maximum cliques, each of size ``n / size``) turn
    on clique-guided branching: in a vertex-transitive graph with
    omega * alpha = n every maximum coclique meets every maximum clique in
    exactly one vertex, so a coclique is grown from the unmet clique with the
    fewest candidates, and a clique with none left prunes the branch.
    """

    def __init__(self, graph: Graph, size: int, sym: GroupSpec | None = None,
                 budget: Budget | None = None, sym_depth: int = 3, cliques: Sequence[int] = ()):
        if size < 1 or graph.n % size:
            raise ValueError("class size must divide the vertex count")
        self.n = graph.n
        self.size = size
        self.comp = complement(graph).rows
        self.sym = _Symmetry(graph.n, sym.generators) if sym is not None else None
        self.sym_depth = sym_depth
        self.budget = budget
        self.cliques = tuple(cliques)

    def _pick(self, free: int) -> int:
        comp = self.comp
        best, best_count = -1, None
        for v in bits(free):
            c = (comp[v] & free).bit_count()
            if best_count is None or c < best_count:
                best, best_count = v, c
        return best if best_count >= self.size - 1 else -1

    def _cocliques(self, v: int, free: int, use_sym: bool) -> Iterator[tuple[int, ...]]:
        comp, size = self.comp, self.size
        b = _budget(self.budget)

        cliques = [c & free for c in self.cliques]

        def rec(chosen: tuple[int, ...], cand: int, depth: int):
            b.tick()
            need = size - len(chosen)
            if need == 0:
                yield chosen
                return
            best = None
            if cliques:
                cmask = mask_of(chosen)
                best_count = None
                for c in cliques:
                    if c & cmask:
                        continue
                    k = (c & cand).bit_count()
                    if k == 0:
                        return
                    if best_count is None or k < best_count:
                        best, best_count = c, k
            if use_sym and depth < self.sym_depth:
                for rep, om in self.sym.orbit_blocks(chosen, cand):
                    if cand.bit_count() < need:
                        return
                    yield from rec(chosen + (rep,), cand & comp[rep], depth + 1)
                    cand &= ~om
                return
            if best is not None:
                # the coclique meets ``best`` exactly once
                for u in bits(best & cand):
                    yield from rec(chosen + (u,), cand & comp[u], depth + 1)
                return
            while cand and cand.bit_count() >= need:
                low = cand & -cand
                u = low.bit_length() - 1
                cand ^= low
                yield from rec(chosen + (u,), cand & comp[u], depth + 1)

        yield from rec((v,), free & comp[v], 1)

    def _root(self):
        return (1 << self.n) - 1, ()

    def _children(self, node):
        free, classes = node
        if not free:
            return
        v = self._pick(free)
        if v < 0:
            return
        use_sym = self.sym is not None and not classes
        for S in self._cocliques(v, free, use_sym):
            yield free & ~mask_of(S), classes + (tuple(sorted(S)),)

    first_solution = True

    def frontier(self, depth: int):
        def walk(node, d):
            if d == 0 or not node[0]:
                yield node
                return
            for child in self._children(node):
                yield from walk(child, d - 1)
        return walk(self._root(), depth)

    def solve(self, node):
        def rec(nd):
            if not nd[0]:
                return nd[1]
            for child in self._children(nd):
                r = rec(child)
                if r is not None:
                    return r
            return None
        return rec(node)

    def merge(self, results):
        return next((r for r in results if r is not None), None)


MAX_GUIDE_CLIQUES = 20_000


def _clique_orbit(gens: Sequence[Perm], start: int, n: int, cap: int) -> list[int]:
    """Images of a vertex-set bitmask under <gens>, in discovery order, at most ``cap``."""
    seen = {start}
    out = [start]
    i = 0
    while i < len(out) and len(out) < cap:
        m = out[i]
        i += 1
        for g in gens:
            img = 0
            for v in bits(m):
                img |= 1 << g[v]
            if img not in seen:
                seen.add(img)
                out.append(img)
                if len(out) >= cap:
                    break
    return out


def partition_into_cocliques(graph: Graph, size: int, sym: GroupSpec | None = None, *,
                             budget: Budget | None = None, split_depth: int = 0,
                             workers: int = 1) -> Colouring | None:
    _check_group(graph, sym)
    cliques: list[int] = []
    if sym is not None and sym.is_transitive():
        omega, witness = max_clique(graph, sym, budget=budget)
        if omega * size == graph.n:
            cliques = _clique_orbit(sym.generators, mask_of(witness.vertices), graph.n, MAX_GUIDE_CLIQUES)
    problem = PartitionProblem(graph, size, sym, budget, cliques=cliques)
    found = parallel_search_driver(problem, split_depth, workers)
    if found is None:
        return None
    return verify_colouring(graph, Colouring.from_classes(found))


# -- DSATUR ----------------------------------------------------------------------------------


def _dsatur(graph: Graph, k: int, budget: Budget | None) -> list[int] | None:
    n, rows = graph.n, graph.rows
    b = _budget(budget)
    label = [-1] * n
    cls = [0] * k

    def pick(uncol: int) -> int:
        best, key = -1, None
        for v in bits(uncol):
            sat = sum(1 for m in cls if rows[v] & m)
            kv = (sat, (rows[v] & uncol).bit_count(), -v)
            if key is None or kv > key:
                best, key = v, kv
        return best

    def rec(uncol: int, used: int) -> bool:
        b.tick()
        if not uncol:
            return True
        v = pick(uncol)
        for c in range(min(used + 1, k)):
            if rows[v] & cls[c]:
                continue
            cls[c] |= 1 << v
            label[v] = c
            if rec(uncol & ~(1 << v), max(used, c + 1)):
                return True
            cls[c] &= ~(1 << v)
            label[v] = -1
        return False

    return label if rec(graph.full_mask, 0) else None


def chromatic_le(graph: Graph, k: int, sym: GroupSpec | None = None, *,
                 budget: Budget | None = None, split_depth: int = 0, workers: int = 1,
                 alpha: int | None = None) -> Colouring | None:
    """A proper colouring with at most ``k`` classes, or None if none exists.

    ``alpha`` (the independence number) may be passed to skip recomputing it
    on the vertex-transitive path.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if graph.n == 0:
        return Colouring(())
    if k == 0:
        return None
    _check_group(graph, sym)
    if sym is not None and sym.is_transitive():
        if alpha is None:
            alpha = max_clique(complement(graph), sym, budget=budget)[0]
        if k * alpha < graph.n:
            return None
        if k * alpha == graph.n:
            return partition_into_cocliques(graph, alpha, sym, budget=budget,
                                            split_depth=split_depth, workers=workers)
    labels = _dsatur(graph, k, budget)
    if labels is None:
        return None
    return verify_colouring(graph, Colouring.from_labels(labels))


def chromatic_number(graph: Graph, sym: GroupSpec | None = None, **kw) -> tuple[int, Colouring]:
    lower = max_clique(graph, sym)[0] if graph.n else 0
    for k in range(lower, graph.n + 1):
        col = chromatic_le(graph, k, sym, **kw)
        if col is not None:
            return k, col
    raise AssertionError("unreachable: n colours always suffice")


# -- non-synchronizing graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class NonSyncCheck:
    non_synchronizing: bool
    omega: int
    clique: tuple[int, ...]
    colouring: Colouring | None
    reason: str


def is_non_synchronizing_graph(graph: Graph, sym: GroupSpec | None = None, *,
                               budget: Budget | None = None, split_depth: int = 0,
                               workers: int = 1) -> NonSyncCheck:
    """Decide ``chi = omega`` for a non-null, non-complete graph, with a certificate."""
    if graph.n == 0 or graph.is_null():
        return NonSyncCheck(False, 1 if graph.n else 0, (0,) if graph.n else (), None, "null graph")
    if graph.is_complete():
        return NonSyncCheck(False, graph.n, tuple(range(graph.n)), None, "complete graph")
    omega, clique = max_clique(graph, sym, budget=budget)
    col = chromatic_le(graph, omega, sym, budget=budget, split_depth=split_depth, workers=workers)
    if col is None:
        return NonSyncCheck(False, omega, clique.vertices, None, f"no proper {omega}-colouring")
    return NonSyncCheck(True, omega, clique.vertices, col, "clique and colouring of equal size")


def check_certificate(graph: Graph, clique: Sequence[int], col: Colouring) -> str | None:
    """Reason a (clique, colouring) pair fails to certify ``chi = omega``, or None."""
    if graph.is_null() or graph.is_complete():
        return "graph is null or complete"
    if len(set(clique)) != len(clique) or not graph.is_clique(list(clique)):
        return "clique vertices are not pairwise adjacent"
    why = find_colouring_defect(graph, col)
    if why is not None:
        return why
    if col.k != len(clique):
        return f"colouring has {col.k} classes but the clique has {len(clique)} vertices"
    return None


# -- invariant exact cover ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoverInstance:
    """Cover ``{0..n-1}`` by members of the G-orbits of ``seeds`` invariantly under <H>."""

    n: int
    seeds: tuple[frozenset[int], ...]
    G: tuple[Perm, ...] = ()
    H: tuple[Perm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(frozenset(s) for s in self.seeds))
        for s in self.seeds:
            if not s or any(not 0 <= x < self.n for x in s):
                raise ValueError("seed is empty or not a subset of the ground set")
        for g in self.G + self.H:
            if len(g) != self.n:
                raise ValueError("group element has the wrong degree")
        if self.H and self.G:
            chain = StabChain(self.n, self.G)
            if not all(chain.contains(h) for h in self.H):
                raise ValueError("H is not a subgroup of G")
        elif self.H and any(tuple(h) != tuple(range(self.n)) for h in self.H):
            raise ValueError("H is not a subgroup of G")


def cover_candidates(inst: CoverInstance, max_candidates: int = 200_000) -> list[frozenset[int]]:
    """The G-orbits of the seeds, deduplicated, sorted by sorted tuple."""
    seen: set[frozenset[int]] = set()
    for s in inst.seeds:
        if s in seen:
            continue
        orb = set_orbit(list(inst.G), s) if inst.G else [s]
        seen.update(orb)
        if len(seen) > max_candidates:
            raise CandidateExplosion(f"more than {max_candidates} candidate sets")
    return sorted(seen, key=lambda s: tuple(sorted(s)))


def cover_bundles(inst: CoverInstance, candidates: Sequence[frozenset[int]]) -> list[tuple[frozenset[int], ...]]:
    """<H>-orbits of the candidates whose members are pairwise disjoint."""
    if not inst.H:
        return [(c,) for c in candidates]
    index = {c: i for i, c in enumerate(candidates)}
    done = [False] * len(candidates)
    out = []
    for i, c in enumerate(candidates):
        if done[i]:
            continue
        orb = set_orbit(list(inst.H), c)
        for o in orb:
            done[index[o]] = True
        total = sum(len(o) for o in orb)
        union = frozenset().union(*orb)
        if len(union) == total:
            out.append(tuple(sorted(orb, key=lambda s: tuple(sorted(s)))))
    return out


def _exact_cover_masks(n: int, masks: Sequence[int], budget: Budget | None) -> list[int] | None:
    """Algorithm X over bitmask sets: indices of a partition of ``{0..n-1}``, or None."""
    b = _budget(budget)
    by_point = [[] for _ in range(n)]
    for i, m in enumerate(masks):
        for x in bits(m):
            by_point[x].append(i)
    alive = [True] * len(masks)

    def rec(free: int, chosen: list[int]) -> list[int] | None:
        b.tick()
        if not free:
            return list(chosen)
        best, best_opts = -1, None
        for x in bits(free):
            opts = [i for i in by_point[x] if alive[i] and masks[i] & ~free == 0]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = x, opts
                if not opts:
                    return None
        for i in best_opts:
            chosen.append(i)
            r = rec(free & ~masks[i], chosen)
            if r is not None:
                return r
            chosen.pop()
        return None

    return rec((1 << n) - 1, [])


def exact_cover_invariant(inst: CoverInstance, *, method: str = "direct", budget: Budget | None = None,
                          max_candidates: int = 200_000) -> list[tuple[int, ...]] | None:
    """An <H>-invariant exact cover drawn from the G-orbits of the seeds, or None.

    ``method`` is ``"direct"`` (Algorithm X on bundles) or ``"wclique"``
    (vector-weighted clique on the bundle disjointness graph with
    characteristic-vector weights and all-ones target).
    """
    cands = cover_candidates(inst, max_candidates)
    bundles = cover_bundles(inst, cands)
    masks = [mask_of(x for s in bd for x in s) for bd in bundles]
    if method == "direct":
        chosen = _exact_cover_masks(inst.n, masks, budget)
    elif method == "wclique":
        chosen = _cover_by_wclique(inst.n, masks, budget)
    else:
        raise ValueError(f"unknown cover method {method!r}")
    if chosen is None:
        return None
    parts = sorted(tuple(sorted(s)) for i in chosen for s in bundles[i])
    _verify_cover(inst, parts)
    return parts


def cover_as_weighted_graph(n: int, masks: Sequence[int]) -> WeightedGraph:
    """Disjointness graph on the sets, weighted by characteristic vectors."""
    g = Graph.from_edges(len(masks), ((i, j) for i in range(len(masks)) for j in range(i + 1, len(masks))
                                      if not masks[i] & masks[j]))
    weights = tuple(tuple(m >> x & 1 for x in range(n)) for m in masks)
    return WeightedGraph(g, weights)


def _cover_by_wclique(n: int, masks: Sequence[int], budget: Budget | None) -> list[int] | None:
    if n == 0:
        return []
    found = vector_weighted_clique(cover_as_weighted_graph(n, masks), (1,) * n, budget=budget)
    return None if found is None else list(found.vertices)


def _verify_cover(inst: CoverInstance, parts: Sequence[tuple[int, ...]]) -> None:
    covered = sorted(x for p in parts for x in p)
    if covered != list(range(inst.n)):
        raise AssertionError("cover is not an exact partition of the ground set")
    pset = {frozenset(p) for p in parts}
    for h in inst.H:
        if {frozenset(h[x] for x in p) for p in pset} != pset:
            raise AssertionError("cover is not invariant under H")


def colouring_cover_instance(graph: Graph, G: GroupSpec, H: Sequence[Perm] = (),
                             alpha: int | None = None) -> CoverInstance:
    """Cover instance whose covers are the colourings by maximum cocliques.

    Seeds are G-orbit representatives of the maximum cocliques.
    """
    comp = complement(graph)
    if alpha is None:
        alpha = max_clique(comp, G)[0]
    reps: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    v0 = 0
    for c in all_cliques_of_size(comp, alpha - 1, candidates=comp.rows[v0]):
        s = frozenset(c) | {v0}
        if s in seen:
            continue
        reps.append(s)
        seen.update(set_orbit(list(G.generators), s))
    if not G.is_transitive():
        raise ValueError("colouring cover needs a transitive group")
    return CoverInstance(graph.n, tuple(reps), tuple(G.generators), tuple(H))


# -- class-wise invariant colourings ------------------------------------------------------------


def classwise_invariant_colouring(graph: Graph, K: Sequence[Perm], k: int, *,
                                  budget: Budget | None = None) -> Colouring | None:
    """A proper k-colouring whose classes are unions of <K>-orbits, or None."""
    for g in K:
        if not graph.is_automorphism(g):
            raise ValueError("K does not act as graph automorphisms")
    orbs = orbits(list(K), graph.n) if K else [[v] for v in range(graph.n)]
    masks = [mask_of(o) for o in orbs]
    for o, m in zip(orbs, masks):
        if graph.rows[o[0]] & m:
            return None
    q = Graph.from_edges(len(orbs), ((i, j) for i in range(len(orbs)) for j in range(i + 1, len(orbs))
                                     if any(graph.rows[a] & masks[j] for a in orbs[i])))
    quotient = chromatic_le(q, k, budget=budget)
    if quotient is None:
        return None
    classes = [[v for i in c for v in orbs[i]] for c in quotient.classes]
    return verify_colouring(graph, Colouring.from_classes(classes))
