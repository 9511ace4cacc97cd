"""Exact clique search.

All searches work on bitset rows (see :mod:`syncgroups.graphs`).  The clique
solvers are branch and bound with a greedy colouring bound; when a group of
automorphisms is supplied, the first ``sym_depth`` levels branch only on orbit
representatives of the pointwise stabilizer of the vertices chosen so far,
and a fully explored orbit is excluded from later siblings.

Every solver exposes ``frontier``/``solve``/``merge`` so that
:func:`parallel_search_driver` can cut the tree at a fixed depth, run the
subtrees in worker processes and merge in subtree order.  Subtrees are solved
from the same starting bound regardless of the worker count, so the answer
depends on ``split_depth`` but never on ``workers``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Sequence

import numpy as np

from .graphs import Graph, bits, complement, degree_of, IRREGULAR, mask_of
from .perm import GroupSpec, Perm, StabChain, inverse, mul, orbits


class SearchBudgetExceeded(RuntimeError):
    """Search gave up; ``best`` holds the best witness found so far (if any)."""

    def __init__(self, message: str, best=None, upper=None):
        super().__init__(message)
        self.best = best
        self.upper = upper


class Budget:
    """Node and wall-clock limits shared by one search (per subtree in parallel runs)."""

    def __init__(self, max_nodes: int | None = None, max_seconds: float | None = None):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self._start = time.monotonic()

    def fresh(self) -> "Budget":
        return Budget(self.max_nodes, self.max_seconds)

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchBudgetExceeded(f"node budget of {self.max_nodes} exhausted")
        if self.max_seconds is not None and not self.nodes & 1023:
            if time.monotonic() - self._start > self.max_seconds:
                raise SearchBudgetExceeded(f"time budget of {self.max_seconds}s exhausted")


def _budget(b: Budget | None) -> Budget:
    return Budget() if b is None else b.fresh()


@dataclass(frozen=True)
class CliqueWitness:
    vertices: tuple[int, ...]
    kind: str  # "maximum", "size-k" or "weight-target"

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise ValueError("one weight vector per vertex required")
        dims = {len(w) for w in self.weights}
        if len(dims) > 1:
            raise ValueError("weight vectors must have a common dimension")
        for v, w in enumerate(self.weights):
            if any(c < 0 for c in w) or not any(w):
                raise ValueError(f"weight of vertex {v} must be non-negative and non-zero")

    @property
    def d(self) -> int:
        return len(self.weights[0]) if self.weights else 0


# -- symmetry helper -------------------------------------------------------------


class _Symmetry:
    """Pointwise stabilizers along the chosen-vertex sequence, cached by prefix."""

    def __init__(self, n: int, gens: Sequence[Perm]):
        self.n = n
        self._cache: dict[tuple[int, ...], list[Perm]] = {(): [g for g in gens]}

    def stabilizer(self, chosen: tuple[int, ...]) -> list[Perm]:
        if chosen in self._cache:
            return self._cache[chosen]
        parent = self.stabilizer(chosen[:-1])
        if not parent:
            gens = []
        else:
            chain = StabChain(self.n, parent, base_prefix=(chosen[-1],))
            gens = chain.stabilizer_gens(1)
        self._cache[chosen] = gens
        return gens

    def orbit_blocks(self, chosen: tuple[int, ...], cand: int) -> list[tuple[int, int]]:
        """(representative, orbit mask) for the stabilizer's orbits meeting ``cand``."""
        gens = self.stabilizer(chosen)
        out = []
        if not gens:
            return [(v, 1 << v) for v in bits(cand)]
        for orb in orbits(gens, self.n, bits(cand)):
            out.append((orb[0], mask_of(orb)))
        return out


def _relabel_group(gens: Sequence[Perm], pos: Sequence[int]) -> list[Perm]:
    """Conjugate generators so that they act on the relabelled vertices."""
    inv = inverse(tuple(pos))
    return [mul(mul(inv, g), tuple(pos)) for g in gens]


def _check_group(graph: Graph, sym: GroupSpec | None) -> None:
    if sym is None:
        return
    if sym.degree != graph.n:
        raise ValueError("symmetry group degree does not match graph")
    for g in sym.generators:
        if not graph.is_automorphism(g):
            raise ValueError("supplied symmetry is not a group of graph automorphisms")


# -- clique search ------------------------------------------------------------------


class CliqueProblem:
    """Maximum clique (``target=None``) or clique of size ``target``."""

    def __init__(self, graph: Graph, sym: GroupSpec | None = None, target: int | None = None,
                 sym_depth: int = 2, budget: Budget | None = None):
        _check_group(graph, sym)
        self.n = graph.n
        self.target = target
        # vertices relabelled by non-increasing degree, ties by index
        order = sorted(range(graph.n), key=lambda v: (-graph.degree(v), v))
        self.order = order
        pos = [0] * graph.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = [0] * graph.n
        for v in range(graph.n):
            rows[pos[v]] = mask_of(pos[w] for w in bits(graph.rows[v]))
        self.adj = rows
        self.sym_depth = sym_depth if sym is not None else 0
        self.sym = _Symmetry(graph.n, _relabel_group(sym.generators, pos)) if sym is not None else None
        self.budget = budget
        if target is None:
            self.initial = self._greedy()
            self.best0 = len(self.initial)
        else:
            self.initial = ()
            self.best0 = target - 1

    # helpers

    def _greedy(self) -> tuple[int, ...]:
        cand = (1 << self.n) - 1
        clique = []
        adj = self.adj
        while cand:
            v = max(bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), -u))
            clique.append(v)
            cand &= adj[v]
        return tuple(clique)

    def _colour_sort(self, cand: int, kmin: int) -> tuple[list[int], list[int]]:
        """Greedy colouring of ``cand``; only vertices of colour > kmin are returned."""
        adj = self.adj
        order, cols = [], []
        k = 0
        uncol = cand
        while uncol:
            k += 1
            q = uncol
            while q:
                low = q & -q
                v = low.bit_length() - 1
                uncol ^= low
                q &= ~adj[v]
                q ^= q & low
                if k > kmin:
                    order.append(v)
                    cols.append(k)
        return order, cols

    def _bound(self, cand: int) -> int:
        adj = self.adj
        k = 0
        while cand:
            k += 1
            q = cand
            while q:
                low = q & -q
                v = low.bit_length() - 1
                cand ^= low
                q &= ~adj[v]
                q ^= q & low
        return k

    def _terminal(self, chosen, cand) -> bool:
        return not cand or (self.target is not None and len(chosen) >= self.target)

    def _children(self, chosen: tuple[int, ...], cand: int):
        """Children of a node in branching order, pruned against the current best."""
        size = len(chosen)
        if len(chosen) < self.sym_depth:
            for rep, omask in self.sym.orbit_blocks(chosen, cand):
                if size + self._bound(cand) <= self._best:
                    return
                yield chosen + (rep,), cand & self.adj[rep]
                cand &= ~omask
            return
        order, cols = self._colour_sort(cand, self._best - size)
        for i in range(len(order) - 1, -1, -1):
            if size + cols[i] <= self._best:
                return
            v = order[i]
            yield chosen + (v,), cand & self.adj[v]
            cand &= ~(1 << v)

    # protocol for the driver

    def frontier(self, depth: int) -> list[tuple[tuple[int, ...], int]]:
        self._best = self.best0
        nodes = [((), (1 << self.n) - 1)]
        for _ in range(depth):
            nxt = []
            for chosen, cand in nodes:
                if self._terminal(chosen, cand):
                    nxt.append((chosen, cand))
                else:
                    nxt.extend(self._children(chosen, cand))
            nodes = nxt
        return nodes

    def solve(self, node) -> tuple[int, ...] | None:
        """Best clique beating the starting bound inside the subtree, or None."""
        chosen, cand = node
        self._budget = _budget(self.budget)
        self._best = self.best0
        self._witness = None
        try:
            self._expand(chosen, cand)
        except _Found:
            pass
        except SearchBudgetExceeded as exc:
            exc.best = self._witness
            raise
        return self._witness

    def _expand(self, chosen, cand):
        self._budget.tick()
        if self._terminal(chosen, cand):
            if len(chosen) > self._best:
                self._best = len(chosen)
                self._witness = chosen
                if self.target is not None:
                    raise _Found
            return
        for child, ccand in self._children(chosen, cand):
            self._expand(child, ccand)

    def merge(self, results: list) -> tuple[int, ...]:
        best = self.initial
        for r in results:
            if r is not None and len(r) > len(best):
                best = r
        return best

    def to_original(self, clique: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted(self.order[v] for v in clique))


class _Found(Exception):
    pass


# -- parallel driver -----------------------------------------------------------------

_INSTALLED = None


def _install(problem) -> None:
    global _INSTALLED
    _INSTALLED = problem


def _solve_installed(node):
    return _INSTALLED.solve(node)


def parallel_search_driver(problem, split_depth: int = 0, workers: int = 1):
    """Solve ``problem`` by splitting its tree at ``split_depth``.

    Frontier nodes are enumerated in the sequential branching order, solved
    independently (in worker processes when ``workers > 1``) and merged in
    that order, so the result is the same for every worker count.

    Problems with ``first_solution = True`` merge to the first non-None result
    in frontier order.  Their frontier is consumed lazily in chunks and the
    search stops at the first chunk with a solution; with one worker the root
    is solved directly, which yields that same first solution.
    """
    if split_depth < 0 or workers < 1:
        raise ValueError("split_depth must be >= 0 and workers >= 1")
    if getattr(problem, "first_solution", False):
        if workers == 1:
            return problem.merge([problem.solve(node) for node in problem.frontier(0)])
        nodes = iter(problem.frontier(split_depth))
        with ProcessPoolExecutor(max_workers=workers, initializer=_install,
                                 initargs=(problem,)) as pool:
            while True:
                chunk = list(islice(nodes, 4 * workers))
                if not chunk:
                    return None
                found = problem.merge(list(pool.map(_solve_installed, chunk)))
                if found is not None:
                    return found
    nodes = list(problem.frontier(split_depth))
    if workers == 1 or len(nodes) <= 1:
        results = [problem.solve(node) for node in nodes]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_install,
                                 initargs=(problem,)) as pool:
            results = list(pool.map(_solve_installed, nodes))
    return problem.merge(results)


# -- public clique API -------------------------------------------------------------------


def max_clique(graph: Graph, sym: GroupSpec | None = None, *, budget: Budget | None = None,
               sym_depth: int = 2, split_depth: int = 0, workers: int = 1) -> tuple[int, CliqueWitness]:
    """Clique number and a maximum clique."""
    if graph.n == 0:
        return 0, CliqueWitness((), "maximum")
    problem = CliqueProblem(graph, sym, None, sym_depth, budget)
    try:
        best = parallel_search_driver(problem, split_depth, workers)
    except SearchBudgetExceeded as exc:
        if exc.best is not None:
            exc.best = CliqueWitness(problem.to_original(exc.best), "maximum")
        else:
            exc.best = CliqueWitness(problem.to_original(problem.initial), "maximum")
        raise
    witness = problem.to_original(best)
    return len(witness), CliqueWitness(witness, "maximum")


def has_clique_of_size(graph: Graph, k: int, sym: GroupSpec | None = None,
                       fix: Sequence[Perm] | None = None, *, budget: Budget | None = None,
                       sym_depth: int = 2, split_depth: int = 0,
                       workers: int = 1) -> CliqueWitness | None:
    """A clique of exactly ``k`` vertices, or None if there is none.

    With ``fix`` only cliques that are unions of ``<fix>``-orbits are searched,
    so None then says nothing about cliques in general.
    """
    if not 0 <= k <= graph.n:
        if k > graph.n:
            return None
        raise ValueError("k must be non-negative")
    if k == 0:
        return CliqueWitness((), "size-k")
    if fix is not None:
        return _clique_of_size_fixed(graph, k, fix, budget)
    problem = CliqueProblem(graph, sym, k, sym_depth, budget)
    found = parallel_search_driver(problem, split_depth, workers)
    if len(found) < k:
        return None
    return CliqueWitness(problem.to_original(found[:k]), "size-k")


def _clique_of_size_fixed(graph: Graph, k: int, fix: Sequence[Perm],
                          budget: Budget | None) -> CliqueWitness | None:
    for g in fix:
        if not graph.is_automorphism(g):
            raise ValueError("fixing subgroup does not act as graph automorphisms")
    orbs = [o for o in orbits(list(fix), graph.n) if graph.is_clique(o)]
    if not orbs:
        return None
    masks = [mask_of(o) for o in orbs]
    quotient = Graph.from_edges(len(orbs), (
        (i, j) for i in range(len(orbs)) for j in range(i + 1, len(orbs))
        if all(graph.rows[a] & masks[j] == masks[j] for a in orbs[i])))
    wg = WeightedGraph(quotient, tuple((len(o),) for o in orbs))
    found = vector_weighted_clique(wg, (k,), budget=budget)
    if found is None:
        return None
    verts = sorted(v for i in found.vertices for v in orbs[i])
    return CliqueWitness(tuple(verts), "size-k")


def clique_number(graph: Graph, sym: GroupSpec | None = None, **kw) -> int:
    return max_clique(graph, sym, **kw)[0]


def independence_number(graph: Graph, sym: GroupSpec | None = None, **kw) -> int:
    return max_clique(complement(graph), sym, **kw)[0]


def all_cliques_of_size(graph: Graph, k: int, candidates: int | None = None,
                        budget: Budget | None = None) -> list[tuple[int, ...]]:
    """Every clique of exactly ``k`` vertices inside ``candidates`` (default all)."""
    adj = graph.rows
    out = []
    b = _budget(budget)

    def rec(chosen, cand):
        b.tick()
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        need = k - len(chosen)
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chosen.append(v)
            rec(chosen, cand & adj[v])
            chosen.pop()

    rec([], graph.full_mask if candidates is None else candidates)
    return out


# -- spectral bound ------------------------------------------------------------------------


@dataclass(frozen=True)
class HoffmanBound:
    value: float
    bound: int
    least_eigenvalue: float
    degree: int


def hoffman_coclique_bound(graph: Graph) -> HoffmanBound:
    """Ratio bound ``n * (-l) / (k - l)`` on the independence number of a k-regular graph."""
    k = degree_of(graph)
    if k == IRREGULAR or k < 1:
        raise ValueError("Hoffman bound needs a regular graph of positive degree")
    lam = float(np.linalg.eigvalsh(graph.adjacency_matrix())[0])
    value = graph.n * (-lam) / (k - lam)
    return HoffmanBound(value, math.floor(value + 1e-6), lam, k)


# -- vector-weighted clique -------------------------------------------------------------------


class WeightedCliqueProblem:
    """Clique whose weight vectors sum exactly to ``target``.

    Branching: take the unmet coordinate with the fewest usable candidates
    (ties by index) and try each such candidate in index order, excluding the
    ones already tried.  With 0/1 weights and an all-ones target this is
    Algorithm X on the sets encoded by the weights.
    """

    def __init__(self, wg: WeightedGraph, target: Sequence[int], budget: Budget | None = None):
        target = tuple(target)
        if len(target) != wg.d:
            raise ValueError("target dimension does not match weights")
        if any(t < 0 for t in target):
            raise ValueError("target must be non-negative")
        self.adj = wg.graph.rows
        self.n = wg.graph.n
        self.weights = wg.weights
        self.target = target
        self.budget = budget
        self.binary = all(c in (0, 1) for w in wg.weights for c in w) and all(t in (0, 1) for t in target)
        d = wg.d
        self.colmask = [mask_of(v for v in range(self.n) if wg.weights[v][j]) for j in range(d)]
        if self.binary:
            self.wmask = [mask_of(j for j in range(d) if w[j]) for w in wg.weights]
            self.conflict = []
            for wm in self.wmask:
                c = 0
                for j in bits(wm):
                    c |= self.colmask[j]
                self.conflict.append(c)

    def _root(self):
        if self.binary:
            rem = mask_of(j for j, t in enumerate(self.target) if t)
            cand = mask_of(v for v in range(self.n) if self.wmask[v] & ~rem == 0)
            return (), cand, rem
        rem = self.target
        cand = mask_of(v for v in range(self.n) if all(c <= r for c, r in zip(self.weights[v], rem)))
        return (), cand, rem

    def _done(self, rem) -> bool:
        return not rem if self.binary else not any(rem)

    def _children(self, node):
        chosen, cand, rem = node
        if self._done(rem):
            return
        colmask = self.colmask
        # pick the most constrained unmet coordinate
        best_j, best_mask, best_count = -1, 0, None
        if self.binary:
            for j in bits(rem):
                m = cand & colmask[j]
                c = m.bit_count()
                if best_count is None or c < best_count:
                    best_j, best_mask, best_count = j, m, c
                    if c == 0:
                        return
        else:
            w = self.weights
            for j, r in enumerate(rem):
                if r == 0:
                    continue
                m = cand & colmask[j]
                if sum(w[v][j] for v in bits(m)) < r:
                    return
                c = m.bit_count()
                if best_count is None or c < best_count:
                    best_j, best_mask, best_count = j, m, c
        adj = self.adj
        m = best_mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if self.binary:
                nrem = rem & ~self.wmask[v]
                ncand = cand & adj[v] & ~self.conflict[v]
            else:
                wv = self.weights[v]
                nrem = tuple(r - c for r, c in zip(rem, wv))
                ncand = mask_of(u for u in bits(cand & adj[v])
                                if all(c <= r for c, r in zip(self.weights[u], nrem)))
            yield chosen + (v,), ncand, nrem
            cand &= ~low

    first_solution = True

    def frontier(self, depth: int):
        def walk(node, d):
            if d == 0 or self._done(node[2]):
                yield node
                return
            for child in self._children(node):
                yield from walk(child, d - 1)
        return walk(self._root(), depth)

    def solve(self, node):
        b = _budget(self.budget)

        def rec(nd):
            b.tick()
            if self._done(nd[2]):
                return nd[0]
            for child in self._children(nd):
                r = rec(child)
                if r is not None:
                    return r
            return None

        return rec(node)

    def merge(self, results):
        for r in results:
            if r is not None:
                return r
        return None


def vector_weighted_clique(wg: WeightedGraph, target: Sequence[int], *, budget: Budget | None = None,
                           split_depth: int = 0, workers: int = 1) -> CliqueWitness | None:
    problem = WeightedCliqueProblem(wg, target, budget)
    found = parallel_search_driver(problem, split_depth, workers)
    if found is None:
        return None
    return CliqueWitness(tuple(sorted(found)), "weight-target")
