"""Graphs from finite projective and polar geometry, for small q.

Points are normalized coordinate tuples over :class:`~syncgroups.field.GF`
(first non-zero entry 1), listed lexicographically; lines are sorted tuples
of their points.  Pinned forms:

* alternating: ``x1 y2 - x2 y1 + x3 y4 - x4 y3`` over GF(q);
* Hermitian on GF(q^2)^4: ``x1 y2^q + x2 y1^q + x3 y4^q + x4 y3^q``;
* Hermitian on GF(q^2)^3: ``x1 y2^q + x2 y1^q + x3 y3^q``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

from .catalogue import (gl_generators, hermitian_form3, point_map, small_generating_set,
                        symplectic_form, symplectic_transvection, unitary_reflections)
from .colouring import Colouring, CoverInstance, colouring_cover_instance, exact_cover_invariant
from .families import CertificateError, FamilyError, FamilyGraph, _finish
from .field import GF, field, projective_points, span_points
from .graphs import Graph, complement
from .perm import GroupSpec, Perm, perm_from_map
from .search import Budget, max_clique


def _check_q(q: int, allowed: Sequence[int], what: str, certify: bool = False,
             certifiable: Sequence[int] | None = None) -> None:
    if q not in allowed:
        raise FamilyError(f"{what} is supported for q in {sorted(allowed)} only")
    if certify and certifiable is not None and q not in certifiable:
        raise FamilyError(f"{what}: certificate search is supported for q in {sorted(certifiable)} "
                          f"only; pass certify=False for q = {q}")


def radical(F: GF, form: Callable, dim: int) -> list[tuple[int, ...]]:
    """Basis of ``{x : form(x, y) = 0 for all y}`` for a form linear in its first argument."""
    basis = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rows = [tuple(form(e, f) for e in basis) for f in basis]
    return F.nullspace(rows)


def _group(objects: Sequence, maps: Sequence[Callable], name: str) -> GroupSpec:
    gens = [perm_from_map(objects, f) for f in maps]
    return GroupSpec(len(objects), tuple(small_generating_set(len(objects), gens)), name=name)


def _cover(n: int, seed: Sequence[int], G: GroupSpec, budget: Budget | None) -> Colouring | None:
    parts = exact_cover_invariant(CoverInstance(n, (frozenset(seed),), G.generators), budget=budget)
    return None if parts is None else Colouring.from_classes(parts)


# -- PG(3, q) lines --------------------------------------------------------------------------------


def pg3_lines(F: GF) -> list[tuple[tuple[int, ...], ...]]:
    pts = projective_points(F, 3)
    lines = {tuple(span_points(F, [a, b])) for a, b in combinations(pts, 2)}
    return sorted(lines)


def _collineations(F: GF, dim: int) -> list[Callable]:
    maps = [point_map(F, A) for A in gl_generators(F, dim + 1)]
    if F.k > 1:
        maps.append(lambda v: tuple(F.frobenius(x) for x in v))
    return maps


def pg3_line_graph(q: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """Lines of PG(3, q), adjacent iff they meet.  Colour classes form a packing into spreads."""
    _check_q(q, (2, 3, 4), "pg3_line_graph", certify, (2,))
    F = field(q)
    pts = projective_points(F, 3)
    lines = pg3_lines(F)
    sets = [frozenset(L) for L in lines]
    graph = Graph.from_adjacency(len(lines), lambda a, b: bool(sets[a] & sets[b]))
    line_maps = [lambda L, f=f: tuple(sorted(f(x) for x in L)) for f in _collineations(F, 3)]
    G = _group(lines, line_maps, f"PGammaL(4, {q}) on lines")
    clique = tuple(i for i, L in enumerate(lines) if pts[0] in sets[i])
    col = None
    if certify:
        Gp = _group(pts, _collineations(F, 3), f"PGammaL(4, {q})")
        pindex = {p: i for i, p in enumerate(pts)}
        spread = exact_cover_invariant(CoverInstance(len(pts), tuple(frozenset(pindex[p] for p in L)
                                                                     for L in lines[:1]), Gp.generators),
                                       budget=budget)
        if spread is None:
            raise CertificateError(f"PG(3, {q}) has no spread in the searched orbit")
        lindex = {frozenset(pindex[p] for p in L): i for i, L in enumerate(lines)}
        seed = [lindex[frozenset(part)] for part in spread]
        col = _cover(len(lines), seed, G, budget)
    fg = FamilyGraph(graph, "pg3_line_graph", (q,), q * q + q + 1, tuple(lines), G, clique, col,
                     notes=("colour classes are the spreads of a packing",))
    return _finish(fg, certify)


# -- Hermitian surface H(3, q^2) ---------------------------------------------------------------------


def hermitian_form4(F: GF, q: int, u, v) -> int:
    c = lambda a: F.pow(a, q)
    return F.add(F.add(F.mul(u[0], c(v[1])), F.mul(u[1], c(v[0]))),
                 F.add(F.mul(u[2], c(v[3])), F.mul(u[3], c(v[2]))))


def unitary_transvections(F: GF, q: int, form: Callable, points) -> list[Callable]:
    """Maps x -> x + c h(x, a) a for isotropic a and c + c^q = 0, c != 0."""
    cs = [c for c in range(1, F.q) if F.add(c, F.pow(c, q)) == 0]
    maps = []
    for a in points:
        for c in cs:
            def f(x, a=a, c=c):
                return F.normalize(F.vec_add(x, F.scale(F.mul(c, form(x, a)), a)))
            maps.append(f)
    return maps


def hermitian_points(q: int) -> list[tuple[int, ...]]:
    F = field(q * q)
    return [v for v in projective_points(F, 3) if hermitian_form4(F, q, v, v) == 0]


def hermitian_point_graph(q: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """Points of H(3, q^2), adjacent iff collinear (orthogonal).  Colour classes form a fan of ovoids."""
    _check_q(q, (2, 3), "hermitian_point_graph", certify, (2,))
    F = field(q * q)
    form = lambda u, v: hermitian_form4(F, q, u, v)
    if radical(F, form, 4):
        raise AssertionError("Hermitian form is degenerate")
    pts = hermitian_points(q)
    graph = Graph.from_adjacency(len(pts), lambda a, b: form(pts[a], pts[b]) == 0)
    G = _group(pts, unitary_transvections(F, q, form, pts), f"PSU(4, {q})")
    b = next(i for i in range(1, len(pts)) if graph.has_edge(0, i))
    line = set(span_points(F, [pts[0], pts[b]]))
    clique = tuple(i for i, p in enumerate(pts) if p in line)
    col = None
    if certify:
        parts = exact_cover_invariant(colouring_cover_instance(graph, G), budget=budget)
        col = None if parts is None else Colouring.from_classes(parts)
    fg = FamilyGraph(graph, "hermitian_point_graph", (q,), q * q + 1, tuple(pts), G, clique, col,
                     notes=("colour classes are the ovoids of a fan",))
    return _finish(fg, certify)


# -- non-isotropic points of PG(2, q^2) ---------------------------------------------------------------


def nu3_graph(q: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """Points of PG(2, q^2) off the Hermitian curve, adjacent iff the joining line is a tangent."""
    _check_q(q, (2, 3), "nu3_graph")
    F = field(q * q)
    form = lambda u, v: hermitian_form3(F, q, u, v)
    if radical(F, form, 3):
        raise AssertionError("Hermitian form is degenerate")
    pts = [v for v in projective_points(F, 2) if form(v, v)]

    def tangent(a, b) -> bool:
        return sum(1 for x in span_points(F, [a, b]) if form(x, x) == 0) == 1

    graph = Graph.from_adjacency(len(pts), lambda a, b: tangent(pts[a], pts[b]))
    maps = [point_map(F, A) for A in unitary_reflections(F, q)]
    G = _group(pts, maps, f"PGU(3, {q})")
    omega, witness = max_clique(graph, G, budget=budget)
    col = None
    if certify:
        parts = exact_cover_invariant(colouring_cover_instance(graph, G), budget=budget)
        col = None if parts is None else Colouring.from_classes(parts)
    fg = FamilyGraph(graph, "nu3_graph", (q,), q * q, tuple(pts), G, witness.vertices, col)
    return _finish(fg, certify)


# -- complement of the W(3, q) point graph ----------------------------------------------------------


def symplectic_complement_graph(q: int, certify: bool = True, budget: Budget | None = None) -> FamilyGraph:
    """Complement of the point graph of W(3, q), q even.  Cliques are ovoids; classes a spread."""
    if q % 2:
        raise FamilyError("symplectic_complement_graph needs q a power of 2 (W(3, q) has an ovoid "
                          "and a spread only for even q)")
    _check_q(q, (2, 4), "symplectic_complement_graph")
    F = field(q)
    form = lambda u, v: symplectic_form(F, u, v)
    if radical(F, form, 4):
        raise AssertionError("alternating form is degenerate")
    pts = projective_points(F, 3)
    w = Graph.from_adjacency(len(pts), lambda a, b: form(pts[a], pts[b]) == 0)
    graph = complement(w)
    maps = [point_map(F, symplectic_transvection(F, v)) for v in pts]
    G = _group(pts, maps, f"PSp(4, {q})")
    omega, witness = max_clique(graph, G, budget=budget)
    col = None
    if certify:
        b = next(i for i in range(1, len(pts)) if w.has_edge(0, i))
        line = set(span_points(F, [pts[0], pts[b]]))
        col = _cover(len(pts), [i for i, p in enumerate(pts) if p in line], G, budget)
    fg = FamilyGraph(graph, "symplectic_complement_graph", (q,), q * q + 1, tuple(pts), G,
                     witness.vertices, col, notes=("colour classes are the lines of a spread",))
    return _finish(fg, certify)


GEOMETRIES: dict[str, Callable[..., FamilyGraph]] = {
    "pg3_line_graph": pg3_line_graph,
    "hermitian_point_graph": hermitian_point_graph,
    "nu3_graph": nu3_graph,
    "symplectic_complement_graph": symplectic_complement_graph,
}
