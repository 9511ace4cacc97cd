"""Text formats.  Points and vertices are 1-based in every file.

* ``.grp``: ``degree <n>``, optional ``name``/``type``/``affine <p> <d>`` lines,
  then ``perm <i1> ... <in>`` per generator.
* DIMACS: ``p edge <n> <m>`` and ``e <u> <v>`` with u < v, sorted.
* weighted clique: ``p wclique <n> <d>``, ``w <v> <c1> .. <cd>``, ``e <u> <v>``,
  ``t <c1> .. <cd>``.
* cover instance: ``p cover <n>``, ``s <x1> ..`` per seed, ``g <perm>`` and
  ``h <perm>`` for generators of G and H.

``c`` lines are comments in the last three formats.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .colouring import CoverInstance
from .graphs import Graph, GraphError
from .perm import ONSS_TYPES, GroupError, GroupSpec
from .search import WeightedGraph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(source: str | Path | Iterable[str]) -> list[str]:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8").splitlines()
    if isinstance(source, str):
        return source.splitlines()
    return list(source)


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError("expected integers", no) from None


def _perm(tokens: list[str], n: int, no: int) -> tuple[int, ...]:
    vals = _ints(tokens, no)
    if len(vals) != n:
        raise FormatError(f"permutation has {len(vals)} entries, expected {n}", no)
    if sorted(vals) != list(range(1, n + 1)):
        raise FormatError("not a permutation of 1..n", no)
    return tuple(v - 1 for v in vals)


# -- groups ----------------------------------------------------------------------------------------


def parse_group(source) -> GroupSpec:
    degree = None
    name = None
    onss = None
    affine = None
    gens = []
    for no, raw in enumerate(_lines(source), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if degree is None and key != "degree":
            raise FormatError("first line must be 'degree <n>'", no)
        if key == "degree":
            if degree is not None:
                raise FormatError("duplicate degree line", no)
            vals = _ints(rest.split(), no)
            if len(vals) != 1 or vals[0] < 1:
                raise FormatError("degree must be one positive integer", no)
            degree = vals[0]
        elif key == "name":
            name = rest
        elif key == "type":
            if rest not in ONSS_TYPES:
                raise FormatError(f"unknown type {rest!r}", no)
            onss = rest
        elif key == "affine":
            vals = _ints(rest.split(), no)
            if len(vals) != 2:
                raise FormatError("affine line needs p and d", no)
            affine = (vals[0], vals[1])
        elif key == "perm":
            gens.append(_perm(rest.split(), degree, no))
        else:
            raise FormatError(f"unknown keyword {key!r}", no)
    if degree is None:
        raise FormatError("missing degree line")
    if not gens:
        gens.append(tuple(range(degree)))
    try:
        return GroupSpec(degree, tuple(gens), name=name, onss_type=onss, affine_params=affine)
    except GroupError as exc:
        raise FormatError(str(exc)) from None


def format_group(G: GroupSpec) -> str:
    out = [f"degree {G.degree}"]
    if G.name:
        out.append(f"name {G.name}")
    if G.onss_type:
        out.append(f"type {G.onss_type}")
    if G.affine_params:
        out.append(f"affine {G.affine_params[0]} {G.affine_params[1]}")
    for g in G.generators:
        out.append("perm " + " ".join(str(x + 1) for x in g))
    return "\n".join(out) + "\n"


# -- DIMACS ----------------------------------------------------------------------------------------


def _edge_line(tokens: list[str], n: int, no: int) -> tuple[int, int]:
    vals = _ints(tokens, no)
    if len(vals) != 2:
        raise FormatError("edge line needs two vertices", no)
    u, v = vals
    if not (1 <= u <= n and 1 <= v <= n):
        raise FormatError("vertex out of range", no)
    if u == v:
        raise FormatError("loop", no)
    return u - 1, v - 1


def parse_dimacs(source) -> Graph:
    n = None
    m = None
    edges = []
    for no, raw in enumerate(_lines(source), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise FormatError("duplicate problem line", no)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise FormatError("expected 'p edge <n> <m>'", no)
            n, m = _ints(tokens[2:], no)
        elif tokens[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", no)
            edges.append(_edge_line(tokens[1:], n, no))
        else:
            raise FormatError(f"unknown line type {tokens[0]!r}", no)
    if n is None:
        raise FormatError("missing problem line")
    g = Graph.from_edges(n, edges)
    if g.num_edges != m:
        raise FormatError(f"header announces {m} edges, found {g.num_edges} distinct")
    return g


def format_dimacs(graph: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {graph.n} {graph.num_edges}")
    out.extend(f"e {a + 1} {b + 1}" for a, b in graph.edges())
    return "\n".join(out) + "\n"


# -- weighted clique ---------------------------------------------------------------------------------


def parse_wclique(source) -> tuple[WeightedGraph, tuple[int, ...]]:
    n = d = None
    weights: dict[int, tuple[int, ...]] = {}
    edges = []
    target = None
    for no, raw in enumerate(_lines(source), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if len(tokens) != 4 or tokens[1] != "wclique":
                raise FormatError("expected 'p wclique <n> <d>'", no)
            n, d = _ints(tokens[2:], no)
            continue
        if n is None:
            raise FormatError("data before problem line", no)
        if kind == "w":
            vals = _ints(tokens[1:], no)
            if len(vals) != d + 1 or not 1 <= vals[0] <= n:
                raise FormatError("weight line needs a vertex and d entries", no)
            if vals[0] - 1 in weights:
                raise FormatError("duplicate weight line", no)
            weights[vals[0] - 1] = tuple(vals[1:])
        elif kind == "e":
            edges.append(_edge_line(tokens[1:], n, no))
        elif kind == "t":
            vals = _ints(tokens[1:], no)
            if len(vals) != d:
                raise FormatError("target needs d entries", no)
            target = tuple(vals)
        else:
            raise FormatError(f"unknown line type {kind!r}", no)
    if n is None:
        raise FormatError("missing problem line")
    if target is None:
        raise FormatError("missing target line")
    if len(weights) != n:
        raise FormatError("every vertex needs a weight line")
    try:
        wg = WeightedGraph(Graph.from_edges(n, edges), tuple(weights[v] for v in range(n)))
    except (ValueError, GraphError) as exc:
        raise FormatError(str(exc)) from None
    return wg, target


def format_wclique(wg: WeightedGraph, target) -> str:
    g = wg.graph
    out = [f"p wclique {g.n} {wg.d}"]
    out.extend(f"w {v + 1} " + " ".join(map(str, w)) for v, w in enumerate(wg.weights))
    out.extend(f"e {a + 1} {b + 1}" for a, b in g.edges())
    out.append("t " + " ".join(map(str, target)))
    return "\n".join(out) + "\n"


# -- cover instances ----------------------------------------------------------------------------------


def parse_cover(source) -> CoverInstance:
    n = None
    seeds, G, H = [], [], []
    for no, raw in enumerate(_lines(source), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if len(tokens) != 3 or tokens[1] != "cover":
                raise FormatError("expected 'p cover <n>'", no)
            n = _ints(tokens[2:], no)[0]
            continue
        if n is None:
            raise FormatError("data before problem line", no)
        if kind == "s":
            vals = _ints(tokens[1:], no)
            if not vals or any(not 1 <= x <= n for x in vals):
                raise FormatError("seed must be a non-empty subset of 1..n", no)
            seeds.append(frozenset(x - 1 for x in vals))
        elif kind in ("g", "h"):
            (G if kind == "g" else H).append(_perm(tokens[1:], n, no))
        else:
            raise FormatError(f"unknown line type {kind!r}", no)
    if n is None:
        raise FormatError("missing problem line")
    try:
        return CoverInstance(n, tuple(seeds), tuple(G), tuple(H))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_cover(inst: CoverInstance) -> str:
    out = [f"p cover {inst.n}"]
    out.extend("s " + " ".join(str(x + 1) for x in sorted(s)) for s in inst.seeds)
    out.extend("g " + " ".join(str(x + 1) for x in g) for g in inst.G)
    out.extend("h " + " ".join(str(x + 1) for x in h) for h in inst.H)
    return "\n".join(out) + "\n"
