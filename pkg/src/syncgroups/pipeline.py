"""Classification of a transitive group as separating, non-separating but
synchronizing, or non-synchronizing.

The ladder in :func:`classify` runs, in order: prime degree; 2-set
transitivity; the affine tests; isomorphism with a graph in the library of
known non-synchronizing graphs; the sweep over complementary pairs of
generalized orbital graphs looking for ``omega * alpha = n``; the
O'Nan-Scott shortcut for non-almost-simple types; and finally the search for
a graph with ``chi = omega`` among the non-separating ones.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .catalogue import affine_index, affine_vector
from .colouring import (Colouring, check_certificate, chromatic_le, classwise_invariant_colouring,
                        colouring_cover_instance, exact_cover_invariant)
from .config import Config, Strategy
from .field import field as galois_field, projective_points
from .graphs import (Graph, IsomorphismBudgetExceeded, degree_of, find_isomorphism,
                     generalized_orbital_graph, is_invariant)
from .perm import (GroupError, GroupSpec, conjugacy_class_reps, is_primitive, orbits,
                   orbits_on_2subsets, stabilizer)
from .search import SearchBudgetExceeded, has_clique_of_size, hoffman_coclique_bound, max_clique

STATUSES = ("separating", "non-separating-synchronizing", "non-synchronizing", "unknown")
ALMOST_SIMPLE_OR_UNKNOWN = ("almost-simple", "unknown", None)


# -- library of non-synchronizing graphs ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LibraryEntry:
    graph: Graph
    tag: str
    omega: int
    clique: tuple[int, ...]
    colouring: Colouring

    def check(self) -> None:
        why = check_certificate(self.graph, self.clique, self.colouring)
        if why is not None:
            raise ValueError(f"library entry {self.tag!r}: {why}")
        if len(self.clique) != self.omega:
            raise ValueError(f"library entry {self.tag!r}: clique size differs from omega")

    def to_json(self) -> dict:
        return {"tag": self.tag, "n": self.graph.n, "omega": self.omega,
                "edges": [[a + 1, b + 1] for a, b in self.graph.edges()],
                "clique": [v + 1 for v in self.clique], "colouring": self.colouring.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "LibraryEntry":
        g = Graph.from_edges(d["n"], ((a - 1, b - 1) for a, b in d["edges"]))
        col = Colouring.from_classes([[v - 1 for v in c] for c in d["colouring"]])
        return cls(g, d["tag"], d["omega"], tuple(v - 1 for v in d["clique"]), col)


@lru_cache(maxsize=1)
def _seed_entries() -> tuple[LibraryEntry, ...]:
    from .families import hamming, johnson_distance_one, kneser_complement, partition_graph
    from .geometry import hermitian_point_graph, nu3_graph, pg3_line_graph, symplectic_complement_graph
    builders = [lambda m=m: hamming(2, m) for m in range(3, 7)]
    builders += [lambda: hamming(3, 3)]
    builders += [lambda n=n, k=k: kneser_complement(n, k)
                 for n, k in ((6, 2), (8, 2), (10, 2), (12, 2), (9, 3), (12, 3))]
    builders += [lambda: johnson_distance_one(9), lambda: partition_graph(6, 2),
                 lambda: partition_graph(8, 2), lambda: partition_graph(9, 3)]
    builders += [lambda: pg3_line_graph(2), lambda: hermitian_point_graph(2), lambda: nu3_graph(3),
                 lambda: symplectic_complement_graph(2), lambda: symplectic_complement_graph(4)]
    out = []
    for build in builders:
        fg = build()
        if fg.group is not None and not is_primitive(fg.group):
            continue
        out.append(LibraryEntry(fg.graph, fg.name, fg.expected_omega, fg.clique, fg.colouring))
    return tuple(out)


class NonSyncLibrary:
    """Graphs certified to have ``chi = omega``, matched up to isomorphism."""

    FILE = "library.json"

    def __init__(self, entries: Iterable[LibraryEntry] = ()):
        self.entries: list[LibraryEntry] = []
        for e in entries:
            self.add(e)

    @classmethod
    def seeded(cls) -> "NonSyncLibrary":
        """Family and geometry graphs with a primitive automorphism group, at desk scale."""
        return cls(_seed_entries())

    def __len__(self):
        return len(self.entries)

    def add(self, entry: LibraryEntry) -> None:
        entry.check()
        self.entries.append(entry)

    def match(self, graph: Graph, budget: int = 1_000_000) -> tuple[LibraryEntry, list[int]] | None:
        """A library entry isomorphic to ``graph`` with the mapping entry -> graph."""
        for e in self.entries:
            if e.graph.n != graph.n or e.graph.num_edges != graph.num_edges:
                continue
            try:
                mapping = find_isomorphism(e.graph, graph, budget)
            except IsomorphismBudgetExceeded:
                continue
            if mapping is not None:
                return e, mapping
        return None

    def save(self, directory: str | Path) -> Path:
        path = Path(directory)
        path.mkdir(parents=True, exist_ok=True)
        doc = {"entries": [e.to_json() for e in self.entries]}
        out = path / self.FILE
        out.write_text(json.dumps(doc, separators=(",", ":")) + "\n", encoding="utf-8")
        return out

    @classmethod
    def load(cls, directory: str | Path) -> "NonSyncLibrary":
        """Load and re-check every certificate."""
        doc = json.loads((Path(directory) / cls.FILE).read_text(encoding="utf-8"))
        return cls(LibraryEntry.from_json(d) for d in doc["entries"])


# -- reports -----------------------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    name: str | None
    degree: int
    order: int
    status: str = "unknown"
    rule: str = ""
    witness: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    graph: Graph | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        w = self.witness
        witness = {k: w.get(k) for k in ("mask", "omega", "alpha", "clique", "colouring")}
        for k in ("coclique", "graph_degree"):
            if k in w:
                witness[k] = w[k]
        return {"name": self.name, "degree": self.degree, "order": self.order, "status": self.status,
                "rule": self.rule, "witness": witness, "timings_ms": dict(self.timings_ms),
                "notes": list(self.notes)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @property
    def decided(self) -> bool:
        return self.status != "unknown"


def _witness(mask: Sequence[int] | None = None, graph: Graph | None = None, omega: int | None = None,
             alpha: int | None = None, clique=None, colouring: Colouring | None = None,
             coclique=None) -> dict:
    w = {"mask": [i + 1 for i in mask] if mask is not None else None, "omega": omega, "alpha": alpha,
         "clique": [v + 1 for v in clique] if clique is not None else None,
         "colouring": colouring.to_json() if colouring is not None else None}
    if coclique is not None:
        w["coclique"] = [v + 1 for v in coclique]
    if graph is not None:
        w["graph_degree"] = degree_of(graph)
    return w


def mask_of_graph(graph: Graph, pair_orbits) -> list[int] | None:
    """Orbit indices whose union is the edge set, or None if not a union of orbits."""
    mask = []
    for i, orb in enumerate(pair_orbits):
        inside = [graph.has_edge(a, b) for a, b in orb]
        if all(inside):
            mask.append(i)
        elif any(inside):
            return None
    return mask


# -- affine tests ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineResult:
    status: str
    rule: str
    graph: Graph | None = None
    clique: tuple[int, ...] | None = None
    colouring: Colouring | None = None
    note: str = ""


def _check_affine(G: GroupSpec) -> tuple[int, int, GroupSpec]:
    p, d = G.affine_params
    n = G.degree
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        t = tuple(affine_index(p, [(a + b) % p for a, b in zip(affine_vector(p, d, x), e)]) for x in range(n))
        if not G.contains(t):
            raise GroupError(f"translation by e{i + 1} is not in the group")
    H = stabilizer(G, 0)
    basis = [affine_index(p, tuple(1 if j == i else 0 for j in range(d))) for i in range(d)]
    for h in H.generators:
        images = [affine_vector(p, d, h[b]) for b in basis]
        for x in range(n):
            v = affine_vector(p, d, x)
            lin = [sum(c * im[j] for c, im in zip(v, images)) % p for j in range(d)]
            if affine_index(p, lin) != h[x]:
                raise GroupError("zero-vector stabilizer does not act linearly")
    return p, d, H


def affine_tests(G: GroupSpec) -> AffineResult | None:
    """Tests on the zero-vector stabilizer H of an affine group; None if inconclusive.

    (1) H transitive on 1-spaces gives separating.  (2) A hyperplane W missing
    an H-orbit O of 1-spaces gives non-synchronizing, witnessed by the graph
    joining a, b when b - a spans a member of O, coloured by the cosets of W.
    """
    if G.affine_params is None:
        raise GroupError("affine tests need affine parameters")
    p, d, H = _check_affine(G)
    F = galois_field(p)
    lines = projective_points(F, d - 1)
    index = {v: i for i, v in enumerate(lines)}
    act = []
    for h in H.generators:
        act.append(tuple(index[F.normalize(affine_vector(p, d, h[affine_index(p, v)]))] for v in lines))
    line_orbits = orbits(act, len(lines)) if act else [[i] for i in range(len(lines))]
    if len(line_orbits) == 1:
        return AffineResult("separating", "affine-test-1",
                            note="zero-vector stabilizer is transitive on 1-dimensional subspaces")
    hyperplanes = sorted({F.rref(F.nullspace([a])) for a in lines})
    for orb in line_orbits:
        for W in hyperplanes:
            normal = _normal(F, W)
            if any(F.dot(lines[i], normal) == 0 for i in orb):
                continue
            return _affine_witness(G, p, d, [lines[i] for i in orb], W)
    return None


def _normal(F, W) -> tuple[int, ...]:
    return F.nullspace(W)[0]


def _affine_witness(G: GroupSpec, p: int, d: int, orbit_lines, W) -> AffineResult:
    F = galois_field(p)
    n = G.degree
    dirs = set()
    for v in orbit_lines:
        for c in range(1, p):
            dirs.add(F.scale(c, v))
    vec = [affine_vector(p, d, x) for x in range(n)]
    graph = Graph.from_adjacency(n, lambda a, b: tuple((y - x) % p for x, y in zip(vec[a], vec[b])) in dirs)
    if not is_invariant(graph, G):
        raise AssertionError("affine witness graph is not invariant")
    ell = orbit_lines[0]
    clique = tuple(sorted(affine_index(p, F.scale(c, ell)) for c in range(p)))
    normal = _normal(F, W)
    col = Colouring.from_labels([F.dot(v, normal) for v in vec])
    why = check_certificate(graph, clique, col)
    if why is not None:
        raise AssertionError(f"affine witness certificate fails: {why}")
    span = " ".join("(" + ",".join(map(str, w)) + ")" for w in W)
    return AffineResult("non-synchronizing", "affine-test-2", graph, clique, col,
                        note=f"hyperplane spanned by {span} avoids an orbit of 1-spaces")


# -- the ladder ---------------------------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % f for f in range(2, int(n**0.5) + 1))


@dataclass
class _Pair:
    mask: tuple[int, ...]
    comp_mask: tuple[int, ...]
    graph: Graph
    comp: Graph
    omega: int | None = None
    alpha: int | None = None
    clique: tuple[int, ...] | None = None
    coclique: tuple[int, ...] | None = None


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.times: dict[str, int] = {}

    def run(self, key: str, fn: Callable):
        t = time.perf_counter()
        try:
            return fn()
        finally:
            if self.enabled:
                self.times[key] = self.times.get(key, 0) + round((time.perf_counter() - t) * 1000)


def _strategy_colourings(G: GroupSpec, graph: Graph, omega: int, alpha: int, s: Strategy, cfg: Config):
    """Yield (colouring or None, exhaustive) for one strategy."""
    if s.kind == "chromatic":
        yield chromatic_le(graph, omega, G, budget=cfg.budget(), split_depth=cfg.split_depth,
                           workers=cfg.threads, alpha=alpha), True
        return
    reps = conjugacy_class_reps(G, s.order, limit=s.max_classes if s.kind == "classwise" else 1)
    for g in reps:
        if s.kind == "exact-cover":
            inst = colouring_cover_instance(graph, G, (g,), alpha=alpha)
            parts = exact_cover_invariant(inst, budget=cfg.budget())
            yield (Colouring.from_classes(parts) if parts else None), False
        else:
            yield classwise_invariant_colouring(graph, [g], omega, budget=cfg.budget()), False


def classify(G: GroupSpec, lib: NonSyncLibrary | None = None, config: Config | None = None) -> ClassificationReport:
    cfg = config or Config()
    if lib is None:
        lib = NonSyncLibrary.seeded() if cfg.seed_library else NonSyncLibrary()
    timer = _Timer(cfg.record_timings)
    n = G.degree
    report = ClassificationReport(G.name, n, G.order())
    try:
        _ladder(G, lib, cfg, report, timer)
    except SearchBudgetExceeded as exc:
        report.status, report.rule = "unknown", "budget"
        report.notes.append(f"resource limit: {exc}")
    report.timings_ms = dict(sorted(timer.times.items())) if cfg.record_timings else {}
    return report


def _ladder(G: GroupSpec, lib: NonSyncLibrary, cfg: Config, report: ClassificationReport, timer: _Timer):
    n = G.degree
    if not G.is_transitive():
        raise GroupError("group is not transitive")
    if n <= 2 or _is_prime(n):
        report.status, report.rule = "separating", "prime-degree"
        return
    if not timer.run("primitivity", lambda: is_primitive(G)):
        report.status, report.rule = "unknown", "imprimitive"
        report.notes.append("group is imprimitive; imprimitive groups are never synchronizing, "
                            "the classification only covers primitive groups")
        return
    pair_orbits = timer.run("orbits", lambda: orbits_on_2subsets(G))
    m = len(pair_orbits)
    if m == 1:
        report.status, report.rule = "separating", "2-set-transitive"
        return
    # affine tests
    if G.onss_type == "affine" and G.affine_params is not None and G.affine_params[1] in (2, 3):
        res = timer.run("affine", lambda: affine_tests(G))
        if res is not None:
            report.status, report.rule = res.status, res.rule
            report.notes.append(res.note)
            if res.graph is not None:
                report.graph = res.graph
                report.witness = _witness(mask_of_graph(res.graph, pair_orbits), res.graph, len(res.clique),
                                          n // len(res.clique), res.clique, res.colouring)
                lib.add(LibraryEntry(res.graph, f"{G.name} affine witness", len(res.clique), res.clique,
                                     res.colouring))
            return
        report.notes.append("affine tests inconclusive")
    # library lookup
    full = (1 << m) - 1
    graphs: dict[int, Graph] = {}

    def orbital(code: int) -> Graph:
        if code not in graphs:
            graphs[code] = generalized_orbital_graph(G, [i for i in range(m) if code >> i & 1], pair_orbits)
        return graphs[code]

    def lookup():
        for code in range(1, full):
            hit = lib.match(orbital(code))
            if hit is not None:
                return code, hit
        return None

    found = timer.run("library", lookup) if lib.entries else None
    if found is not None:
        code, (entry, mapping) = found
        g = orbital(code)
        clique = tuple(sorted(mapping[v] for v in entry.clique))
        col = Colouring.from_classes([[mapping[v] for v in c] for c in entry.colouring.classes])
        why = check_certificate(g, clique, col)
        if why is not None:
            raise AssertionError(f"transported certificate fails: {why}")
        report.status, report.rule = "non-synchronizing", "library"
        report.graph = g
        report.witness = _witness(_bits(code, m), g, entry.omega, n // entry.omega, clique, col)
        report.notes.append(f"orbital graph isomorphic to library graph {entry.tag}")
        return
    # sweep complementary pairs
    hint = dict(G.hints)
    hint.update(cfg.hint_for(G.name, n))
    pairs = []
    for code in range(1, full):
        cc = full ^ code
        if code > cc:
            continue
        a, b = orbital(code), orbital(cc)
        if degree_of(a) > degree_of(b):
            a, b, code, cc = b, a, cc, code
        pairs.append(_Pair(_bits(code, m), _bits(cc, m), a, b))
    hint_deg = hint.get("degree")
    if hint_deg is not None:
        pairs.sort(key=lambda p: 0 if hint_deg in (degree_of(p.graph), degree_of(p.comp)) else 1)
    nonsep: list[_Pair] = []
    for pr in pairs:
        omega, clique = timer.run("clique", lambda: max_clique(pr.graph, G, budget=cfg.budget(),
                                                             split_depth=cfg.split_depth,
                                                             workers=cfg.threads))
        pr.omega, pr.clique = omega, clique.vertices
        if n % omega:
            report.notes.append(f"mask {_fmt(pr.mask)}: omega {omega} does not divide {n}")
            continue
        k = n // omega
        if hoffman_coclique_bound(pr.graph).bound < k:
            report.notes.append(f"mask {_fmt(pr.mask)}: omega {omega}, Hoffman bound below {k}")
            continue
        co = timer.run("coclique", lambda: has_clique_of_size(pr.comp, k, G, budget=cfg.budget(),
                                                              split_depth=cfg.split_depth,
                                                              workers=cfg.threads))
        if co is None:
            report.notes.append(f"mask {_fmt(pr.mask)}: omega {omega}, no coclique of size {k}")
            continue
        pr.alpha, pr.coclique = k, co.vertices
        report.notes.append(f"mask {_fmt(pr.mask)}: omega {omega} * alpha {k} = {n}, non-separating")
        nonsep.append(pr)
    if not nonsep:
        report.status, report.rule = "separating", "omega-product"
        return
    first = nonsep[0]
    report.graph = first.graph
    report.witness = _witness(first.mask, first.graph, first.omega, first.alpha, first.clique,
                              coclique=first.coclique)
    if G.onss_type not in ALMOST_SIMPLE_OR_UNKNOWN:
        # outside the almost simple case separating and synchronizing coincide
        report.status, report.rule = "non-synchronizing", "non-separating-type"
        report.notes.append(f"non-separating group of {G.onss_type} type")
        return
    # candidate graphs for chi = omega, both members of every non-separating pair
    cands = []
    for pr in nonsep:
        cands.append((pr.mask, pr.graph, pr.omega, pr.alpha, pr.clique))
        cands.append((pr.comp_mask, pr.comp, pr.alpha, pr.omega, pr.coclique))
    if hint_deg is not None:
        cands.sort(key=lambda c: 0 if degree_of(c[1]) == hint_deg else 1)
    exhaustive = True
    for mask, g, omega, alpha, clique in cands:
        decided = False
        for s in cfg.strategies:
            for col, full_search in timer.run("colouring", lambda: list(_strategy_colourings(
                    G, g, omega, alpha, s, cfg))):
                if col is not None:
                    why = check_certificate(g, clique, col)
                    if why is not None:
                        raise AssertionError(f"colouring certificate fails: {why}")
                    report.status, report.rule = "non-synchronizing", "colouring"
                    report.graph = g
                    report.witness = _witness(mask, g, omega, alpha, clique, col)
                    report.notes.append(f"mask {_fmt(mask)}: proper {omega}-colouring found ({s.kind})")
                    lib.add(LibraryEntry(g, f"{G.name} mask {_fmt(mask)}", omega, clique, col))
                    return
                decided = decided or full_search
        if decided:
            report.notes.append(f"mask {_fmt(mask)}: no proper {omega}-colouring")
        else:
            exhaustive = False
            report.notes.append(f"mask {_fmt(mask)}: colouring undecided by the configured strategies")
    if exhaustive:
        report.status, report.rule = "non-separating-synchronizing", "no-colouring"
    else:
        report.status, report.rule = "unknown", "colouring-undecided"


def _bits(code: int, m: int) -> tuple[int, ...]:
    return tuple(i for i in range(m) if code >> i & 1)


def _fmt(mask: Sequence[int]) -> str:
    return "[" + ",".join(str(i + 1) for i in mask) + "]"


# -- batches --------------------------------------------------------------------------------------------------


def batch_order(groups: Sequence[GroupSpec]) -> list[int]:
    """Indices by degree, then non-increasing order (ties keep input order)."""
    return sorted(range(len(groups)), key=lambda i: (groups[i].degree, -groups[i].order()))


def batch(groups: Sequence[GroupSpec], lib: NonSyncLibrary | None = None,
          config: Config | None = None) -> list[ClassificationReport]:
    cfg = config or Config()
    if lib is None:
        lib = NonSyncLibrary.seeded() if cfg.seed_library else NonSyncLibrary()
    reports = []
    for i in batch_order(groups):
        G = groups[i]
        try:
            reports.append(classify(G, lib, cfg))
        except (GroupError, ValueError, AssertionError) as exc:
            r = ClassificationReport(G.name, G.degree, 0, "unknown", "error")
            r.notes.append(str(exc))
            reports.append(r)
    return reports


def summary_csv(reports: Sequence[ClassificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "name", "order", "status", "rule", "deg", "omega"])
    for r in reports:
        w.writerow([r.degree, r.name or "", r.order, r.status, r.rule,
                    r.witness.get("graph_degree", ""), r.witness.get("omega", "") or ""])
    return buf.getvalue()
