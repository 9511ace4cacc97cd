"""Command-line interface: ``syncgroups <command> ...``.

Exit codes: 0 decided / verified, 1 error, 2 undecided or budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .colouring import (Colouring, chromatic_le, exact_cover_invariant, find_colouring_defect,
                        parse_colouring)
from .config import ConfigError, load_config
from .families import CertificateError, FamilyError, FamilyGraph
from .formats import (FormatError, format_dimacs, parse_cover, parse_dimacs, parse_group,
                      parse_wclique)
from .graphs import Graph, GraphError, degree_of, generalized_orbital_graph
from .perm import GroupError, orbits_on_2subsets
from .pipeline import STATUSES, ClassificationReport, NonSyncLibrary, batch, classify, summary_csv
from .search import (Budget, SearchBudgetExceeded, has_clique_of_size, max_clique,
                     vector_weighted_clique)

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2


# -- certificates -----------------------------------------------------------------------------------


def certificate(kind: str, graph: Graph, generators=(), **parts) -> dict:
    """JSON certificate; every vertex list is 1-based."""
    doc = {"kind": kind, "n": graph.n, "edges": [[a + 1, b + 1] for a, b in graph.edges()],
           "generators": [[x + 1 for x in g] for g in generators]}
    for key, val in parts.items():
        if isinstance(val, Colouring):
            doc[key] = val.to_json()
        elif val is not None:
            doc[key] = [v + 1 for v in val]
    return doc


def check_certificate_doc(doc: dict) -> list[str]:
    """Independent re-check of a certificate document; returns the violations."""
    problems = []
    n = doc["n"]
    adj = [set() for _ in range(n)]
    for a, b in doc["edges"]:
        if a == b or not (1 <= a <= n and 1 <= b <= n):
            problems.append(f"bad edge {{{a}, {b}}}")
            continue
        adj[a - 1].add(b - 1)
        adj[b - 1].add(a - 1)
    edges = {frozenset((a - 1, b - 1)) for a, b in doc["edges"]}
    for g in doc.get("generators", []):
        if sorted(g) != list(range(1, n + 1)):
            problems.append("generator is not a permutation")
            continue
        if {frozenset((g[a] - 1, g[b] - 1)) for a, b in (tuple(e) for e in edges)} != edges:
            problems.append("graph is not invariant under a generator")
    clique = [v - 1 for v in doc.get("clique", [])]
    for i, a in enumerate(clique):
        for b in clique[i + 1:]:
            if b not in adj[a]:
                problems.append(f"clique vertices {a + 1} and {b + 1} are not adjacent")
    if "coclique" in doc:
        co = [v - 1 for v in doc["coclique"]]
        for i, a in enumerate(co):
            for b in co[i + 1:]:
                if b in adj[a]:
                    problems.append(f"coclique vertices {a + 1} and {b + 1} are adjacent")
        if len(clique) * len(co) != n:
            problems.append(f"clique size {len(clique)} times coclique size {len(co)} is not {n}")
    if "colouring" in doc:
        classes = doc["colouring"]
        seen = sorted(v for c in classes for v in c)
        if seen != list(range(1, n + 1)):
            problems.append("colour classes do not partition the vertex set")
        for i, c in enumerate(classes):
            members = set(v - 1 for v in c)
            for v in members:
                bad = adj[v] & members if 0 <= v < n else set()
                if bad:
                    a, b = sorted((v, min(bad)))
                    problems.append(f"edge {{{a + 1}, {b + 1}}} inside class {i + 1}")
                    break
        if doc["kind"] in ("non-synchronizing", "colouring") and len(classes) != len(clique):
            problems.append(f"{len(classes)} colour classes but clique of size {len(clique)}")
    if doc["kind"] == "non-synchronizing":
        if not edges or len(edges) == n * (n - 1) // 2:
            problems.append("graph is null or complete")
    return problems


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- commands -----------------------------------------------------------------------------------------


FAMILY_ALIASES = {
    "hamming": ("hamming", ("d", "m")),
    "kneser-c": ("kneser_complement", ("n", "k")),
    "johnson1": ("johnson_distance_one", ("n",)),
    "partition": ("partition_graph", ("n", "k")),
    "pg3-lines": ("pg3_line_graph", ("q",)),
    "hermitian": ("hermitian_point_graph", ("q",)),
    "nu3": ("nu3_graph", ("q",)),
    "sp-complement": ("symplectic_complement_graph", ("q",)),
}


def cmd_family(args) -> int:
    from .families import FAMILIES
    from .geometry import GEOMETRIES
    key = args.name.replace("_", "-")
    if key not in FAMILY_ALIASES:
        raise FamilyError(f"unknown family {args.name!r}; known: {', '.join(FAMILY_ALIASES)}")
    func_name, params = FAMILY_ALIASES[key]
    values = []
    for p in params:
        v = getattr(args, p)
        if v is None:
            raise FamilyError(f"family {key} needs --{p}")
        values.append(v)
    build = {**FAMILIES, **GEOMETRIES}[func_name]
    fg: FamilyGraph = build(*values, certify=not args.no_certify)
    stem = Path(args.out) / f"{key}_{'_'.join(map(str, values))}"
    header = [f"{fg.name}", "vertices numbered as in the .labels file"]
    _write(stem.with_suffix(".dimacs"), format_dimacs(fg.graph, header))
    _write(stem.with_suffix(".labels"), "\n".join(fg.label_lines()) + "\n")
    if fg.colouring is not None:
        _write(stem.with_suffix(".col"), "\n".join(fg.colouring.lines()) + "\n")
    if fg.certified:
        gens = fg.group.generators if fg.group is not None else ()
        _write(stem.with_suffix(".cert.json"),
               _dump(certificate("colouring", fg.graph, gens, clique=fg.clique, colouring=fg.colouring)))
    print(f"{fg.name}: {fg.graph.n} vertices, degree {degree_of(fg.graph)}, "
          f"omega {fg.expected_omega}, certified {fg.certified}")
    return EXIT_OK


def cmd_orbitals(args) -> int:
    G = parse_group(Path(args.group))
    orbs = orbits_on_2subsets(G)
    n = G.degree
    print(f"degree {n}, order {G.order()}, m = {len(orbs)}")
    for i, o in enumerate(orbs):
        print(f"orbit {i + 1}: {len(o)} pairs, valency {2 * len(o) // n}, least pair "
              f"{{{o[0][0] + 1}, {o[0][1] + 1}}}")
    if args.mask:
        mask = [int(t) - 1 for t in args.mask.split(",")]
        g = generalized_orbital_graph(G, mask, orbs)
        out = Path(args.out) / f"{Path(args.group).stem}_mask_{'_'.join(str(i + 1) for i in mask)}.dimacs"
        _write(out, format_dimacs(g, [f"generalized orbital graph, orbits {args.mask}"]))
        print(f"wrote {out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    budget = Budget(args.node_budget, args.time_budget)
    result = Path(args.out) / f"{Path(args.file).stem}.{args.problem}.txt"
    if args.problem == "wclique":
        wg, target = parse_wclique(Path(args.file))
        found = vector_weighted_clique(wg, target, budget=budget, workers=args.threads)
        if found is None:
            print("no clique with the target weight")
            _write(result, "absent\n")
            return EXIT_OK
        line = "clique: " + " ".join(str(v + 1) for v in found.vertices)
        print(line)
        _write(result, line + "\n")
        return EXIT_OK
    if args.problem == "cover":
        inst = parse_cover(Path(args.file))
        parts = exact_cover_invariant(inst, budget=budget)
        text = "absent\n" if parts is None else "".join(
            "part: " + " ".join(str(x + 1) for x in p) + "\n" for p in parts)
        print(text, end="")
        _write(result, text)
        return EXIT_OK
    graph = parse_dimacs(Path(args.file))
    sym = parse_group(Path(args.group)) if args.group else None
    if args.problem == "clique":
        omega, w = max_clique(graph, sym, budget=budget, workers=args.threads,
                              split_depth=1 if args.threads > 1 else 0)
        text = f"omega {omega}\nclique: " + " ".join(str(v + 1) for v in w.vertices) + "\n"
    elif args.problem == "kclique":
        if args.k is None:
            raise ValueError("kclique needs --k")
        w = has_clique_of_size(graph, args.k, sym, budget=budget)
        text = "absent\n" if w is None else "clique: " + " ".join(str(v + 1) for v in w.vertices) + "\n"
    else:
        if args.k is None:
            raise ValueError("chroma needs --k")
        col = chromatic_le(graph, args.k, sym, budget=budget)
        text = "absent\n" if col is None else "\n".join(col.lines()) + "\n"
    print(text, end="")
    _write(result, text)
    return EXIT_OK


def _config(args):
    return load_config(args.config, threads=args.threads, library_dir=getattr(args, "library", None))


def _library(cfg) -> NonSyncLibrary:
    if cfg.library_dir and (Path(cfg.library_dir) / NonSyncLibrary.FILE).exists():
        return NonSyncLibrary.load(cfg.library_dir)
    return NonSyncLibrary.seeded() if cfg.seed_library else NonSyncLibrary()


def _emit_report(report: ClassificationReport, G, out: Path, stem: str) -> None:
    _write(out / f"{stem}.report.json", report.to_json())
    g = report.graph
    if g is None:
        return
    w = report.witness
    parts = {"clique": [v - 1 for v in w["clique"]] if w.get("clique") else None}
    if report.status == "non-synchronizing" and w.get("colouring"):
        parts["colouring"] = Colouring.from_classes([[v - 1 for v in c] for c in w["colouring"]])
        kind = "non-synchronizing"
    else:
        if "coclique" not in w:
            return
        parts["coclique"] = [v - 1 for v in w["coclique"]]
        kind = "non-separating"
    _write(out / f"{stem}.cert.json", _dump(certificate(kind, g, G.generators, **parts)))


def cmd_classify(args) -> int:
    cfg = _config(args)
    G = parse_group(Path(args.group))
    lib = _library(cfg)
    report = classify(G, lib, cfg)
    out = Path(args.out)
    _emit_report(report, G, out, Path(args.group).stem)
    if cfg.library_dir:
        lib.save(cfg.library_dir)
    print(f"{report.name}: {report.status} ({report.rule})")
    return EXIT_OK if report.decided else EXIT_UNDECIDED


def cmd_batch(args) -> int:
    cfg = _config(args)
    files = [Path(f) for f in args.groups]
    if args.dir:
        files += sorted(Path(args.dir).glob("*.grp"))
    groups = [parse_group(f) for f in files]
    lib = _library(cfg)
    reports = batch(groups, lib, cfg)
    out = Path(args.out)
    order = sorted(range(len(groups)), key=lambda i: (groups[i].degree, -groups[i].order()))
    for i, report in zip(order, reports):
        _emit_report(report, groups[i], out, files[i].stem)
        print(f"{report.degree:5d} {report.name}: {report.status} ({report.rule})")
    _write(out / "summary.csv", summary_csv(reports))
    if cfg.library_dir:
        lib.save(cfg.library_dir)
    return EXIT_OK if all(r.decided for r in reports) else EXIT_UNDECIDED


def check_report_doc(doc: dict) -> list[str]:
    """Arithmetic checks on a classification report's witness."""
    problems = []
    n, w = doc["degree"], doc.get("witness") or {}
    if doc["status"] not in STATUSES:
        problems.append(f"unknown status {doc['status']!r}")
    omega, alpha = w.get("omega"), w.get("alpha")
    if omega and alpha and omega * alpha != n:
        problems.append(f"omega {omega} times alpha {alpha} is not {n}")
    if w.get("clique") and omega and len(w["clique"]) != omega:
        problems.append(f"clique has {len(w['clique'])} vertices, omega is {omega}")
    if w.get("coclique") and alpha and len(w["coclique"]) != alpha:
        problems.append(f"coclique has {len(w['coclique'])} vertices, alpha is {alpha}")
    if w.get("colouring"):
        classes = w["colouring"]
        if sorted(v for c in classes for v in c) != list(range(1, n + 1)):
            problems.append("colour classes do not partition the points")
        if omega and len(classes) != omega:
            problems.append(f"{len(classes)} colour classes, omega is {omega}")
    if doc["status"] == "non-synchronizing" and not w.get("colouring"):
        if doc["rule"] != "non-separating-type":
            problems.append("non-synchronizing report without a colouring")
        elif not w.get("coclique"):
            problems.append("non-separating-type report without a clique-coclique pair")
    return problems


def _verify_file(p: Path) -> tuple[str, list[str]]:
    name = p.name
    if name.endswith(".cert.json"):
        doc = json.loads(p.read_text(encoding="utf-8"))
        return doc["kind"], check_certificate_doc(doc)
    if name.endswith(".report.json"):
        doc = json.loads(p.read_text(encoding="utf-8"))
        problems = check_report_doc(doc)
        cert = p.with_name(name[: -len(".report.json")] + ".cert.json")
        if cert.exists():
            problems += check_certificate_doc(json.loads(cert.read_text(encoding="utf-8")))
        return f"report {doc['status']}", problems
    if p.suffix == ".dimacs":
        graph = parse_dimacs(p)
        col_file = p.with_suffix(".col")
        if not col_file.exists():
            return f"graph on {graph.n} vertices", []
        col = parse_colouring(col_file.read_text(encoding="utf-8").splitlines())
        why = find_colouring_defect(graph, col)
        return f"proper {col.k}-colouring", [] if why is None else [why]
    if p.suffix == ".grp":
        G = parse_group(p)
        return f"group of degree {G.degree}", []
    raise ValueError(f"{p}: not a verifiable artifact")


VERIFY_PATTERNS = ("*.cert.json", "*.report.json", "*.dimacs")


def cmd_verify(args) -> int:
    failures = 0
    checked = 0
    if args.graph or args.colouring:
        if not (args.graph and args.colouring):
            raise ValueError("--graph and --colouring go together")
        graph = parse_dimacs(Path(args.graph))
        col = parse_colouring(Path(args.colouring).read_text(encoding="utf-8").splitlines())
        why = find_colouring_defect(graph, col)
        checked += 1
        if why is not None:
            print(f"FAIL {args.colouring}: {why}")
            failures += 1
        else:
            print(f"ok   {args.colouring}: proper {col.k}-colouring")
    paths = []
    for p in map(Path, args.paths):
        if p.is_dir():
            paths += sorted({f for pat in VERIFY_PATTERNS for f in p.glob(pat)})
        else:
            paths.append(p)
    for p in paths:
        what, problems = _verify_file(p)
        checked += 1
        if problems:
            failures += 1
            print(f"FAIL {p}: " + "; ".join(problems))
        else:
            print(f"ok   {p}: {what}")
    if checked == 0:
        raise ValueError("nothing to verify")
    return EXIT_OK if failures == 0 else EXIT_ERROR


# -- parser ------------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="directory for all artifacts")
    common.add_argument("--threads", type=int, default=1)
    ap = argparse.ArgumentParser(prog="syncgroups", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", parents=[common], help="build a family or geometry graph")
    f.add_argument("name", help=", ".join(FAMILY_ALIASES))
    for p in ("d", "m", "n", "k", "q"):
        f.add_argument(f"--{p}", type=int)
    f.add_argument("--no-certify", action="store_true", help="skip the certificate (any parameters)")
    f.set_defaults(func=cmd_family)

    o = sub.add_parser("orbitals", parents=[common], help="list pair-orbits, optionally write one orbital graph")
    o.add_argument("--group", required=True)
    o.add_argument("--mask", help="comma-separated 1-based orbit numbers")
    o.set_defaults(func=cmd_orbitals)

    s = sub.add_parser("solve", parents=[common], help="run a solver on a graph or instance file")
    s.add_argument("problem", choices=["clique", "kclique", "wclique", "chroma", "cover"])
    s.add_argument("--file", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--group", help="optional .grp of graph automorphisms for symmetry pruning")
    s.add_argument("--node-budget", type=int)
    s.add_argument("--time-budget", type=float)
    s.set_defaults(func=cmd_solve)

    for name, func, help_ in (("classify", cmd_classify, "classify one group"),
                              ("batch", cmd_batch, "classify many groups in catalogue order")):
        c = sub.add_parser(name, parents=[common], help=help_)
        if name == "classify":
            c.add_argument("--group", required=True)
        else:
            c.add_argument("groups", nargs="*")
            c.add_argument("--dir", help="classify every .grp in this directory")
        c.add_argument("--config")
        c.add_argument("--library", help="library directory (loaded if present, saved after)")
        c.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common], help="re-check certificates")
    v.add_argument("paths", nargs="*", help="certificate files or directories of *.cert.json")
    v.add_argument("--graph", help="DIMACS graph for --colouring")
    v.add_argument("--colouring", help="colouring file with 'class i:' lines")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (FormatError, FamilyError, CertificateError, ConfigError, GroupError, GraphError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
