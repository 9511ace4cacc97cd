"""Scaled vector-weighted clique demonstration: pack the 35 lines of PG(3,2) into spreads.

    python3 scripts/spread_packing.py [--workers 1 4]

The 100 candidates are the 56 spreads, the 15 point stars, the 15 plane
rulings and 14 partial spreads.  Vertices of the weighted graph are the
candidates, adjacent when disjoint, weighted by their characteristic vectors
over the lines; the target is all ones.
"""

from __future__ import annotations

import argparse
import time
from itertools import combinations

from syncgroups.colouring import cover_as_weighted_graph
from syncgroups.field import GF, span_points
from syncgroups.geometry import pg3_line_graph
from syncgroups.graphs import complement
from syncgroups.search import all_cliques_of_size, vector_weighted_clique


def candidates() -> tuple[int, list[frozenset[int]], list[str]]:
    fg = pg3_line_graph(2, certify=False)
    lines = [frozenset(L) for L in fg.labels]
    comp = complement(fg.graph)
    spreads = [frozenset(c) for c in all_cliques_of_size(comp, 5)]
    points = sorted({p for L in lines for p in L})
    stars = [frozenset(i for i, L in enumerate(lines) if p in L) for p in points]
    F = GF(2)
    planes = set()
    for a, b, c in combinations(points, 3):
        P = frozenset(span_points(F, [a, b, c]))
        if len(P) == 7:
            planes.add(frozenset(i for i, L in enumerate(lines) if L <= P))
    partial = [frozenset(c) for c in all_cliques_of_size(comp, 3)][:14]
    cands = spreads + stars + sorted(planes, key=sorted) + partial
    kinds = ["spread"] * len(spreads) + ["star"] * len(stars) + ["plane"] * len(planes) + ["partial"] * 14
    return len(lines), cands, kinds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    args = ap.parse_args()
    n, cands, kinds = candidates()
    wg = cover_as_weighted_graph(n, [sum(1 << i for i in s) for s in cands])
    print(f"{len(cands)} candidates over {n} lines, {wg.graph.num_edges} disjoint pairs")
    answers = set()
    for w in args.workers:
        t = time.perf_counter()
        found = vector_weighted_clique(wg, (1,) * n, workers=w, split_depth=1 if w > 1 else 0)
        dt = time.perf_counter() - t
        answers.add(found)
        if found is None:
            print(f"workers {w}: absent ({dt:.3f}s)")
            continue
        print(f"workers {w}: candidates {[i + 1 for i in found.vertices]} "
              f"({', '.join(kinds[i] for i in found.vertices)}) in {dt:.3f}s")
    print("identical across worker counts" if len(answers) == 1 else "MISMATCH across worker counts")
    return 0 if len(answers) == 1 else 1


if __name__ == "__main__":
    raise SystemExit(main())
