"""Build every family and geometry graph at desk scale and re-check its certificate.

    python3 scripts/family_census.py

Prints vertices, degree, omega and the number of colour classes per graph,
with construction time.  Uncertified rows (larger q) only report structure.
"""

from __future__ import annotations

import time

from syncgroups.colouring import check_certificate
from syncgroups.families import hamming, johnson_distance_one, kneser_complement, partition_graph
from syncgroups.geometry import hermitian_point_graph, nu3_graph, pg3_line_graph, symplectic_complement_graph
from syncgroups.graphs import degree_of
from syncgroups.search import max_clique

BUILDS = [
    (hamming, (2, 3)), (hamming, (2, 4)), (hamming, (3, 3)), (hamming, (2, 5)), (hamming, (4, 3)),
    (kneser_complement, (4, 2)), (kneser_complement, (6, 2)), (kneser_complement, (6, 3)),
    (kneser_complement, (9, 3)), (kneser_complement, (12, 3)),
    (johnson_distance_one, (9,)),
    (partition_graph, (6, 2)), (partition_graph, (8, 2)), (partition_graph, (9, 3)),
    (pg3_line_graph, (2,)), (hermitian_point_graph, (2,)), (nu3_graph, (2,)), (nu3_graph, (3,)),
    (symplectic_complement_graph, (2,)), (symplectic_complement_graph, (4,)),
]

UNCERTIFIED = [(pg3_line_graph, (3,)), (johnson_distance_one, (13,))]


def main() -> int:
    bad = 0
    print(f"{'graph':<34} {'n':>5} {'deg':>5} {'omega':>5} {'classes':>7}  time")
    for build, params in BUILDS:
        t = time.perf_counter()
        fg = build(*params)
        dt = time.perf_counter() - t
        why = check_certificate(fg.graph, fg.clique, fg.colouring)
        bad += why is not None
        print(f"{fg.name:<34} {fg.graph.n:>5} {degree_of(fg.graph)!s:>5} {len(fg.clique):>5} "
              f"{fg.colouring.k:>7}  {dt:5.2f}s {'ok' if why is None else why}")
    for build, params in UNCERTIFIED:
        t = time.perf_counter()
        fg = build(*params, certify=False)
        omega = max_clique(fg.graph, fg.group)[0]
        dt = time.perf_counter() - t
        print(f"{fg.name:<34} {fg.graph.n:>5} {degree_of(fg.graph)!s:>5} {omega:>5} {'-':>7}  {dt:5.2f}s "
              "uncertified")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
