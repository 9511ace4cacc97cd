"""Write the shipped fixtures: every catalogue group as .grp, the hints config,
and small solver inputs (Petersen graph, K6 one-factorization instances).

    python3 scripts/make_fixtures.py [--out fixtures]
"""

from __future__ import annotations

import argparse
import json
from itertools import combinations
from pathlib import Path

from syncgroups.catalogue import CATALOGUE
from syncgroups.colouring import CoverInstance, cover_as_weighted_graph
from syncgroups.formats import format_cover, format_dimacs, format_group, format_wclique
from syncgroups.graphs import Graph

HINTS = {"PGL(2, 13)@91": {"degree": 48}}


def petersen() -> Graph:
    pairs = list(combinations(range(5), 2))
    return Graph.from_adjacency(10, lambda a, b: not set(pairs[a]) & set(pairs[b]))


def k6_matchings() -> tuple[list[tuple[int, int]], list[int]]:
    """Edges of K6 and its 15 perfect matchings as bitmasks over the edges."""
    edges = list(combinations(range(6), 2))
    index = {e: i for i, e in enumerate(edges)}

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for b in rest[1:]:
            left = [x for x in rest if x not in (a, b)]
            for m in matchings(left):
                yield [(a, b)] + m

    masks = [sum(1 << index[e] for e in m) for m in matchings(list(range(6)))]
    return edges, masks


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for key, build in CATALOGUE.items():
        (out / f"{key}.grp").write_text(format_group(build()), encoding="utf-8")
    (out / "config.json").write_text(json.dumps({"hints": HINTS}, indent=2) + "\n", encoding="utf-8")
    (out / "petersen.dimacs").write_text(format_dimacs(petersen(), ["Petersen graph"]), encoding="utf-8")
    edges, masks = k6_matchings()
    wg = cover_as_weighted_graph(len(edges), masks)
    (out / "cover_instance.wcl").write_text(format_wclique(wg, (1,) * len(edges)), encoding="utf-8")
    seed = frozenset(i for i in range(len(edges)) if masks[0] >> i & 1)
    gens = []
    for g in ((1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)):
        gens.append(tuple(edges.index(tuple(sorted((g[a], g[b])))) for a, b in edges))
    inst = CoverInstance(len(edges), (seed,), tuple(gens))
    (out / "k6_matchings.cover").write_text(format_cover(inst), encoding="utf-8")
    print(f"wrote {len(CATALOGUE)} groups and 4 auxiliary files to {out}")


if __name__ == "__main__":
    main()
