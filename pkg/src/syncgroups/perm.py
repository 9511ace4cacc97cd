"""Permutation groups given by generators.

Permutations are plain tuples of images on ``range(n)`` and compose left to
right, so ``mul(g, h)`` maps ``x`` to ``h[g[x]]``.  Points are 0-based inside
the library; the text formats in :mod:`syncgroups.io` are 1-based.

:class:`StabChain` is a deterministic Schreier-Sims construction (no random
Schreier generators), with the base grown by the smallest moved point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]

ONSS_TYPES = ("affine", "almost-simple", "diagonal", "hamming-wreath", "unknown")


class GroupError(ValueError):
    """Raised for invalid group data or violated preconditions."""


class IndexTooLarge(GroupError):
    """Raised when a coset action would exceed the configured index bound."""


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(g: Perm) -> bool:
    return all(i == x for i, x in enumerate(g))


def mul(g: Perm, h: Perm) -> Perm:
    """Product ``g*h``: apply ``g`` first, then ``h``."""
    return tuple(map(h.__getitem__, g))


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def apply(g: Perm, x: int) -> int:
    if not 0 <= x < len(g):
        raise GroupError(f"point {x} out of range for degree {len(g)}")
    return g[x]


def power(g: Perm, k: int) -> Perm:
    if k < 0:
        g, k = inverse(g), -k
    result = identity(len(g))
    while k:
        if k & 1:
            result = mul(result, g)
        g = mul(g, g)
        k >>= 1
    return result


def cycles(g: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(g)
    out = []
    for i in range(len(g)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = g[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = g[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def perm_order(g: Perm) -> int:
    from math import lcm

    return lcm(*(len(c) for c in cycles(g))) if not is_identity(g) else 1


def from_cycles(n: int, cyc: Iterable[Sequence[int]]) -> Perm:
    img = list(range(n))
    for c in cyc:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    check_perm(img)
    return tuple(img)


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise GroupError("not a permutation")


def perm_from_map(points: Sequence, image) -> Perm:
    """Permutation of ``range(len(points))`` induced by ``image`` on ``points``.

    ``image`` must map each point to another member of ``points``.
    """
    index = {p: i for i, p in enumerate(points)}
    try:
        return tuple(index[image(p)] for p in points)
    except KeyError as exc:
        raise GroupError(f"image {exc.args[0]!r} is not a point of the domain") from None


# -- orbits ------------------------------------------------------------------


def orbit(gens: Sequence[Perm], x: int) -> list[int]:
    seen = {x}
    out = [x]
    for y in out:
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                out.append(z)
    return out


def orbits(gens: Sequence[Perm], n: int, points: Iterable[int] | None = None) -> list[list[int]]:
    """Orbits on ``points`` (default all), each sorted, ordered by minimum."""
    pts = range(n) if points is None else sorted(points)
    seen = set()
    out = []
    for x in pts:
        if x in seen:
            continue
        orb = orbit(gens, x)
        seen.update(orb)
        out.append(sorted(orb))
    return out


def set_orbit(gens: Sequence[Perm], s: Iterable[int]) -> list[frozenset[int]]:
    """Orbit of a point set under the group, in discovery order."""
    start = frozenset(s)
    seen = {start}
    out = [start]
    for t in out:
        for g in gens:
            u = frozenset(g[x] for x in t)
            if u not in seen:
                seen.add(u)
                out.append(u)
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


# -- stabilizer chains -----------------------------------------------------


class StabChain:
    """Base and strong generating set for ``<gens>``.

    ``level_gens[i]`` generates the pointwise stabilizer of ``base[:i]``;
    ``transversal[i]`` maps each point of the orbit of ``base[i]`` to an
    element carrying ``base[i]`` there.
    """

    def __init__(self, degree: int, gens: Iterable[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Perm] = []
        self.level_gens: list[list[Perm]] = []
        self.transversal: list[dict[int, Perm]] = []
        self._inv_transversal: list[dict[int, Perm]] = []
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != degree:
                raise GroupError(f"generator of degree {len(g)} in a group of degree {degree}")
        for b in base_prefix:
            self._add_level(b)
        self._schreier_sims([g for g in gens if not is_identity(g)])

    # construction

    def _add_level(self, b: int) -> None:
        self.base.append(b)
        self.level_gens.append([])
        self.transversal.append({b: identity(self.degree)})
        self._inv_transversal.append({b: identity(self.degree)})

    def _recompute(self, i: int) -> None:
        gens = self.level_gens[i]
        b = self.base[i]
        trans = {b: identity(self.degree)}
        queue = [b]
        for y in queue:
            u = trans[y]
            for g in gens:
                z = g[y]
                if z not in trans:
                    trans[z] = mul(u, g)
                    queue.append(z)
        self.transversal[i] = trans
        self._inv_transversal[i] = {z: inverse(u) for z, u in trans.items()}

    def _add_strong(self, h: Perm, upto: int) -> None:
        """Adjoin ``h`` to levels ``0..upto`` that it stabilizes."""
        self.strong.append(h)
        for j in range(upto + 1):
            if all(h[b] == b for b in self.base[:j]):
                self.level_gens[j].append(h)
                self._recompute(j)

    def _first_moved(self, h: Perm) -> int:
        for i, x in enumerate(h):
            if i != x:
                return i
        raise GroupError("identity has no moved point")

    def _schreier_sims(self, gens: list[Perm]) -> None:
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(self._first_moved(g))
        for g in gens:
            self._add_strong(g, len(self.base) - 1)
        checked: list[set] = [set() for _ in self.base]
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            trans = self.transversal[i]
            inv_trans = self._inv_transversal[i]
            for beta in list(trans):
                u = trans[beta]
                for g in list(self.level_gens[i]):
                    key = (beta, g)
                    if key in checked[i]:
                        continue
                    checked[i].add(key)
                    gamma = g[beta]
                    h = mul(mul(u, g), inv_trans[gamma])
                    if is_identity(h):
                        continue
                    residue, j = self.sift(h, start=i + 1)
                    if j < len(self.base) or not is_identity(residue):
                        if j == len(self.base):
                            self._add_level(self._first_moved(residue))
                            checked.append(set())
                        self._add_strong(residue, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    # queries

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            b = g[self.base[level]]
            inv_u = self._inv_transversal[level].get(b)
            if inv_u is None:
                return g, level
            g = mul(g, inv_u)
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        residue, j = self.sift(tuple(g))
        return j == len(self.base) and is_identity(residue)

    def order(self) -> int:
        return prod(len(t) for t in self.transversal)

    def stabilizer_gens(self, level: int = 1) -> list[Perm]:
        """Generators of the pointwise stabilizer of ``base[:level]``."""
        if level >= len(self.base):
            return []
        return list(self.level_gens[level])

    def elements(self) -> Iterator[Perm]:
        """All group elements (product of transversals)."""

        # every element is uniquely u_{k-1} * ... * u_1 * u_0 with u_i in transversal i
        def rec(level: int, acc: Perm) -> Iterator[Perm]:
            if level == len(self.base):
                yield acc
                return
            for u in self.transversal[level].values():
                yield from rec(level + 1, mul(u, acc))

        yield from rec(0, identity(self.degree))


# -- groups ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """A permutation group of degree ``degree`` with optional metadata."""

    degree: int
    generators: tuple[Perm, ...]
    name: str | None = None
    onss_type: str | None = None
    affine_params: tuple[int, int] | None = None
    hints: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.degree < 1:
            raise GroupError("degree must be positive")
        gens = tuple(tuple(g) for g in self.generators)
        if not gens:
            gens = (identity(self.degree),)
        for g in gens:
            if len(g) != self.degree:
                raise GroupError(f"generator has degree {len(g)}, expected {self.degree}")
            check_perm(g)
        object.__setattr__(self, "generators", gens)
        if self.onss_type is not None and self.onss_type not in ONSS_TYPES:
            raise GroupError(f"unknown O'Nan-Scott type tag {self.onss_type!r}")
        if self.affine_params is not None:
            p, d = self.affine_params
            if p**d != self.degree:
                raise GroupError(f"affine parameters {p}^{d} do not match degree {self.degree}")

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, self.generators)

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def orbit(self, x: int) -> list[int]:
        return orbit(self.generators, x)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def with_generators(self, gens: Iterable[Perm], name: str | None = None) -> "GroupSpec":
        return GroupSpec(self.degree, tuple(gens), name=name)


def group_order(G: GroupSpec) -> int:
    return G.order()


def stabilizer(G: GroupSpec, x: int) -> GroupSpec:
    """Point stabilizer ``G_x``, generated by reduced Schreier generators."""
    if not 0 <= x < G.degree:
        raise GroupError(f"point {x} out of range")
    chain = StabChain(G.degree, G.generators, base_prefix=(x,))
    gens = chain.stabilizer_gens(1)
    return GroupSpec(G.degree, tuple(gens) or (identity(G.degree),), name=None)


def pointwise_stabilizer(G: GroupSpec, points: Sequence[int]) -> list[Perm]:
    chain = StabChain(G.degree, G.generators, base_prefix=tuple(points))
    return chain.stabilizer_gens(len(points))


def _require_transitive(G: GroupSpec) -> None:
    if not G.is_transitive():
        raise GroupError("group is not transitive")


def pair_index(n: int, a: int, b: int) -> int:
    """Index of the 2-subset {a, b} in lexicographic order of pairs."""
    if a > b:
        a, b = b, a
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def orbits_on_2subsets(G: GroupSpec) -> list[list[tuple[int, int]]]:
    """G-orbits on unordered pairs, ordered by their lexicographically least pair."""
    _require_transitive(G)
    n = G.degree
    pairs = list(combinations(range(n), 2))
    uf = _UnionFind(len(pairs))
    for g in G.generators:
        for idx, (a, b) in enumerate(pairs):
            uf.union(idx, pair_index(n, g[a], g[b]))
    groups: dict[int, list[tuple[int, int]]] = {}
    for idx, pr in enumerate(pairs):
        groups.setdefault(uf.find(idx), []).append(pr)
    return sorted(groups.values(), key=lambda orb: orb[0])


def is_2set_transitive(G: GroupSpec) -> bool:
    return len(orbits_on_2subsets(G)) == 1


def minimal_block(G: GroupSpec, alpha: int, beta: int) -> list[int]:
    """Smallest block of imprimitivity containing ``alpha`` and ``beta``."""
    n = G.degree
    uf = _UnionFind(n)
    uf.union(alpha, beta)
    queue = deque([(alpha, beta)])
    while queue:
        a, b = queue.popleft()
        for g in G.generators:
            ga, gb = g[a], g[b]
            if uf.find(ga) != uf.find(gb):
                # record the merge so that its images are processed too
                queue.append((uf.find(ga), uf.find(gb)))
                uf.union(ga, gb)
    root = uf.find(alpha)
    return [x for x in range(n) if uf.find(x) == root]


def is_primitive(G: GroupSpec) -> bool:
    _require_transitive(G)
    n = G.degree
    if n <= 2:
        return True
    stab = stabilizer(G, 0)
    for orb in orbits(stab.generators, n):
        if orb[0] == 0:
            continue
        if len(minimal_block(G, 0, orb[0])) < n:
            return False
    return True


def coset_action(G: GroupSpec, H_generators: Sequence[Perm], max_index: int = 10_000,
                 name: str | None = None) -> GroupSpec:
    """Action of G on the right cosets of H; point 0 is the coset H itself.

    A coset ``Hg`` is identified by the set of images of G's base under
    ``Hg``; distinct cosets give disjoint sets, so the least image is a key.
    """
    H_generators = [tuple(h) for h in H_generators] or [identity(G.degree)]
    for h in H_generators:
        if not G.contains(h):
            raise GroupError("subgroup generator is not an element of G")
    H = StabChain(G.degree, H_generators)
    index, rem = divmod(G.order(), H.order())
    if rem:
        raise GroupError("subgroup order does not divide group order")
    if index > max_index:
        raise IndexTooLarge(f"index {index} exceeds bound {max_index}")
    base = G.chain.base
    base_images = [tuple(h[b] for b in base) for h in H.elements()]

    def key(g: Perm) -> tuple[int, ...]:
        return min(tuple(g[x] for x in t) for t in base_images)

    reps = [identity(G.degree)]
    lookup = {key(reps[0]): 0}
    images: list[list[int]] = [[] for _ in G.generators]
    for rep in reps:
        for j, x in enumerate(G.generators):
            g = mul(rep, x)
            k = key(g)
            if k not in lookup:
                lookup[k] = len(reps)
                reps.append(g)
            images[j].append(lookup[k])
    if len(reps) != index:
        raise GroupError("coset enumeration did not close (internal error)")
    return GroupSpec(index, tuple(tuple(im) for im in images), name=name)


def enumerate_elements(G: GroupSpec, limit: int = 1_000_000) -> list[Perm]:
    """Brute-force closure of the generators; independent of :class:`StabChain`."""
    e = identity(G.degree)
    seen = {e}
    out = [e]
    for x in out:
        for g in G.generators:
            y = mul(x, g)
            if y not in seen:
                if len(out) >= limit:
                    raise GroupError("element enumeration limit exceeded")
                seen.add(y)
                out.append(y)
    return out


def is_permutation_isomorphic_by(G: GroupSpec, K: GroupSpec, bijection: Sequence[int]) -> bool:
    """True if relabelling G's points by ``bijection`` gives exactly the group K."""
    if G.degree != K.degree or G.order() != K.order():
        return False
    inv = inverse(tuple(bijection))
    for g in G.generators:
        if not K.contains(mul(mul(inv, g), tuple(bijection))):
            return False
    return True


def conjugacy_class_reps(G: GroupSpec, order: int, limit: int | None = None) -> list[Perm]:
    """Representatives of the conjugacy classes of elements of the given order.

    Elements are scanned in :meth:`StabChain.elements` order and the first
    element met in each class is its representative.
    """
    seen: set[Perm] = set()
    reps: list[Perm] = []
    gens = list(G.generators)
    for g in G.chain.elements():
        if g in seen or perm_order(g) != order:
            continue
        reps.append(g)
        cls = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = mul(mul(inverse(s), x), s)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        seen |= cls
        if limit is not None and len(reps) >= limit:
            break
    return reps
