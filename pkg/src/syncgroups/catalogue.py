"""Constructions of the desk-scale primitive groups used in tests and fixtures.

Each builder returns a :class:`GroupSpec` with name, O'Nan-Scott tag and
(where useful) a hint.  Matrix groups act on row vectors, ``v -> v A``.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Sequence

from .field import GF, field, projective_points
from .perm import (GroupSpec, Perm, StabChain, coset_action, from_cycles, identity, mul,
                   perm_from_map, perm_order)


def small_generating_set(degree: int, gens: Sequence[Perm], order: int | None = None) -> list[Perm]:
    """Greedy sub-list of ``gens`` generating the same group (deterministic)."""
    full = StabChain(degree, gens).order() if order is None else order
    chosen: list[Perm] = []
    current = 1
    for g in gens:
        if chosen and StabChain(degree, chosen).contains(g):
            continue
        chosen.append(g)
        current = StabChain(degree, chosen).order()
        if current == full:
            break
    return chosen


# -- permutation groups ------------------------------------------------------------


def cyclic(n: int) -> GroupSpec:
    return GroupSpec(n, (from_cycles(n, [tuple(range(n))]),), name=f"C({n})")


def dihedral(n: int) -> GroupSpec:
    refl = tuple((-i) % n for i in range(n))
    return GroupSpec(n, (from_cycles(n, [tuple(range(n))]), refl), name=f"D({2 * n})")


def symmetric(n: int) -> GroupSpec:
    if n == 1:
        return GroupSpec(1, (identity(1),), name="Sym(1)")
    return GroupSpec(n, (from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])), name=f"Sym({n})",
                     onss_type="almost-simple" if n >= 5 else None)


def alternating(n: int) -> GroupSpec:
    gens = [from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return GroupSpec(n, tuple(gens), name=f"Alt({n})")


def induced_action(G: GroupSpec, objects: Sequence, image: Callable[[Perm, object], object],
                   **meta) -> GroupSpec:
    """Action of G on ``objects``, where ``image(g, obj)`` is the image object."""
    gens = tuple(perm_from_map(objects, lambda o, g=g: image(g, o)) for g in G.generators)
    return GroupSpec(len(objects), gens, **meta)


def on_ksubsets(G: GroupSpec, k: int, **meta) -> GroupSpec:
    subsets = list(combinations(range(G.degree), k))
    return induced_action(G, subsets, lambda g, s: tuple(sorted(g[x] for x in s)), **meta)


def sym_on_ksubsets(n: int, k: int) -> GroupSpec:
    return on_ksubsets(symmetric(n), k, name=f"Sym({n}) on {k}-sets",
                       onss_type="almost-simple" if n >= 5 else "unknown")


def product_action(m: int, d: int) -> GroupSpec:
    """Sym(m) wr Sym(d) on the m^d words of length d, words in lexicographic order."""
    words = list(product(range(m), repeat=d))
    index = {w: i for i, w in enumerate(words)}
    gens = []
    for g in symmetric(m).generators:
        gens.append(tuple(index[(g[w[0]],) + w[1:]] for w in words))
    if d > 1:
        for h in symmetric(d).generators:
            gens.append(tuple(index[tuple(w[h[j]] for j in range(d))] for w in words))
    return GroupSpec(len(words), tuple(gens), name=f"Sym({m}) wr Sym({d})", onss_type="hamming-wreath")


# -- projective linear groups -----------------------------------------------------------


def gl_generators(F: GF, n: int) -> list[tuple]:
    """Elementary transvections next to the diagonal plus a primitive diagonal element."""
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gens = []
    for i in range(n - 1):
        for a, b in ((i, i + 1), (i + 1, i)):
            m = [row[:] for row in eye]
            m[a][b] = 1
            gens.append(tuple(map(tuple, m)))
    d = [row[:] for row in eye]
    d[0][0] = F.primitive
    gens.append(tuple(map(tuple, d)))
    return gens


def point_map(F: GF, A, frob: int = 0) -> Callable:
    def f(v):
        if frob:
            v = tuple(F.frobenius(x, frob) for x in v)
        return F.normalize(F.vec_mat(v, A))
    return f


def projective_group_on_points(F: GF, dim: int, matrices, frob: bool = False):
    pts = projective_points(F, dim)
    gens = [perm_from_map(pts, point_map(F, A)) for A in matrices]
    if frob:
        gens.append(perm_from_map(pts, lambda v: tuple(F.frobenius(x) for x in v)))
    return pts, gens


def pgl2_natural(p: int) -> GroupSpec:
    """PGL(2, p) on the p+1 points of the projective line (``p`` prime)."""
    F = field(p)
    pts, gens = projective_group_on_points(F, 1, gl_generators(F, 2))
    return GroupSpec(len(pts), tuple(small_generating_set(len(pts), gens)), name=f"PGL(2, {p})",
                     onss_type="almost-simple" if p > 3 else None)


def pgl2_on_conjugate_pairs(p: int) -> GroupSpec:
    """PGL(2, p) on the p(p-1)/2 Frobenius-conjugate pairs of PG(1, p^2) off PG(1, p).

    The stabilizer of a pair is dihedral of order 2(p+1).
    """
    F = field(p * p)
    sub = [x for x in range(F.q) if F.frobenius(x) == x]
    pairs = sorted({tuple(sorted((z, F.frobenius(z)))) for z in range(F.q) if z not in sub})

    def mobius(a, b, c, d):
        def f(pair):
            out = []
            for z in pair:
                num = F.add(F.mul(a, z), b)
                den = F.add(F.mul(c, z), d)
                out.append(F.div(num, den))
            return tuple(sorted(out))
        return f

    # embed GF(p) coefficients: the prime subfield is 0..p-1 in this encoding
    prim = field(p).primitive
    maps = [mobius(1, 1, 0, 1), mobius(prim, 0, 0, 1), mobius(0, F.neg(1), 1, 0)]
    gens = tuple(perm_from_map(pairs, f) for f in maps)
    return GroupSpec(len(pairs), gens, name=f"PGL(2, {p})", onss_type="almost-simple")


def octahedral_subgroup(G: GroupSpec) -> list[Perm]:
    """Generators ``a, b`` of a subgroup Sym(4) of G with ``a^4 = b^3 = (ab)^2 = 1``.

    Elements are scanned in the order of :meth:`StabChain.elements`, so the
    choice is deterministic.
    """
    elems = list(G.chain.elements())
    fours = [g for g in elems if perm_order(g) == 4]
    threes = [g for g in elems if perm_order(g) == 3]
    for a in fours:
        for b in threes:
            if perm_order(mul(a, b)) == 2 and StabChain(G.degree, [a, b]).order() == 24:
                return [a, b]
    raise ValueError(f"{G.name} has no subgroup Sym(4)")


def pgl2_on_octahedral_cosets(p: int) -> GroupSpec:
    """PGL(2, p) on the cosets of a subgroup Sym(4) (``p`` an odd prime > 3)."""
    G = pgl2_natural(p)
    H = coset_action(G, octahedral_subgroup(G), name=f"PGL(2, {p})")
    return GroupSpec(H.degree, H.generators, name=H.name, onss_type="almost-simple")


def _polarity_flag_action(F: GF, matrices, frob: bool, incident: bool):
    """PGL(3,q) (optionally with field automorphisms) and the standard polarity,
    acting on flags (``incident``) or antiflags of PG(2, q).
    Points are row vectors, lines are normalized dual vectors; incidence is p.L = 0.
    """
    pts = projective_points(F, 2)
    objs = [(x, L) for x in pts for L in pts if (F.dot(x, L) == 0) == incident]
    gens = []
    for A in matrices:
        Ainv_t = tuple(zip(*F.mat_inv(A)))  # lines transform by (A^-1)^T on row vectors

        def f(o, A=A, Ainv_t=Ainv_t):
            x, L = o
            return F.normalize(F.vec_mat(x, A)), F.normalize(F.vec_mat(L, Ainv_t))
        gens.append(perm_from_map(objs, f))
    if frob:
        gens.append(perm_from_map(objs, lambda o: (tuple(F.frobenius(a) for a in o[0]),
                                                   tuple(F.frobenius(a) for a in o[1]))))
    gens.append(perm_from_map(objs, lambda o: (o[1], o[0])))
    return objs, gens


def psl33_2_on_flags() -> GroupSpec:
    F = field(3)
    objs, gens = _polarity_flag_action(F, gl_generators(F, 3), False, True)
    return GroupSpec(len(objs), tuple(small_generating_set(len(objs), gens)), name="PSL(3, 3).2",
                     onss_type="almost-simple")


def psl33_2_on_antiflags() -> GroupSpec:
    F = field(3)
    objs, gens = _polarity_flag_action(F, gl_generators(F, 3), False, False)
    return GroupSpec(len(objs), tuple(small_generating_set(len(objs), gens)), name="PSL(3, 3).2",
                     onss_type="almost-simple")


def psl34_d12_on_flags() -> GroupSpec:
    F = field(4)
    objs, gens = _polarity_flag_action(F, gl_generators(F, 3), True, True)
    return GroupSpec(len(objs), tuple(small_generating_set(len(objs), gens)), name="PSL(3, 4).D_12",
                     onss_type="almost-simple")


def sym8_on_pgl27_cosets() -> GroupSpec:
    """Sym(8) on the 120 cosets of PGL(2, 7) acting on the projective line."""
    S8 = symmetric(8)
    H = pgl2_natural(7)
    return GroupSpec(**_spec_fields(coset_action(S8, H.generators)), name="Sym(8)",
                     onss_type="almost-simple")


def _spec_fields(G: GroupSpec) -> dict:
    return {"degree": G.degree, "generators": G.generators}


# -- symplectic and unitary groups --------------------------------------------------------------


def symplectic_form(F: GF, u, v) -> int:
    """x1 y2 - x2 y1 + x3 y4 - x4 y3."""
    t1 = F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))
    t2 = F.sub(F.mul(u[2], v[3]), F.mul(u[3], v[2]))
    return F.add(t1, t2)


def symplectic_transvection(F: GF, v, c: int = 1):
    """Matrix of x -> x + c B(x, v) v."""
    rows = []
    for i in range(4):
        e = tuple(1 if j == i else 0 for j in range(4))
        coeff = F.mul(c, symplectic_form(F, e, v))
        rows.append(F.vec_add(e, F.scale(coeff, v)))
    return tuple(rows)


def w3q_lines(F: GF) -> list[tuple]:
    """Totally isotropic lines of W(3, q) as sorted tuples of points."""
    pts = projective_points(F, 3)
    lines = set()
    from .field import span_points
    for a, b in combinations(pts, 2):
        if symplectic_form(F, a, b) == 0:
            lines.add(tuple(span_points(F, [a, b])))
    return sorted(lines)


def psp4_on_w3q_lines(q: int, similitude: bool = False) -> GroupSpec:
    """PSp(4, q) (or PGSp(4, q) when ``similitude``) on lines of W(3, q),
    equivalently on the points of the parabolic quadric Q(4, q)."""
    F = field(q)
    pts = projective_points(F, 3)
    lines = w3q_lines(F)
    mats = [symplectic_transvection(F, v) for v in pts]
    if similitude:
        mats.append(((F.primitive, 0, 0, 0), (0, 1, 0, 0), (0, 0, F.primitive, 0), (0, 0, 0, 1)))

    def line_map(A):
        f = point_map(F, A)
        return lambda L: tuple(sorted(f(x) for x in L))

    gens = [perm_from_map(lines, line_map(A)) for A in mats]
    name = f"PSp(4, {q}):2" if similitude else f"PSp(4, {q})"
    return GroupSpec(len(lines), tuple(small_generating_set(len(lines), gens)), name=name,
                     onss_type="almost-simple")


def psp4_on_w3q_points(q: int) -> GroupSpec:
    F = field(q)
    pts = projective_points(F, 3)
    mats = [symplectic_transvection(F, v) for v in pts]
    gens = [perm_from_map(pts, point_map(F, A)) for A in mats]
    return GroupSpec(len(pts), tuple(small_generating_set(len(pts), gens)), name=f"PSp(4, {q})",
                     onss_type="almost-simple")


def hermitian_form3(F: GF, q: int, u, v) -> int:
    """x1 y2^q + x2 y1^q + x3 y3^q over GF(q^2)."""
    c = lambda a: F.pow(a, q)
    return F.add(F.add(F.mul(u[0], c(v[1])), F.mul(u[1], c(v[0]))), F.mul(u[2], c(v[2])))


def unitary_reflections(F: GF, q: int) -> list[tuple]:
    """Quasi-reflections x -> x + (l - 1) h(x, v)/h(v, v) v for non-isotropic v."""
    lam = F.pow(F.primitive, q - 1)  # generator of the norm-1 group
    mats = []
    for v in projective_points(F, 2):
        hv = hermitian_form3(F, q, v, v)
        if hv == 0:
            continue
        coeff = F.div(F.sub(lam, 1), hv)
        rows = []
        for i in range(3):
            e = tuple(1 if j == i else 0 for j in range(3))
            rows.append(F.vec_add(e, F.scale(F.mul(coeff, hermitian_form3(F, q, e, v)), v)))
        mats.append(tuple(rows))
    return mats


def unitary_frames(q: int) -> list[tuple]:
    F = field(q * q)
    non_iso = [v for v in projective_points(F, 2) if hermitian_form3(F, q, v, v)]
    frames = set()
    for a, b in combinations(non_iso, 2):
        if hermitian_form3(F, q, a, b):
            continue
        for c in non_iso:
            if c > b and hermitian_form3(F, q, a, c) == 0 and hermitian_form3(F, q, b, c) == 0:
                frames.add(tuple(sorted((a, b, c))))
    return sorted(frames)


def psu3_on_frames(q: int, frobenius: bool = False) -> GroupSpec:
    """PGU(3, q) (= PSU(3, q) when 3 does not divide q+1), optionally extended by
    the field automorphism, acting on orthonormal frames of the Hermitian form."""
    F = field(q * q)
    frames = unitary_frames(q)
    mats = unitary_reflections(F, q)

    def frame_map(f):
        return lambda fr: tuple(sorted(f(x) for x in fr))

    gens = [perm_from_map(frames, frame_map(point_map(F, A))) for A in mats]
    if frobenius:
        sigma = lambda x: tuple(F.frobenius(a) for a in x)
        gens.append(perm_from_map(frames, frame_map(sigma)))
    name = f"PSU(3, {q}).2" if frobenius else f"PSU(3, {q})"
    return GroupSpec(len(frames), tuple(small_generating_set(len(frames), gens)), name=name,
                     onss_type="almost-simple")


def psu3_on_nonisotropic_points(q: int) -> GroupSpec:
    F = field(q * q)
    pts = [v for v in projective_points(F, 2) if hermitian_form3(F, q, v, v)]
    gens = [perm_from_map(pts, point_map(F, A)) for A in unitary_reflections(F, q)]
    return GroupSpec(len(pts), tuple(small_generating_set(len(pts), gens)), name=f"PSU(3, {q})",
                     onss_type="almost-simple")


# -- affine groups ------------------------------------------------------------------------------


def affine_index(p: int, v: Sequence[int]) -> int:
    """Point index of a vector: base-p digits, least significant first."""
    return sum(c * p**i for i, c in enumerate(v))


def affine_vector(p: int, d: int, i: int) -> tuple[int, ...]:
    return tuple((i // p**j) % p for j in range(d))


def affine_group(p: int, d: int, matrices: Sequence, name: str | None = None,
                 onss_type: str = "affine") -> GroupSpec:
    """Translations of GF(p)^d together with the given linear maps (row vectors)."""
    F = field(p)
    vecs = [affine_vector(p, d, i) for i in range(p**d)]
    gens = []
    for j in range(d):
        e = tuple(1 if k == j else 0 for k in range(d))
        gens.append(tuple(affine_index(p, F.vec_add(v, e)) for v in vecs))
    for A in matrices:
        gens.append(tuple(affine_index(p, F.vec_mat(v, A)) for v in vecs))
    return GroupSpec(p**d, tuple(gens), name=name, onss_type=onss_type, affine_params=(p, d))


def agl(p: int, d: int) -> GroupSpec:
    F = field(p)
    return affine_group(p, d, gl_generators(F, d), name=f"AGL({d}, {p})")


def affine_order36() -> GroupSpec:
    """GF(3)^2 extended by (x, y) -> (y, -x)."""
    return affine_group(3, 2, [((0, 2), (1, 0))], name="3^2:4")


# -- registry of the fixtures ---------------------------------------------------------------------

CATALOGUE: dict[str, Callable[[], GroupSpec]] = {
    "c7": lambda: GroupSpec(7, cyclic(7).generators, name="C(7)", onss_type="affine", affine_params=(7, 1)),
    "sym5_pairs": lambda: sym_on_ksubsets(5, 2),
    "agl_2_3": lambda: agl(3, 2),
    "affine_3_2_order36": affine_order36,
    "pgl_2_7_d21": lambda: pgl2_on_conjugate_pairs(7),
    "psl_3_3_2_d52": psl33_2_on_flags,
    "pgl_2_11_d55": lambda: pgl2_on_octahedral_cosets(11),
    "sym8_d56": lambda: sym_on_ksubsets(8, 3),
    "pgl_2_13_d91": lambda: pgl2_on_octahedral_cosets(13),
    "psl_3_4_d12_d105": psl34_d12_on_flags,
    "psl_3_3_2_d117": psl33_2_on_antiflags,
    "sym8_d120": sym8_on_pgl27_cosets,
    "psp_4_3_d40": lambda: psp4_on_w3q_lines(3),
    "psp_4_3_2_d40": lambda: psp4_on_w3q_lines(3, similitude=True),
    "psu_3_3_d63": lambda: psu3_on_frames(3),
    "psu_3_3_2_d63": lambda: psu3_on_frames(3, frobenius=True),
    "sym6_pairs": lambda: sym_on_ksubsets(6, 2),
    "sym7_pairs": lambda: sym_on_ksubsets(7, 2),
    "sym4_wr_sym2": lambda: product_action(4, 2),
    "sym9_triples": lambda: sym_on_ksubsets(9, 3),
}
