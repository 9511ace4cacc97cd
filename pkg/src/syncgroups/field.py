"""Finite fields GF(p^k) with table arithmetic, and small linear algebra.

Elements are ints ``0..q-1``: the base-``p`` digits of an element (least
significant first) are the coefficients of its polynomial representative.
The modulus is the first monic irreducible of degree ``k`` in that same
integer encoding, so every run uses the same field model.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

Vec = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``; raise if ``q`` is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not _is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    prodc = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prodc[i + j] = (prodc[i + j] + x * y) % p
    for d in range(len(prodc) - 1, k - 1, -1):
        c = prodc[d]
        if c:
            for j in range(k + 1):
                prodc[d - k + j] = (prodc[d - k + j] - c * mod[j]) % p
    return prodc[:k]


def _has_root_or_factor(mod: list[int], p: int) -> bool:
    """True if the monic polynomial ``mod`` has a factor of degree <= k/2."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            f = list(coeffs) + [1]
            # polynomial remainder of mod by f
            r = list(mod)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return True
    return False


class GF:
    """The field with ``q`` elements."""

    def __init__(self, q: int):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.modulus = [0, 1]
        else:
            for enc in range(p**k):
                mod = [(enc // p**i) % p for i in range(k)] + [1]
                if mod[0] and not _has_root_or_factor(mod, p):
                    self.modulus = mod
                    break
        digits = [[(x // p**i) % p for i in range(k)] for x in range(q)]
        enc = lambda c: sum(v * p**i for i, v in enumerate(c))
        self.add_table = [[enc([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)]
                          for x in range(q)]
        if k == 1:
            self.mul_table = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            self.mul_table = [[enc(_poly_mulmod(digits[x], digits[y], self.modulus, p)) for y in range(q)]
                              for x in range(q)]
        self.neg_table = [self.add_table[x].index(0) for x in range(q)]
        self.inv_table = [0] + [self.mul_table[x].index(1) for x in range(1, q)]
        self.primitive = next(x for x in range(1, q) if self._mult_order(x) == q - 1)
        self.frob_table = [self.pow(x, p) for x in range(q)]

    def _mult_order(self, x: int) -> int:
        y, n = x, 1
        while y != 1:
            y = self.mul_table[y][x]
            n += 1
        return n

    def __repr__(self):
        return f"GF({self.q})"

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul_table[r][a]
            a = self.mul_table[a][a]
            e >>= 1
        return r

    def frobenius(self, a: int, times: int = 1) -> int:
        for _ in range(times):
            a = self.frob_table[a]
        return a

    def elements(self) -> range:
        return range(self.q)

    # vectors and matrices (row-vector convention: v -> v A)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        add, mt = self.add_table, self.mul_table
        for a, b in zip(u, v):
            s = add[s][mt[a][b]]
        return s

    def vec_add(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return tuple(self.add_table[a][b] for a, b in zip(u, v))

    def scale(self, c: int, v: Sequence[int]) -> Vec:
        return tuple(self.mul_table[c][a] for a in v)

    def vec_mat(self, v: Sequence[int], A: Sequence[Sequence[int]]) -> Vec:
        n = len(A[0])
        return tuple(self.dot(v, [A[i][j] for i in range(len(A))]) for j in range(n))

    def mat_mul(self, A, B) -> tuple[Vec, ...]:
        return tuple(self.vec_mat(row, B) for row in A)

    def normalize(self, v: Sequence[int]) -> Vec:
        """Scale so that the first non-zero coordinate is 1."""
        for a in v:
            if a:
                return self.scale(self.inv(a), v)
        raise ValueError("zero vector has no projective normal form")

    def rref(self, rows: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
        """Reduced row echelon form with zero rows dropped."""
        m = [list(r) for r in rows]
        out = []
        col = 0
        ncols = len(m[0]) if m else 0
        r = 0
        while r < len(m) and col < ncols:
            piv = next((i for i in range(r, len(m)) if m[i][col]), None)
            if piv is None:
                col += 1
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self.inv(m[r][col])
            m[r] = [self.mul(inv, x) for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][col]:
                    c = m[i][col]
                    m[i] = [self.sub(x, self.mul(c, y)) for x, y in zip(m[i], m[r])]
            r += 1
            col += 1
        for row in m:
            if any(row):
                out.append(tuple(row))
        return tuple(out)

    def rank(self, rows) -> int:
        return len(self.rref(rows))

    def mat_inv(self, A) -> tuple[Vec, ...]:
        n = len(A)
        aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        red = self.rref(aug)
        if len(red) < n or any(red[i][i] != 1 for i in range(n)):
            raise ValueError("singular matrix")
        return tuple(tuple(row[n:]) for row in red)

    def nullspace(self, rows) -> list[Vec]:
        """Basis of ``{x : row . x = 0 for every row}``."""
        red = self.rref(rows)
        ncols = len(rows[0])
        pivots = []
        for row in red:
            pivots.append(next(j for j, x in enumerate(row) if x))
        free = [j for j in range(ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for row, pc in zip(red, pivots):
                v[pc] = self.neg(row[f])
            basis.append(tuple(v))
        return basis


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def projective_points(F: GF, dim: int) -> list[Vec]:
    """Points of PG(dim, q) as normalized vectors, in lexicographic order."""
    pts = []
    for v in product(range(F.q), repeat=dim + 1):
        if any(v) and v[next(i for i, a in enumerate(v) if a)] == 1:
            pts.append(v)
    return pts


def span_points(F: GF, basis: Sequence[Sequence[int]]) -> list[Vec]:
    """Normalized projective points of the subspace spanned by ``basis``."""
    pts = set()
    for coeffs in product(range(F.q), repeat=len(basis)):
        if any(coeffs):
            v = tuple([0] * len(basis[0]))
            for c, b in zip(coeffs, basis):
                v = F.vec_add(v, F.scale(c, b))
            if any(v):
                pts.add(F.normalize(v))
    return sorted(pts)
