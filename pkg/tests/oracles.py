"""Independent reference computations used to check the engine.

Everything here is deliberately naive: dense matrices, Fractions, explicit
enumeration. None of it imports the package's linear algebra.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product


def det_fraction(M: list[list[int]]) -> int:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return int(det)


def rank_bareiss(M: list[list[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank, prev = 0, 1
    for c in range(cols):
        p = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        for r in range(rank + 1, rows):
            A[r] = [(A[rank][c] * A[r][j] - A[r][c] * A[rank][j]) // prev for j in range(cols)]
        prev = A[rank][c]
        rank += 1
    return rank


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def determinantal_invariant_factors(M: list[list[int]]) -> list[int]:
    """Invariant factors as ratios of gcds of k x k minors."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = math.gcd(g, det_fraction([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


# ---------------------------------------------------------------- GF(2)


def gf2_echelon(rows: list[int]) -> list[int]:
    """Row-echelon basis (pivot = lowest set bit) of the span of bitset rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    return basis


def gf2_rank(rows: list[int]) -> int:
    return len(gf2_echelon(rows))


class SpanOracle:
    """Membership in the GF(2) span of a fixed list of bitset rows."""

    def __init__(self, rows: list[int]):
        self.echelon = gf2_echelon(rows)

    def __contains__(self, v: int) -> bool:
        for b in self.echelon:
            if v & (b & -b):
                v ^= b
        return v == 0


def boundary_rows_mod2(K, k: int) -> list[int]:
    """Rows of δ_{k-1} mod 2 (one bitset per (k-1)-simplex) built from the facets."""
    lower = {s: i for i, s in enumerate(sorted({f for s in K.facets for f in combinations(s, k)}))}
    upper = sorted({f for s in K.facets for f in combinations(s, k + 1)})
    rows = [0] * len(lower)
    for j, s in enumerate(upper):
        for i in range(len(s)):
            rows[lower[s[:i] + s[i + 1:]]] |= 1 << j
    return rows


def simplices(K, k: int) -> list[tuple[int, ...]]:
    return sorted({f for s in K.facets for f in combinations(s, k + 1)})


def mod2_betti(K) -> list[int]:
    n = K.dim
    ranks = [gf2_rank(boundary_rows_mod2(K, k)) for k in range(1, n + 1)] + [0]
    out = []
    for k in range(n + 1):
        nk = len(simplices(K, k))
        out.append(nk - ranks[k] - (ranks[k - 1] if k else 0))
    return out


def cup_oracle(K, p: int, q: int, a: set, b: set) -> set:
    """Alexander–Whitney cup of cochains given as sets of simplices."""
    return {s for s in simplices(K, p + q) if s[: p + 1] in a and s[p:] in b}


def coboundary_oracle(K, k: int, c: set) -> set:
    out = set()
    for s in simplices(K, k + 1):
        if sum(1 for i in range(len(s)) if s[:i] + s[i + 1:] in c) % 2:
            out.add(s)
    return out


_SPANS: dict = {}


def is_coboundary_oracle(K, k: int, c: set) -> bool:
    """Whether the k-cochain c lies in the image of δ_{k-1}; dense GF(2) elimination."""
    if k == 0:
        return not c
    if (K, k) not in _SPANS:
        # each row is δ of a (k-1)-simplex, as bits over the k-simplices
        _SPANS[K, k] = (SpanOracle(boundary_rows_mod2(K, k)), {s: i for i, s in enumerate(simplices(K, k))})
    span, idx = _SPANS[K, k]
    v = 0
    for s in c:
        v |= 1 << idx[s]
    return v in span


# ---------------------------------------------------------------- finite abelian groups


def elements(orders):
    return list(product(*(range(d) for d in orders)))


def homs_cyclic_to(d: int, target_orders) -> list[tuple[int, ...]]:
    """Images of the generator of Z/d (d = 0 for Z) under homomorphisms into ⊕Z/m_j."""
    out = []
    for x in elements(target_orders):
        if d == 0 or all((d * xi) % m == 0 for xi, m in zip(x, target_orders)):
            out.append(x)
    return out


def hom_elements(source_orders, target_orders):
    """All homomorphisms ⊕Z/d_i -> ⊕Z/m_j as tuples of generator images (d = 0 means Z)."""
    return list(product(*(homs_cyclic_to(d, target_orders) for d in source_orders)))


def killed_count(elts, orders_flat, m: int) -> int:
    """Number of elements x with m·x = 0; elts are flat coordinate tuples over orders_flat."""
    return sum(1 for x in elts if all((m * xi) % o == 0 for xi, o in zip(x, orders_flat)))


def group_signature(orders, upto: int) -> tuple[int, ...]:
    """|G[m]| for m = 1..upto; determines a finite abelian group of exponent <= upto."""
    return tuple(math.prod(math.gcd(m, d) for d in orders) for m in range(1, upto + 1))


def quotient_signature(orders, d: int, upto: int) -> tuple[int, ...]:
    """|Q[m]| for m = 1..upto where Q = A / dA and A = ⊕Z/m_j (A ⊗ Z/d and Ext(Z/d, A) are both Q)."""
    A = elements(orders)
    dA = {tuple((d * a) % m for a, m in zip(x, orders)) for x in A}
    out = []
    for k in range(1, upto + 1):
        n = sum(1 for x in A if tuple((k * xi) % m for xi, m in zip(x, orders)) in dA)
        out.append(n // len(dA))
    return tuple(out)
