"""Group structure of N(M) for closed orientable 4-manifolds.

There is a short exact sequence

    0 -> H_1(M; Z/4) -> N(M) -> H^1 * Q^2 * H^3 * H^4 -> 0

(all cohomology mod 2), where the right-hand group carries the twisted
product (a*b)_j = a_j + b_j + sum_{s+t=j} a_s ∪ b_t. The extension class is
not determined, so N(M) is reported as kernel, quotient and order only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Group, bits_to_vector, tensor_group, vector_to_bits
from .cohomology import (
    CohomologyClassMod2,
    InvariantViolation,
    cup_product,
    cup_square_kernel,
    integral_homology,
    mod2_cohomology,
    support,
)
from .graded import ManifoldInputError, require_closed_manifold
from .simplicial import SimplicialComplex, orientability

TABLE_CAP = 256
ENUMERATION_CAP = 2**16


@dataclass(frozen=True)
class StarTuple:
    """Coordinates in the bases of H^1, Q^2 (kernel basis), H^3 and H^4, mod 2."""

    a1: tuple[int, ...]
    a2: tuple[int, ...]
    a3: tuple[int, ...]
    a4: tuple[int, ...]

    def parts(self) -> tuple[tuple[int, ...], ...]:
        return self.a1, self.a2, self.a3, self.a4


def tensor_z4(G: Group) -> Group:
    return tensor_group(G, 4)


class StarStructure:
    """Bases and cup-product data for the quotient term of the exact sequence."""

    def __init__(self, K: SimplicialComplex, validate: bool = True):
        if K.dim != 4:
            raise ManifoldInputError(f"four-manifold group needs dimension 4, got {K.dim}")
        if validate:
            require_closed_manifold(K)
        if not orientability(K):
            raise ManifoldInputError("four-manifold group needs an orientable manifold")
        self.complex = K
        self.H = {k: mod2_cohomology(K, k) for k in (1, 2, 3, 4)}
        self.Q = cup_square_kernel(K)
        self.dims = (self.H[1].dimension, self.Q.dimension, self.H[3].dimension, self.H[4].dimension)
        self._tables = None

    @property
    def element_count(self) -> int:
        return 2 ** sum(self.dims)

    def identity(self) -> StarTuple:
        return StarTuple(*(tuple([0] * d) for d in self.dims))

    def make(self, a1, h2, a3, a4) -> StarTuple:
        """Tuple from an H^2 coordinate vector; rejects classes outside Q^2."""
        q = self.Q.from_ambient(vector_to_bits(h2))
        if q is None:
            raise ValueError("degree-2 component is not in Q^2: its cup square is nonzero")
        return StarTuple(tuple(a1), bits_to_vector(q, self.dims[1]), tuple(a3), tuple(a4))

    def check(self, t: StarTuple) -> None:
        for part, d, name in zip(t.parts(), self.dims, ("H^1", "Q^2", "H^3", "H^4")):
            if len(part) != d:
                raise ValueError(f"{name} component has length {len(part)}, basis has {d}")

    def representatives(self, t: StarTuple) -> dict[int, CohomologyClassMod2]:
        self.check(t)
        h2 = self.Q.to_ambient(vector_to_bits(t.a2))
        return {
            1: self.H[1].element(t.a1),
            2: self.H[2].element(h2),
            3: self.H[3].element(t.a3),
            4: self.H[4].element(t.a4),
        }

    def multiply(self, s: StarTuple, t: StarTuple) -> StarTuple:
        """Twisted product computed from cocycle representatives."""
        K = self.complex
        a, b = self.representatives(s), self.representatives(t)

        def coords(j, *pairs):
            total = CohomologyClassMod2(j, 0, K.count(j), True)
            for p, q in pairs:
                total = total + cup_product(K, a[p], b[q])
            return self.H[j].coordinates_bits(total)

        out1 = vector_to_bits(s.a1) ^ vector_to_bits(t.a1)
        h2 = (
            self.Q.to_ambient(vector_to_bits(s.a2))
            ^ self.Q.to_ambient(vector_to_bits(t.a2))
            ^ coords(2, (1, 1))
        )
        out2 = self.Q.from_ambient(h2)
        if out2 is None:
            raise InvariantViolation("star product left Q^2 in degree 2")
        out3 = vector_to_bits(s.a3) ^ vector_to_bits(t.a3) ^ coords(3, (1, 2), (2, 1))
        out4 = vector_to_bits(s.a4) ^ vector_to_bits(t.a4) ^ coords(4, (1, 3), (2, 2), (3, 1))
        return StarTuple(*(bits_to_vector(x, d) for x, d in zip((out1, out2, out3, out4), self.dims)))

    # ---- packed representation: one int per element, bits [a1 | a2 | a3 | a4]

    def pack(self, t: StarTuple) -> int:
        out, shift = 0, 0
        for part, d in zip(t.parts(), self.dims):
            out |= vector_to_bits(part) << shift
            shift += d
        return out

    def unpack(self, x: int) -> StarTuple:
        parts, shift = [], 0
        for d in self.dims:
            parts.append(bits_to_vector((x >> shift) & ((1 << d) - 1), d))
            shift += d
        return StarTuple(*parts)

    @property
    def _reps(self):
        H, Q = self.H, self.Q
        return {
            1: [H[1].basis[i] for i in range(self.dims[0])],
            2: [H[2].element(Q.to_ambient(1 << i)) for i in range(self.dims[1])],
            3: [H[3].basis[i] for i in range(self.dims[2])],
        }

    def bilinear_tables(self) -> dict[tuple[int, int], list[list[int]]]:
        """Coordinates of [e_i ∪ f_j] for basis elements, keyed by degree pair.

        Degree-2 products are recorded in H^2 coordinates.
        """
        if self._tables is None:
            reps, K = self._reps, self.complex
            tables = {}
            for p, q in ((1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)):
                target = self.H[p + q]
                tables[p, q] = [
                    [target.coordinates_bits(cup_product(K, x, y)) for y in reps[q]]
                    for x in reps[p]
                ]
            self._tables = tables
        return self._tables

    def multiply_packed(self, x: int, y: int) -> int:
        """Same product as ``multiply`` using bilinearity of the cup product."""
        d1, dq, d3, d4 = self.dims
        tab = self.bilinear_tables()
        m1, mq, m3 = (1 << d1) - 1, (1 << dq) - 1, (1 << d3) - 1

        def split(z):
            return z & m1, (z >> d1) & mq, (z >> (d1 + dq)) & m3, z >> (d1 + dq + d3)

        a1, a2, a3, a4 = split(x)
        b1, b2, b3, b4 = split(y)

        def pair(p, q, u, v):
            acc = 0
            t = tab[p, q]
            for i in support(u):
                row = t[i]
                for j in support(v):
                    acc ^= row[j]
            return acc

        h2 = self.Q.to_ambient(a2) ^ self.Q.to_ambient(b2) ^ pair(1, 1, a1, b1)
        c2 = self.Q.from_ambient(h2)
        if c2 is None:
            raise InvariantViolation("star product left Q^2 in degree 2")
        c1 = a1 ^ b1
        c3 = a3 ^ b3 ^ pair(1, 2, a1, b2) ^ pair(2, 1, a2, b1)
        c4 = a4 ^ b4 ^ pair(1, 3, a1, b3) ^ pair(2, 2, a2, b2) ^ pair(3, 1, a3, b1)
        return c1 | (c2 << d1) | (c3 << (d1 + dq)) | (c4 << (d1 + dq + d3))


@lru_cache(maxsize=16)
def star_structure(K: SimplicialComplex) -> StarStructure:
    return StarStructure(K)


def star_multiply(K: SimplicialComplex, s: StarTuple, t: StarTuple) -> StarTuple:
    return star_structure(K).multiply(s, t)


@dataclass(frozen=True)
class StarGroupReport:
    element_count: int
    identity: StarTuple
    is_abelian: bool
    exponent: int | None
    mode: str  # "table", "elements" or "generators"
    axioms_verified: bool | None
    structure: Group | None = None
    table: list[list[int]] | None = None
    sample: list[tuple[int, int, int]] | None = None


def _abelian_2group_structure(orders: list[int]) -> Group:
    """Invariant factors of an abelian 2-group from its element orders."""
    n = len(orders)
    exps = []
    k = 0
    while True:
        below = sum(1 for o in orders if (2**k) % o == 0)
        exps.append(below)
        if below == n:
            break
        k += 1
    # |G[2^k]| = prod min(2^k, d_i); number of summands of order >= 2^k is log2 of the ratio.
    counts = [round(math.log2(exps[k] / exps[k - 1])) for k in range(1, len(exps))]
    orders_out = []
    for k in range(1, len(counts) + 1):
        at_least = counts[k - 1]
        more = counts[k] if k < len(counts) else 0
        orders_out += [2**k] * (at_least - more)
    return Group.from_orders(0, orders_out)


def _order(S: StarStructure, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = S.multiply_packed(y, x)
        k += 1
        if k > S.element_count:
            raise InvariantViolation("element of infinite order in a finite group")
    return k


def star_group(K: SimplicialComplex, table_cap: int = TABLE_CAP,
               enumeration_cap: int = ENUMERATION_CAP, seed: int = 0) -> StarGroupReport:
    """Build the quotient group and check group axioms as far as its size allows."""
    S = star_structure(K)
    n = S.element_count
    ident = S.identity()
    if n <= table_cap:
        T = np.array([[S.multiply_packed(x, y) for y in range(n)] for x in range(n)], dtype=np.int64)
        idx = np.arange(n)
        assoc = np.array_equal(T[T], T[idx[:, None, None], T[None, :, :]])
        has_identity = np.array_equal(T[0], idx) and np.array_equal(T[:, 0], idx)
        has_inverses = all(0 in row for row in T.tolist())
        abelian = bool(np.array_equal(T, T.T))
        orders = [_order(S, x) for x in range(n)]
        return StarGroupReport(
            n, ident, abelian, math.lcm(*orders), "table",
            bool(assoc and has_identity and has_inverses),
            _abelian_2group_structure(orders) if abelian else None,
            table=T.tolist(),
        )
    gens = [1 << i for i in range(sum(S.dims))]
    abelian = all(S.multiply_packed(g, h) == S.multiply_packed(h, g) for g in gens for h in gens)
    rng = random.Random(seed)
    triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(200)]
    sample_ok = all(
        S.multiply_packed(S.multiply_packed(a, b), c) == S.multiply_packed(a, S.multiply_packed(b, c))
        and S.multiply_packed(a, 0) == a == S.multiply_packed(0, a)
        for a, b, c in triples
    )
    if n <= enumeration_cap:
        orders = [_order(S, x) for x in range(n)]
        return StarGroupReport(
            n, ident, abelian, math.lcm(*orders), "elements", sample_ok,
            _abelian_2group_structure(orders) if abelian else None, sample=triples,
        )
    exponent = math.lcm(*(_order(S, g) for g in gens)) if abelian else None
    return StarGroupReport(n, ident, abelian, exponent, "generators", sample_ok, sample=triples)


def n_group_order(K: SimplicialComplex) -> int:
    """|N(M)| = |H_1(M; Z) ⊗ Z/4| · |H^1 * Q^2 * H^3 * H^4|."""
    S = star_structure(K)
    return int(tensor_z4(integral_homology(K, 1)).order()) * S.element_count


def four_group_report(K: SimplicialComplex, table_cap: int = TABLE_CAP) -> dict:
    kernel = tensor_z4(integral_homology(K, 1))
    report = star_group(K, table_cap=table_cap)
    out = {
        "manifold": K.name,
        "kernel": kernel.to_json(),
        "quotient_order": report.element_count,
        "quotient_dimensions": dict(zip(("H1", "Q2", "H3", "H4"), star_structure(K).dims)),
        "is_abelian_quotient": report.is_abelian,
        "quotient_structure": report.structure.to_json() if report.structure is not None else None,
        "total_order": int(kernel.order()) * report.element_count,
        "extension": "unresolved",
    }
    return out
