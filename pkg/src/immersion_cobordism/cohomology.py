"""Integral homology, cohomology with finite coefficients, mod-2 cup products.

Coefficient groups other than Z/2 are handled through the universal
coefficient theorem on integral homology. Explicit cocycles are kept only
over Z/2, as bitsets indexed by ``K.skeleta[k]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    TRIVIAL,
    GF2Reducer,
    Group,
    IntegerMatrix,
    bits_to_vector,
    elementary_divisors,
    ext_group,
    hom_group,
    kernel_bits,
)
from .simplicial import SimplicialComplex, boundary_matrix


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; results must not be trusted."""


def _check_degree(K: SimplicialComplex, k: int) -> None:
    if not 0 <= k <= K.dim:
        raise ValueError(f"degree {k} outside 0..{K.dim}")


def support(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


# --------------------------------------------------------------------------
# Integral homology and universal coefficients


@lru_cache(maxsize=64)
def boundary_invariants(K: SimplicialComplex) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(rank, nonunit invariant factors) of ∂_k for k = 0..dim+1 (∂_0, ∂_{dim+1} are zero)."""
    out = [(0, ())]
    for k in range(1, K.dim + 1):
        rank, torsion = elementary_divisors(boundary_matrix(K, k))
        out.append((rank, tuple(torsion)))
    out.append((0, ()))
    return tuple(out)


def integral_homology(K: SimplicialComplex, k: int) -> Group:
    _check_degree(K, k)
    inv = boundary_invariants(K)
    return Group.from_orders(K.count(k) - inv[k][0] - inv[k + 1][0], inv[k + 1][1])


def _homology_or_zero(K: SimplicialComplex, k: int) -> Group:
    return integral_homology(K, k) if 0 <= k <= K.dim else TRIVIAL


def cohomology_with_coefficients(K: SimplicialComplex, k: int, A: Group | int) -> Group:
    """H^k(K; A) = Hom(H_k, A) ⊕ Ext(H_{k-1}, A) for a finite group A."""
    _check_degree(K, k)
    if isinstance(A, Group) and A.is_trivial:
        return TRIVIAL
    return hom_group(_homology_or_zero(K, k), A) + ext_group(_homology_or_zero(K, k - 1), A)


# --------------------------------------------------------------------------
# Mod-2 cochains


@lru_cache(maxsize=64)
def coboundary_columns(K: SimplicialComplex, k: int) -> tuple[int, ...]:
    """δ_k over Z/2: for each k-simplex, the bitset of (k+1)-simplices containing it."""
    _check_degree(K, k)
    cols = [[] for _ in range(K.count(k))]
    if k < K.dim:
        idx = K.index(k)
        for t, s in enumerate(K.skeleta[k + 1]):
            for i in range(k + 2):
                cols[idx[s[:i] + s[i + 1:]]].append(t)
    out = []
    for hits in cols:
        bits = 0
        for t in hits:
            bits |= 1 << t
        out.append(bits)
    return tuple(out)


def coboundary(K: SimplicialComplex, k: int, bits: int) -> int:
    """δ of a k-cochain given as a bitset."""
    cols = coboundary_columns(K, k)
    out = 0
    for i in support(bits):
        out ^= cols[i]
    return out


@dataclass(frozen=True)
class CohomologyClassMod2:
    """A mod-2 k-cochain, flagged when it is a cocycle."""

    degree: int
    bits: int
    size: int
    is_cocycle: bool

    @property
    def cochain(self) -> tuple[int, ...]:
        return bits_to_vector(self.bits, self.size)

    def __add__(self, other: "CohomologyClassMod2") -> "CohomologyClassMod2":
        if other.degree != self.degree or other.size != self.size:
            raise ValueError("adding cochains of different degrees")
        return CohomologyClassMod2(
            self.degree, self.bits ^ other.bits, self.size, self.is_cocycle and other.is_cocycle
        )


def make_cochain(K: SimplicialComplex, k: int, bits: int | tuple | list) -> CohomologyClassMod2:
    """Wrap a cochain (bitset or 0/1 sequence), checking whether it is a cocycle."""
    _check_degree(K, k)
    if not isinstance(bits, int):
        vec = list(bits)
        if len(vec) != K.count(k):
            raise ValueError(f"cochain of length {len(vec)}, expected {K.count(k)}")
        bits = sum(1 << i for i, v in enumerate(vec) if int(v) & 1)
    if bits >> K.count(k):
        raise ValueError("cochain has bits beyond the number of simplices")
    return CohomologyClassMod2(k, bits, K.count(k), coboundary(K, k, bits) == 0)


class CohomologyGroupMod2:
    """H^k(K; Z/2) with an explicit cocycle basis.

    Coboundaries and the basis cocycles are held in one GF(2) echelon form;
    reducing a cocycle against it yields both its coordinates and, when those
    vanish, a primitive.
    """

    def __init__(self, K: SimplicialComplex, k: int):
        _check_degree(K, k)
        self.complex = K
        self.degree = k
        self._shift = K.count(k - 1) if k > 0 else 0
        size = K.count(k)
        red = GF2Reducer()
        if k > 0:
            for r, col in enumerate(coboundary_columns(K, k - 1)):
                red.insert(col, 1 << r)
        self.coboundary_rank = len(red)
        basis = []
        for z in kernel_bits(coboundary_columns(K, k)):
            independent, _ = red.insert(z, 1 << (self._shift + len(basis)))
            if independent:
                basis.append(CohomologyClassMod2(k, z, size, True))
        self._reducer = red
        self.basis: tuple[CohomologyClassMod2, ...] = tuple(basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def coboundary_matrix(self) -> IntegerMatrix:
        """δ_{k-1} as an integer matrix (entries reduce to the mod-2 map)."""
        K, k = self.complex, self.degree
        if k == 0:
            return IntegerMatrix(K.count(0), 0)
        return boundary_matrix(K, k).transpose()

    def _reduce(self, c: CohomologyClassMod2) -> tuple[int, int]:
        if c.degree != self.degree or c.size != self.complex.count(self.degree):
            raise ValueError("cochain does not belong to this cohomology group")
        rem, tag = self._reducer.reduce(c.bits)
        if rem:
            raise ValueError("cochain is not a cocycle")
        return tag >> self._shift, tag & ((1 << self._shift) - 1)

    def coordinates_bits(self, c: CohomologyClassMod2) -> int:
        return self._reduce(c)[0]

    def coordinates(self, c: CohomologyClassMod2) -> tuple[int, ...]:
        return bits_to_vector(self.coordinates_bits(c), self.dimension)

    def is_coboundary(self, c: CohomologyClassMod2) -> tuple[bool, int | None]:
        coords, witness = self._reduce(c)
        return (True, witness) if coords == 0 else (False, None)

    def element(self, coords: int | tuple | list) -> CohomologyClassMod2:
        """Cocycle representative Σ coords_i · basis_i."""
        if not isinstance(coords, int):
            coords = sum(1 << i for i, v in enumerate(coords) if int(v) & 1)
        if coords >> self.dimension:
            raise ValueError("coordinates exceed the cohomology dimension")
        bits = 0
        for i in support(coords):
            bits ^= self.basis[i].bits
        return CohomologyClassMod2(self.degree, bits, self.complex.count(self.degree), True)

    def __repr__(self) -> str:
        return f"H^{self.degree}({self.complex.name or 'K'}; Z/2) of dimension {self.dimension}"


@lru_cache(maxsize=64)
def mod2_cohomology(K: SimplicialComplex, k: int) -> CohomologyGroupMod2:
    return CohomologyGroupMod2(K, k)


@lru_cache(maxsize=64)
def mod2_betti_numbers(K: SimplicialComplex) -> tuple[int, ...]:
    """dim H^k(K; Z/2) for k = 0..dim by GF(2) ranks of the coboundary maps."""
    ranks = []
    for k in range(K.dim + 1):
        red = GF2Reducer()
        for col in coboundary_columns(K, k):
            red.insert(col)
        ranks.append(len(red))
    return tuple(K.count(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(K.dim + 1))


def is_coboundary(K: SimplicialComplex, c: CohomologyClassMod2) -> tuple[bool, int | None]:
    """Whether the cocycle c is δ of some cochain; the witness is returned as a bitset."""
    if c.bits == 0:
        return True, 0
    return mod2_cohomology(K, c.degree).is_coboundary(c)


def cup_product(K: SimplicialComplex, a: CohomologyClassMod2, b: CohomologyClassMod2) -> CohomologyClassMod2:
    """Alexander–Whitney cup product: (a∪b)[v0..v_{p+q}] = a[v0..vp]·b[vp..v_{p+q}]."""
    p, q = a.degree, b.degree
    if p + q > K.dim:
        raise ValueError(f"cup product degree {p + q} exceeds dimension {K.dim}")
    if not (a.is_cocycle and b.is_cocycle):
        raise ValueError("cup product of a non-cocycle")
    if a.size != K.count(p) or b.size != K.count(q):
        raise ValueError("cochain does not match the complex")
    out = CohomologyClassMod2(p + q, 0, K.count(p + q), True)
    if not (a.bits and b.bits):
        return out
    a_sup, b_sup = set(support(a.bits)), set(support(b.bits))
    ip, iq = K.index(p), K.index(q)
    bits = 0
    for t, s in enumerate(K.skeleta[p + q]):
        if ip[s[: p + 1]] in a_sup and iq[s[p:]] in b_sup:
            bits |= 1 << t
    return CohomologyClassMod2(p + q, bits, K.count(p + q), True)


# --------------------------------------------------------------------------
# Cup-square kernel


@dataclass(frozen=True)
class Q2Subgroup:
    """Kernel of x ↦ [x∪x] on H^2(K; Z/2).

    ``kernel_basis`` and ``square_map`` columns are bitsets in the H^2
    (respectively H^4) basis coordinates. ``vacuous`` is set when dim K < 4,
    where there is no H^4 and the kernel is all of H^2.
    """

    ambient: CohomologyGroupMod2
    kernel_basis: tuple[int, ...]
    square_map: tuple[int, ...]
    vacuous: bool

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)

    def to_ambient(self, coords: int) -> int:
        out = 0
        for i in support(coords):
            out ^= self.kernel_basis[i]
        return out

    def from_ambient(self, h2_coords: int) -> int | None:
        """Coordinates in the kernel basis of an H^2 class, or None if it is outside Q²."""
        red = GF2Reducer()
        for i, v in enumerate(self.kernel_basis):
            red.insert(v, 1 << i)
        rem, tag = red.reduce(h2_coords)
        return None if rem else tag

    def contains(self, h2_coords: int) -> bool:
        return self.from_ambient(h2_coords) is not None


def square_coordinates(K: SimplicialComplex, x: CohomologyClassMod2) -> int:
    return mod2_cohomology(K, 4).coordinates_bits(cup_product(K, x, x))


@lru_cache(maxsize=32)
def cup_square_kernel(K: SimplicialComplex) -> Q2Subgroup:
    """Q²(K) = {x in H^2(K;Z/2) : x∪x = 0}.

    The square map is linear on classes over Z/2; that is verified on every
    pair of basis classes before the kernel is taken, and a failure raises
    InvariantViolation.
    """
    H2 = mod2_cohomology(K, 2) if K.dim >= 2 else None
    if H2 is None:
        raise ValueError("cup-square kernel needs dimension at least 2")
    n = H2.dimension
    if K.dim < 4:
        return Q2Subgroup(H2, tuple(1 << i for i in range(n)), (), True)
    squares = [square_coordinates(K, x) for x in H2.basis]
    for i in range(n):
        for j in range(i + 1, n):
            s = H2.basis[i] + H2.basis[j]
            if square_coordinates(K, s) != squares[i] ^ squares[j]:
                raise InvariantViolation(
                    f"cup square is not additive on basis classes {i}, {j} of H^2({K.name})"
                )
    return Q2Subgroup(H2, tuple(kernel_bits(squares)), tuple(squares), False)


def poincare_duality_check(K: SimplicialComplex) -> bool:
    b = mod2_betti_numbers(K)
    return all(b[k] == b[K.dim - k] for k in range(K.dim + 1))
