"""Exact linear algebra over Z and GF(2), and finitely generated abelian groups.

Integer matrices are sparse dictionaries of Python ints, so entries never
overflow. GF(2) vectors are Python ints used as bitsets: bit ``i`` is the
coordinate ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence


class IntegerMatrix:
    """Sparse integer matrix with dense semantics (absent entries read as 0)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self._data: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            self[i, j] = v

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    m._data[i, j] = int(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")

    def __getitem__(self, key: tuple[int, int]) -> int:
        self._check(*key)
        return self._data.get(key, 0)

    def __setitem__(self, key: tuple[int, int], value: int) -> None:
        self._check(*key)
        if value:
            self._data[key] = int(value)
        else:
            self._data.pop(key, None)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._data)

    def items(self):
        return self._data.items()

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def transpose(self) -> "IntegerMatrix":
        t = IntegerMatrix(self.cols, self.rows)
        t._data = {(j, i): v for (i, j), v in self._data.items()}
        return t

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other._data.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self._data.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self._data

    def column_bitsets_mod2(self) -> list[int]:
        """Columns reduced mod 2, each as a bitset over row indices."""
        cols = [0] * self.cols
        for (i, j), v in self._data.items():
            if v & 1:
                cols[j] ^= 1 << i
        return cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def determinant(A: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    M = A.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    rank: int

    @property
    def invariant_factors(self) -> list[int]:
        return [self.D[i, i] for i in range(self.rank)]


def smith_normal_form(A: IntegerMatrix) -> SNFResult:
    """Return D, U, V with U·A·V = D diagonal, d1 | d2 | ..., U and V unimodular.

    Pivots are entries of minimal absolute value, ties going to the lowest
    (row, col), so the output is a deterministic function of the input.
    """
    m, n = A.rows, A.cols
    M = A.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def min_entry(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return best

    rank = 0
    for t in range(min(m, n)):
        best = min_entry(t)
        if best is None:
            break
        while True:
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    dirty |= M[t][j] != 0
            if not dirty:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
            best = min_entry(t)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
        rank += 1

    return SNFResult(
        D=IntegerMatrix.from_dense(M, n),
        U=IntegerMatrix.from_dense(U, m),
        V=IntegerMatrix.from_dense(V, n),
        rank=rank,
    )


def elementary_divisors(A: IntegerMatrix) -> tuple[int, list[int]]:
    """Rank and the nonunit invariant factors of ``A``, without transforms.

    Unit pivots are eliminated sparsely first (boundary matrices are mostly
    unit pivots); whatever is left is handed to the dense Smith form.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in A.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            col = cols.get(c)
            if not col:
                continue
            candidates = [r for r in col if rows[r][c] in (1, -1)]
            if not candidates:
                continue
            r = min(candidates, key=lambda r: (len(rows[r]), r))
            prow = rows[r]
            sign = prow[c]
            for r2 in list(col):
                if r2 == r:
                    continue
                row2 = rows[r2]
                q = row2[c] * sign
                for j, v in prow.items():
                    nv = row2.get(j, 0) - q * v
                    if nv:
                        if j not in row2:
                            cols[j].add(r2)
                        row2[j] = nv
                    else:
                        row2.pop(j, None)
                        cols[j].discard(r2)
                if not row2:
                    del rows[r2]
            for j in prow:
                cols[j].discard(r)
            del rows[r]
            for j in [j for j in prow if not cols[j]]:
                del cols[j]
            units += 1
            progress = True

    if not rows:
        return units, []
    ridx = {r: k for k, r in enumerate(sorted(rows))}
    cidx = {c: k for k, c in enumerate(sorted(cols))}
    rest = IntegerMatrix(len(ridx), len(cidx))
    for r, row in rows.items():
        for c, v in row.items():
            rest[ridx[r], cidx[c]] = v
    snf = smith_normal_form(rest)
    factors = snf.invariant_factors
    return units + snf.rank, [d for d in factors if d != 1]


# --------------------------------------------------------------------------
# GF(2)


class GF2Reducer:
    """Incremental column echelon form over GF(2).

    Each stored column carries a tag bitset recording which inserted inputs
    it is a sum of, so reductions also produce linear combinations.
    """

    __slots__ = ("_pivots",)

    def __init__(self):
        self._pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        pivots = self._pivots
        while vec:
            hit = pivots.get(vec.bit_length() - 1)
            if hit is None:
                break
            vec ^= hit[0]
            tag ^= hit[1]
        return vec, tag

    def insert(self, vec: int, tag: int = 0) -> tuple[bool, int]:
        """Add ``vec``; returns (independent, tag of the reduced remainder)."""
        vec, tag = self.reduce(vec, tag)
        if vec:
            self._pivots[vec.bit_length() - 1] = (vec, tag)
            return True, tag
        return False, tag


def _as_bit_columns(A) -> tuple[list[int], int, int]:
    if isinstance(A, IntegerMatrix):
        return A.column_bitsets_mod2(), A.rows, A.cols
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    cols = [0] * ncols
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError("ragged rows")
        for j, v in enumerate(row):
            if int(v) & 1:
                cols[j] |= 1 << i
    return cols, nrows, ncols


def bits_to_vector(bits: int, length: int) -> tuple[int, ...]:
    return tuple((bits >> i) & 1 for i in range(length))


def vector_to_bits(vec: Iterable[int]) -> int:
    out = 0
    for i, v in enumerate(vec):
        if int(v) & 1:
            out |= 1 << i
    return out


def rank_mod2(A) -> int:
    cols, _, _ = _as_bit_columns(A)
    red = GF2Reducer()
    for c in cols:
        red.insert(c)
    return len(red)


def kernel_basis_mod2(A) -> list[tuple[int, ...]]:
    """Basis of the null space of ``A`` over GF(2); ``A`` is an IntegerMatrix or nested rows."""
    cols, _, ncols = _as_bit_columns(A)
    return [bits_to_vector(b, ncols) for b in kernel_bits(cols)]


def kernel_bits(columns: Sequence[int]) -> list[int]:
    red = GF2Reducer()
    out = []
    for j, c in enumerate(columns):
        independent, tag = red.insert(c, 1 << j)
        if not independent:
            out.append(tag)
    return out


def solve_mod2(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """Some x with A·x = b over GF(2), or None when b is not in the column space."""
    cols, nrows, ncols = _as_bit_columns(A)
    if len(b) != nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {nrows}")
    red = GF2Reducer()
    for j, c in enumerate(cols):
        red.insert(c, 1 << j)
    rem, tag = red.reduce(vector_to_bits(b))
    if rem:
        return None
    return bits_to_vector(tag, ncols)


# --------------------------------------------------------------------------
# Finitely generated abelian groups


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factor_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups of the given orders."""
    powers: dict[int, list[int]] = {}
    for d in orders:
        if d < 1:
            raise ValueError(f"cyclic order must be positive, got {d}")
        for p, e in _prime_factors(d).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for p, vals in powers.items():
        vals.sort()
        for k, q in enumerate(vals):
            chain[length - len(vals) + k] *= q
    return tuple(chain)


@dataclass(frozen=True)
class FinitelyGeneratedAbelianGroup:
    """Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk in invariant-factor form (d1 | d2 | ...)."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not an invariant-factor chain; use from_orders")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "FinitelyGeneratedAbelianGroup":
        return cls(free_rank, invariant_factor_chain(d for d in orders if d != 1))

    @classmethod
    def cyclic(cls, m: int) -> "FinitelyGeneratedAbelianGroup":
        return cls(1) if m == 0 else cls.from_orders(0, [m])

    @classmethod
    def elementary(cls, dim: int, p: int = 2) -> "FinitelyGeneratedAbelianGroup":
        return cls.from_orders(0, [p] * dim)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | float:
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    def cyclic_orders(self) -> list[int]:
        """Orders of the cyclic summands, free ones as 0."""
        return [0] * self.free_rank + list(self.torsion)

    def __add__(self, other: "FinitelyGeneratedAbelianGroup") -> "FinitelyGeneratedAbelianGroup":
        return FinitelyGeneratedAbelianGroup.from_orders(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )

    def __mul__(self, k: int) -> "FinitelyGeneratedAbelianGroup":
        """Direct sum of k copies."""
        return FinitelyGeneratedAbelianGroup.from_orders(self.free_rank * k, self.torsion * k)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "FinitelyGeneratedAbelianGroup":
        return cls.from_orders(obj["rank"], obj["torsion"])

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        run: list[int] = []
        for d in self.torsion + (None,):
            if run and d != run[0]:
                parts.append(f"(Z/{run[0]})^{len(run)}" if len(run) > 1 else f"Z/{run[0]}")
                run = []
            if d is not None:
                run.append(d)
        return " + ".join(parts) if parts else "0"


Group = FinitelyGeneratedAbelianGroup
TRIVIAL = Group()


def _coefficient_orders(A) -> list[int]:
    if isinstance(A, int):
        if A < 2:
            raise ValueError(f"modulus must be at least 2, got {A}")
        return [A]
    if not A.is_finite:
        raise ValueError("coefficient group must be finite")
    return list(A.torsion)


def hom_group(G: Group, A: Group | int) -> Group:
    """Hom(G, A) for finite A: Hom(Z, Z/m) = Z/m and Hom(Z/d, Z/m) = Z/gcd(d, m)."""
    ms = _coefficient_orders(A)
    orders = [m for m in ms] * G.free_rank
    orders += [math.gcd(d, m) for d in G.torsion for m in ms]
    return Group.from_orders(0, orders)


def ext_group(G: Group, A: Group | int) -> Group:
    """Ext(G, A) for finite A; free summands contribute nothing."""
    ms = _coefficient_orders(A)
    return Group.from_orders(0, [math.gcd(d, m) for d in G.torsion for m in ms])


def tensor_group(G: Group, A: Group | int) -> Group:
    """G ⊗ A for finite A."""
    # Z/d ⊗ Z/m = Z/gcd(d, m), same formula as Hom.
    return hom_group(G, A)


def _relation_matrix(G: Group, gens: Sequence[Sequence[int]]) -> IntegerMatrix:
    orders = G.cyclic_orders()
    n = len(orders)
    cols: list[list[int]] = []
    for k, d in enumerate(orders):
        if d:
            cols.append([d if i == k else 0 for i in range(n)])
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {tuple(g)} has wrong length for {G}")
        cols.append([int(x) for x in g])
    A = IntegerMatrix(n, len(cols))
    for j, c in enumerate(cols):
        for i, v in enumerate(c):
            A[i, j] = v
    return A


def _cokernel(A: IntegerMatrix) -> Group:
    snf = smith_normal_form(A)
    factors = snf.invariant_factors
    return Group.from_orders(A.rows - snf.rank, [d for d in factors if d != 1])


def quotient_group(G: Group, gens: Sequence[Sequence[int]]) -> Group:
    """G / <gens>, generators given in coordinates of G's cyclic summands (free first)."""
    return _cokernel(_relation_matrix(G, gens))


def subgroup_generated(G: Group, gens: Sequence[Sequence[int]]) -> Group:
    """Isomorphism type of the subgroup of G generated by ``gens``."""
    # Lattice L = R + <gens> in Z^n; the subgroup is L / R.
    R = _relation_matrix(G, [])
    snf = smith_normal_form(_relation_matrix(G, gens))
    r = snf.rank
    # Columns d_i * Uinv e_i (i < r) form a basis of L; express R in it.
    UR = snf.U @ R
    coords = IntegerMatrix(r, R.cols)
    for (i, j), v in UR.items():
        if i >= r:
            raise AssertionError("relation lattice not contained in generated lattice")
        d = snf.D[i, i]
        if v % d:
            raise AssertionError("non-integral coordinates for relation lattice")
        coords[i, j] = v // d
    return _cokernel(coords)


def in_subgroup(G: Group, gens: Sequence[Sequence[int]], element: Sequence[int]) -> bool:
    """Whether ``element`` lies in the subgroup generated by ``gens``."""
    A = _relation_matrix(G, gens)
    snf = smith_normal_form(A)
    v = snf.U @ IntegerMatrix.from_dense([[int(x)] for x in element], 1)
    for i in range(A.rows):
        x = v[i, 0]
        if i < snf.rank:
            if x % snf.D[i, i]:
                return False
        elif x:
            return False
    return True


def homology_from_boundaries(d_k: IntegerMatrix, d_k1: IntegerMatrix) -> Group:
    """ker(d_k) / im(d_k1) for composable boundary maps C_{k+1} -> C_k -> C_{k-1}."""
    if d_k.cols != d_k1.rows:
        raise ValueError(f"boundary shapes {d_k.shape} and {d_k1.shape} are not composable")
    if not (d_k @ d_k1).is_zero():
        raise ValueError("d_k · d_k1 != 0: not a chain complex")
    rank_k, _ = elementary_divisors(d_k)
    rank_k1, torsion = elementary_divisors(d_k1)
    return Group.from_orders(d_k.cols - rank_k - rank_k1, torsion)


def homology_from_ranks(n_k: int, rank_k: int, rank_k1: int, torsion_k1: Iterable[int]) -> Group:
    return Group.from_orders(n_k - rank_k - rank_k1, torsion_k1)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
