"""Finite simplicial complexes presenting closed manifolds.

Simplices are sorted vertex tuples. Vertex labels are nonnegative integers
and their numeric order fixes every orientation sign in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .algebra import IntegerMatrix

Simplex = tuple[int, ...]


class ComplexFormatError(ValueError):
    """Malformed complex document or facet list."""


class SimplicialComplex:
    """Pure simplicial complex given by its facets; all skeleta are derived."""

    def __init__(self, facets: Iterable[Iterable[int]], name: str = "", dim: int | None = None):
        cleaned: list[Simplex] = []
        for f in facets:
            f = tuple(int(v) for v in f)
            if len(set(f)) != len(f):
                raise ComplexFormatError(f"facet {list(f)} repeats a vertex")
            if any(v < 0 for v in f):
                raise ComplexFormatError(f"facet {list(f)} has a negative vertex label")
            cleaned.append(tuple(sorted(f)))
        if not cleaned:
            raise ComplexFormatError("complex has no facets")
        sizes = {len(f) for f in cleaned}
        if len(sizes) > 1:
            raise ComplexFormatError(f"facets of mixed cardinality {sorted(sizes)}")
        size = sizes.pop()
        if dim is None:
            dim = size - 1
        elif size != dim + 1:
            raise ComplexFormatError(f"dimension {dim} inconsistent with facets of {size} vertices")
        if dim < 1:
            raise ComplexFormatError("dimension must be at least 1")
        if len(set(cleaned)) != len(cleaned):
            dup = next(f for f in cleaned if cleaned.count(f) > 1)
            raise ComplexFormatError(f"duplicate facet {list(dup)}")
        self.name = name
        self.dim = dim
        self.facets: tuple[Simplex, ...] = tuple(sorted(cleaned))
        self._hash = hash((self.dim, self.facets))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.dim == other.dim and self.facets == other.facets

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex({self.name!r}, dim={self.dim}, f={self.f_vector})"

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def skeleta(self) -> tuple[tuple[Simplex, ...], ...]:
        """skeleta[k]: all k-simplices, lexicographically sorted."""
        out = []
        for k in range(self.dim + 1):
            faces = {s for f in self.facets for s in combinations(f, k + 1)}
            out.append(tuple(sorted(faces)))
        return tuple(out)

    @cached_property
    def _indices(self) -> tuple[dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(sk)} for sk in self.skeleta)

    def index(self, k: int) -> dict[Simplex, int]:
        """Map from k-simplex to its position in skeleta[k]."""
        return self._indices[k]

    def count(self, k: int) -> int:
        return len(self.skeleta[k]) if 0 <= k <= self.dim else 0

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.skeleta)

    def to_json(self) -> dict:
        return {"name": self.name, "dimension": self.dim, "facets": [list(f) for f in self.facets]}


def parse_complex(document: str | dict, name: str | None = None) -> SimplicialComplex:
    """Build a complex from the canonical JSON document (text or already-decoded)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ComplexFormatError(f"syntax error: {exc}") from None
    if not isinstance(document, dict):
        raise ComplexFormatError("document must be a JSON object")
    for key in ("dimension", "facets"):
        if key not in document:
            raise ComplexFormatError(f"missing field {key!r}")
    dim = document["dimension"]
    facets = document["facets"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ComplexFormatError("'dimension' must be an integer")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ComplexFormatError("'facets' must be a list of integer arrays")
    for f in facets:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise ComplexFormatError(f"facet {f} has non-integer entries")
        if len(f) != dim + 1:
            raise ComplexFormatError(f"facet {f} has {len(f)} vertices, dimension {dim} needs {dim + 1}")
        if len(set(f)) != len(f):
            raise ComplexFormatError(f"facet {f} repeats a vertex")
        if any(a >= b for a, b in zip(f, f[1:])):
            raise ComplexFormatError(f"facet {f} is not strictly increasing")
    label = name if name is not None else str(document.get("name", ""))
    return SimplicialComplex(facets, name=label, dim=dim)


def parse_facet_text(text: str, name: str = "") -> SimplicialComplex:
    """Plain-text format: one facet per line, whitespace-separated labels, '#' comments."""
    facets = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            facets.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ComplexFormatError(f"line {lineno}: non-integer vertex label") from None
    return SimplicialComplex(facets, name=name)


def load_complex(path: str) -> SimplicialComplex:
    """Read a complex from a JSON document or, failing that, the plain-text format."""
    with open(path) as fh:
        text = fh.read()
    stem = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    if text.lstrip().startswith("{"):
        doc = parse_complex(text)
        if not doc.name:
            doc.name = stem
        return doc
    return parse_facet_text(text, name=stem)


# --------------------------------------------------------------------------
# Combinatorial invariants


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """∂_k : C_k -> C_{k-1}; the face omitting v_i gets sign (-1)^i."""
    if not 1 <= k <= K.dim:
        raise ValueError(f"boundary degree {k} outside 1..{K.dim}")
    rows = K.index(k - 1)
    D = IntegerMatrix(K.count(k - 1), K.count(k))
    data = {}
    for j, s in enumerate(K.skeleta[k]):
        for i in range(k + 1):
            data[rows[s[:i] + s[i + 1:]], j] = -1 if i & 1 else 1
    D._data = data
    return D


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(K.f_vector))


def _ridge_cofacets(K: SimplicialComplex) -> dict[Simplex, list[int]]:
    out: dict[Simplex, list[int]] = {}
    for j, f in enumerate(K.facets):
        for i in range(len(f)):
            out.setdefault(f[:i] + f[i + 1:], []).append(j)
    return out


def _components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def link(K: SimplicialComplex, v: int) -> list[Simplex]:
    """Facets of the link of vertex v."""
    return [tuple(u for u in f if u != v) for f in K.facets if v in f]


def _euler_of_facets(facets: list[Simplex]) -> int:
    if not facets or not facets[0]:
        return 0
    top = len(facets[0])
    return sum(
        (-1) ** (k - 1) * len({s for f in facets for s in combinations(f, k)})
        for k in range(1, top + 1)
    )


_SIMPLEX_NAMES = {0: "vertex", 1: "edge", 2: "triangle", 3: "tetrahedron"}


@dataclass
class ValidationReport:
    is_pure: bool
    is_closed_pseudomanifold: bool
    is_strongly_connected: bool
    link_check: dict[int, bool]
    reasons: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return (
            self.is_pure
            and self.is_closed_pseudomanifold
            and self.is_strongly_connected
            and all(self.link_check.values())
        )

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else "rejected"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "is_pure": self.is_pure,
            "is_closed_pseudomanifold": self.is_closed_pseudomanifold,
            "is_strongly_connected": self.is_strongly_connected,
            "bad_links": sorted(v for v, ok in self.link_check.items() if not ok),
            "reasons": self.reasons,
        }


def validate_closed_manifold(K: SimplicialComplex, max_reasons: int = 10) -> ValidationReport:
    """Necessary conditions for K to be a closed connected manifold.

    Checks the pseudomanifold condition, strong connectivity, and that every
    vertex link has the Euler characteristic of S^(n-1). This is a gate, not
    a recognition algorithm.
    """
    n = K.dim
    reasons: list[str] = []
    # Facets all have n+1 vertices by construction; purity is structural.
    is_pure = all(len(f) == n + 1 for f in K.facets)

    ridges = _ridge_cofacets(K)
    closed = True
    for r in sorted(ridges):
        c = len(ridges[r])
        if c != 2:
            closed = False
            if len(reasons) < max_reasons:
                kind = _SIMPLEX_NAMES.get(n - 1, f"{n - 1}-simplex")
                reasons.append(f"{kind} {list(r)} has {c} cofacet{'s' if c != 1 else ''}")

    adjacency = ((fs[0], other) for fs in ridges.values() for other in fs[1:])
    strongly_connected = _components(len(K.facets), adjacency) == 1
    if not strongly_connected:
        reasons.append("facet adjacency graph is not connected")

    sphere_chi = 1 + (-1) ** (n - 1)
    links = {}
    for v in K.vertices:
        links[v] = _euler_of_facets(link(K, v)) == sphere_chi
        if not links[v] and len(reasons) < max_reasons:
            reasons.append(f"link of vertex {v} does not have the Euler characteristic of S^{n - 1}")
    return ValidationReport(is_pure, closed, strongly_connected, links, reasons)


def orientability(K: SimplicialComplex) -> bool:
    """Whether the facets admit a coherent orientation.

    A facet's orientation is a sign relative to its sorted vertex order; two
    facets sharing a ridge are coherent when they induce opposite orientations
    on it. Signs are propagated breadth-first and any conflict means
    non-orientable. Assumes a closed pseudomanifold.
    """
    ridges = _ridge_cofacets(K)
    # Sign induced on ridge f minus f[i] by facet f (sorted) is (-1)^i.
    induced: dict[tuple[Simplex, int], int] = {}
    for j, f in enumerate(K.facets):
        for i in range(len(f)):
            induced[f[:i] + f[i + 1:], j] = -1 if i & 1 else 1
    neighbours: dict[int, list[tuple[int, Simplex]]] = {}
    for r, fs in ridges.items():
        if len(fs) == 2:
            a, b = fs
            neighbours.setdefault(a, []).append((b, r))
            neighbours.setdefault(b, []).append((a, r))
    sign: dict[int, int] = {}
    for start in range(len(K.facets)):
        if start in sign:
            continue
        sign[start] = 1
        queue = [start]
        while queue:
            a = queue.pop()
            for b, r in neighbours.get(a, ()):
                want = -sign[a] * induced[r, a] * induced[r, b]
                if b not in sign:
                    sign[b] = want
                    queue.append(b)
                elif sign[b] != want:
                    return False
    return True
