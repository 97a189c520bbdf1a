"""Built-in triangulations of the manifolds used by tests and reports.

Entries carry hand-derived expected invariants (classical values, Künneth
for products) that the test suite re-derives with the engine.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Callable

from .algebra import Group
from .simplicial import SimplicialComplex, parse_complex

DEFAULT_MAX_FACETS = 50_000


class CatalogError(KeyError):
    pass


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    if n < 1:
        raise ValueError("sphere dimension must be at least 1")
    return SimplicialComplex(combinations(range(n + 2), n + 1), name=f"sphere({n})")


def _staircases(p: int, q: int):
    """Monotone lattice paths (0,0) -> (p,q) as lists of points."""
    for rights in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        rs = set(rights)
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product(K: SimplicialComplex, L: SimplicialComplex, max_facets: int = DEFAULT_MAX_FACETS,
            name: str | None = None) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L|.

    Vertex (v, w) gets label v * W + w with W = max(L) + 1, so numeric order
    refines the product order and every staircase chain is increasing.
    """
    p, q = K.dim, L.dim
    count = len(K.facets) * len(L.facets) * math.comb(p + q, p)
    if count > max_facets:
        raise ValueError(f"product would have {count} facets, above the cap of {max_facets}")
    W = max(L.vertices) + 1
    paths = list(_staircases(p, q))
    facets = [
        tuple(s[i] * W + t[j] for i, j in path)
        for s in K.facets
        for t in L.facets
        for path in paths
    ]
    return SimplicialComplex(facets, name=name or f"{K.name}x{L.name}", dim=p + q)


def _read(name: str) -> str:
    return resources.files(__package__).joinpath(f"data/{name}.json").read_text()


def _data(name: str) -> SimplicialComplex:
    return parse_complex(_read(name), name=name)


def _provenance(name: str) -> str:
    return json.loads(_read(name)).get("provenance", "")


def _g(rank: int = 0, *torsion: int) -> Group:
    return Group.from_orders(rank, torsion)


Z, ZERO = _g(1), _g(0)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], SimplicialComplex]
    homology: tuple[Group, ...]
    orientable: bool
    provenance: str
    vertices: int | None = None

    @property
    def complex(self) -> SimplicialComplex:
        return get(self.name)

    @property
    def dim(self) -> int:
        return len(self.homology) - 1

    @property
    def euler(self) -> int:
        return sum((-1) ** k * h.free_rank for k, h in enumerate(self.homology))

    @property
    def expected(self) -> dict:
        return {
            "euler": self.euler,
            "orientable": self.orientable,
            "homology": list(self.homology),
            "mod2_betti": self.mod2_betti,
        }

    @property
    def mod2_betti(self) -> tuple[int, ...]:
        def even(h):
            return sum(1 for d in h.torsion if d % 2 == 0)

        return tuple(
            h.free_rank + even(h) + (even(self.homology[k - 1]) if k else 0)
            for k, h in enumerate(self.homology)
        )


def _product_entry(name, a, b, homology, orientable):
    return CatalogEntry(
        name,
        lambda: product(get(a), get(b), name=name),
        homology,
        orientable,
        f"staircase product of {a} and {b}; homology by the Künneth formula",
    )


def _sphere_homology(n):
    return (Z,) + (ZERO,) * (n - 1) + (Z,)


_ENTRIES: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry) -> None:
    _ENTRIES[entry.name] = entry


for _n in range(1, 8):
    _register(CatalogEntry(
        f"sphere({_n})", (lambda n=_n: sphere(n)), _sphere_homology(_n), True,
        "boundary of the standard simplex", _n + 2,
    ))

_register(CatalogEntry("torus2", lambda: _data("torus2"), (Z, _g(2), Z), True, _provenance("torus2"), 7))
_register(CatalogEntry("rp2", lambda: _data("rp2"), (Z, _g(0, 2), ZERO), False, _provenance("rp2"), 6))
_register(CatalogEntry("klein", lambda: _data("klein"), (Z, _g(1, 2), ZERO), False, _provenance("klein"), 8))
_register(CatalogEntry("rp3", lambda: _data("rp3"), (Z, _g(0, 2), ZERO, Z), True, _provenance("rp3"), 11))
_register(CatalogEntry("cp2", lambda: _data("cp2"), (Z, ZERO, Z, ZERO, Z), True, _provenance("cp2"), 9))

_register(_product_entry("t2", "sphere(1)", "sphere(1)", (Z, _g(2), Z), True))
_register(_product_entry("t3", "t2", "sphere(1)", (Z, _g(3), _g(3), Z), True))
_register(_product_entry("t4", "t3", "sphere(1)", (Z, _g(4), _g(6), _g(4), Z), True))
_register(_product_entry("s1xs2", "sphere(1)", "sphere(2)", (Z, Z, Z, Z), True))
_register(_product_entry("rp2xs1", "rp2", "sphere(1)", (Z, _g(1, 2), _g(0, 2), ZERO), False))
_register(_product_entry("s1xs3", "sphere(1)", "sphere(3)", (Z, Z, ZERO, Z, Z), True))
_register(_product_entry("s2xs2", "sphere(2)", "sphere(2)", (Z, ZERO, _g(2), ZERO, Z), True))
_register(_product_entry("rp2xs2", "rp2", "sphere(2)", (Z, _g(0, 2), Z, _g(0, 2), ZERO), False))
_register(_product_entry("s1xs4", "sphere(1)", "sphere(4)", (Z, Z, ZERO, ZERO, Z, Z), True))
_register(_product_entry("rp3xs2", "rp3", "sphere(2)", (Z, _g(0, 2), Z, _g(1, 2), ZERO, Z), True))
_register(_product_entry("rp2xs3", "rp2", "sphere(3)", (Z, _g(0, 2), ZERO, Z, _g(0, 2), ZERO), False))


def names() -> list[str]:
    return list(_ENTRIES)


def entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[_normalise(name)]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(_ENTRIES)}") from None


def _normalise(name: str) -> str:
    m = re.fullmatch(r"\s*(?:sphere|s)\s*\(?\s*(\d+)\s*\)?\s*", name, re.IGNORECASE)
    if m:
        return f"sphere({int(m.group(1))})"
    return name.strip().lower()


@lru_cache(maxsize=None)
def _build(name: str) -> SimplicialComplex:
    return _ENTRIES[name].build()


def get(name: str) -> SimplicialComplex:
    """Catalog complex by name, e.g. ``get("sphere(3)")`` or ``get("cp2")``."""
    return _build(entry(name).name)
