"""Cobordism groups of codimension-one immersions in closed manifolds of dimension at most 7."""

from .algebra import FinitelyGeneratedAbelianGroup, IntegerMatrix, smith_normal_form
from .catalog import get as catalog_get
from .graded import compute_EH2, compute_graded, graded_order
from .simplicial import SimplicialComplex, parse_complex


def clear_caches() -> None:
    """Drop memoised complexes and cohomology data (used for cold timings)."""
    from . import catalog, cohomology, fourgroup

    for fn in (
        catalog._build,
        cohomology.boundary_invariants,
        cohomology.coboundary_columns,
        cohomology.mod2_cohomology,
        cohomology.mod2_betti_numbers,
        cohomology.cup_square_kernel,
        fourgroup.star_structure,
    ):
        fn.cache_clear()


__all__ = [
    "FinitelyGeneratedAbelianGroup",
    "IntegerMatrix",
    "SimplicialComplex",
    "catalog_get",
    "clear_caches",
    "compute_EH2",
    "compute_graded",
    "graded_order",
    "parse_complex",
    "smith_normal_form",
]

__version__ = "0.1.0"
