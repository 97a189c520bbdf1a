"""Assemble the graded cobordism group gr*N(M) of codimension-one immersions.

For a closed n-manifold M with n <= 7,

    gr*N(M) = H^1(M; P_1) x EH^2(M) x H^3(M; P_3) x ... x H^n(M; P_n),

where EH^2(M) ⊆ H^2(M; Z/2) is the subgroup of extendible classes:

* n <= 3, or n = 4 and M non-orientable: all of H^2(M; Z/2);
* n = 4 and M orientable: Q^2(M) = {x : x ∪ x = 0};
* n in {5, 6, 7}, M orientable and Ext(H_3(M; Z), Z/8) = 0: Q^2(M);
* otherwise not determined; H^2 and Q^2 are reported as bounds/candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import Group, ext_group
from .cohomology import (
    cohomology_with_coefficients,
    cup_square_kernel,
    integral_homology,
    mod2_cohomology,
)
from .simplicial import SimplicialComplex, orientability, validate_closed_manifold
from .tables import P_group, Status

MAX_DIMENSION = 7

SET_NOTE = (
    "gr*N(M) is in bijection with N(M) as a set; "
    "it does not determine the group structure of N(M)."
)

STAR_CONDITION = "(*) M orientable and Ext(H_3(M;Z), Z/8) = 0"

BRANCHES = (
    "low_dim_full",
    "nonorientable4_full",
    "orientable4_quadric",
    "star_condition_quadric",
    "undetermined",
)


class ManifoldInputError(ValueError):
    """Input is outside the hypotheses: not a closed connected manifold, or n > 7."""


def require_closed_manifold(K: SimplicialComplex) -> None:
    report = validate_closed_manifold(K)
    if not report.accepted:
        raise ManifoldInputError("not a closed manifold: " + "; ".join(report.reasons[:3]))


def _check_dimension(K: SimplicialComplex, lo: int) -> None:
    if K.dim > MAX_DIMENSION:
        raise ManifoldInputError(
            f"dimension {K.dim} > {MAX_DIMENSION}: the computation is only established for n <= 7"
        )
    if K.dim < lo:
        raise ManifoldInputError(f"dimension {K.dim} < {lo}")


def star_condition(K: SimplicialComplex) -> bool:
    """M orientable and Ext(H_3(M; Z), Z/8) = 0."""
    H3 = integral_homology(K, 3) if K.dim >= 3 else Group()
    return orientability(K) and ext_group(H3, 8).is_trivial


@dataclass(frozen=True)
class EH2Result:
    status: Status
    group: Group | None
    upper_bound: Group
    candidate: Group | None
    branch: str

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT


def compute_EH2(K: SimplicialComplex, validate: bool = True) -> EH2Result:
    _check_dimension(K, 2)
    if validate:
        require_closed_manifold(K)
    n = K.dim
    H2 = Group.elementary(mod2_cohomology(K, 2).dimension)
    if n <= 3:
        return EH2Result(Status.EXACT, H2, H2, None, "low_dim_full")
    orientable = orientability(K)
    if n == 4 and not orientable:
        return EH2Result(Status.EXACT, H2, H2, None, "nonorientable4_full")
    Q2 = Group.elementary(cup_square_kernel(K).dimension)
    if n == 4:
        return EH2Result(Status.EXACT, Q2, H2, Q2, "orientable4_quadric")
    if star_condition(K):
        return EH2Result(Status.EXACT, Q2, H2, Q2, "star_condition_quadric")
    return EH2Result(Status.UNDETERMINED, None, H2, Q2, "undetermined")


@dataclass(frozen=True)
class Factor:
    degree: int
    group: Group | None
    status: Status
    upper_bound: Group | None = None
    candidate: Group | None = None

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "group": self.group.to_json() if self.group is not None else None,
            "status": self.status.value,
        }
        if self.status is Status.UNDETERMINED:
            out["upper_bound"] = self.upper_bound.to_json()
            if self.candidate is not None:
                out["candidate"] = self.candidate.to_json()
        return out


@dataclass(frozen=True)
class GradedResult:
    manifold: str
    dimension: int
    orientable: bool
    star_condition: bool | None
    factors: tuple[Factor, ...]
    eh2: EH2Result | None = None
    note: str = SET_NOTE

    @property
    def total_order(self) -> int | None:
        return graded_order(self)

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "dimension": self.dimension,
            "orientable": self.orientable,
            "star_condition": self.star_condition,
            "factors": [f.to_json() for f in self.factors],
            "total_order": self.total_order,
            "note": self.note,
        }


def compute_graded(K: SimplicialComplex) -> GradedResult:
    _check_dimension(K, 1)
    require_closed_manifold(K)
    n = K.dim
    factors = []
    eh2 = None
    for k in range(1, n + 1):
        if k == 2:
            eh2 = compute_EH2(K, validate=False)
            factors.append(Factor(2, eh2.group, eh2.status, eh2.upper_bound, eh2.candidate))
        else:
            factors.append(Factor(k, cohomology_with_coefficients(K, k, P_group(k)), Status.EXACT))
    return GradedResult(
        manifold=K.name,
        dimension=n,
        orientable=orientability(K),
        star_condition=star_condition(K) if n >= 5 else None,
        factors=tuple(factors),
        eh2=eh2,
    )


def graded_order(result: GradedResult) -> int | None:
    """Product of factor orders, or None if some factor is undetermined."""
    if any(f.status is not Status.EXACT for f in result.factors):
        return None
    return math.prod(int(f.group.order()) for f in result.factors)
