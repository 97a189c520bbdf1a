"""Cobordism groups of codimension-one immersions in spheres, and related constants.

P_n = N(S^n) is the n-th stable homotopy group of RP^infinity (Liulevicius).
Q_n ⊆ P_n is the subgroup of immersions that bound an immersed compact
n-manifold in some (n+1)-manifold with boundary S^n, and scriptP_n = P_n / Q_n.
"""

from __future__ import annotations

from enum import Enum

from .algebra import Group, in_subgroup, quotient_group, subgroup_generated


class Status(str, Enum):
    EXACT = "exact"
    UNDETERMINED = "undetermined"


UNDETERMINED = Status.UNDETERMINED

# Cyclic-summand orders of P_n, n = 1..9.
_P_ORDERS: dict[int, tuple[int, ...]] = {
    1: (2,),
    2: (2,),
    3: (8,),
    4: (2,),
    5: (),
    6: (2,),
    7: (16, 2),
    8: (2, 2, 2),
    9: (2, 2, 2, 2),
}

# Generators of Q_n inside P_n, in coordinates of the invariant-factor
# decomposition of P_n. Q_n = 0 where theta_n is an isomorphism or P_n = 0;
# Q_3 = 2 P_3. Q_7 and beyond are not known here.
_Q_GENERATORS: dict[int, list[tuple[int, ...]]] = {
    1: [],
    2: [],
    3: [(2,)],
    4: [],
    5: [],
    6: [],
}

_THETA_ISO = frozenset({1, 2, 4, 6})


def _check(k: int, hi: int, what: str) -> None:
    if not 1 <= k <= hi:
        raise ValueError(f"{what} is tabulated for degrees 1..{hi}, got {k}")


def P_group(k: int) -> Group:
    _check(k, 9, "P_n")
    return Group.from_orders(0, _P_ORDERS[k])


def Q_group(k: int) -> Group | Status:
    """Q_k as an abstract group, or UNDETERMINED for k = 7."""
    _check(k, 7, "Q_n")
    if k not in _Q_GENERATORS:
        return UNDETERMINED
    return subgroup_generated(P_group(k), _Q_GENERATORS[k])


def Q_generators(k: int) -> list[tuple[int, ...]] | Status:
    _check(k, 7, "Q_n")
    return list(_Q_GENERATORS.get(k, [])) if k in _Q_GENERATORS else UNDETERMINED


def scriptP_group(k: int) -> Group:
    """P_k / Q_k, computed as a quotient."""
    _check(k, 6, "P_n/Q_n")
    return quotient_group(P_group(k), _Q_GENERATORS[k])


def theta_is_isomorphism(k: int) -> bool:
    """Whether counting k-tuple points mod 2 is an isomorphism P_k -> Z/2."""
    _check(k, 9, "theta_n")
    return k in _THETA_ISO


def doubles_in_Q(k: int) -> bool:
    """Check 2·P_k ⊆ Q_k on the generators of P_k."""
    P = P_group(k)
    gens = _Q_GENERATORS[k]
    n = len(P.torsion)
    return all(
        in_subgroup(P, gens, tuple(2 if i == j else 0 for i in range(n)))
        for j in range(n)
    )


def tables_json() -> dict:
    def q(k):
        g = Q_group(k)
        return g.value if isinstance(g, Status) else g.to_json()

    return {
        "P": {str(k): P_group(k).to_json() for k in range(1, 10)},
        "Q": {str(k): q(k) for k in range(1, 8)},
        "scriptP": {str(k): scriptP_group(k).to_json() for k in range(1, 7)},
        "theta_iso": sorted(_THETA_ISO),
    }
