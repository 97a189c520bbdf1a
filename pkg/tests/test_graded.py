import math

import pytest

from immersion_cobordism import catalog
from immersion_cobordism.algebra import Group
from immersion_cobordism.cohomology import cohomology_with_coefficients, mod2_cohomology
from immersion_cobordism.graded import (
    BRANCHES,
    SET_NOTE,
    ManifoldInputError,
    compute_EH2,
    compute_graded,
    graded_order,
    star_condition,
)
from immersion_cobordism.simplicial import SimplicialComplex, orientability
from immersion_cobordism.tables import P_group, Status

Z2 = Group.cyclic(2)


def groups(r):
    return [f.group for f in r.factors]


def test_sphere3():
    r = compute_graded(catalog.get("sphere(3)"))
    assert groups(r) == [Group(), Group(), Group.cyclic(8)]
    assert r.total_order == graded_order(r) == 8
    assert r.star_condition is None


def test_rp3():
    r = compute_graded(catalog.get("rp3"))
    assert groups(r) == [Z2, Z2, Group.cyclic(8)]
    assert r.total_order == 32
    assert r.eh2.branch == "low_dim_full"


def test_cp2():
    r = compute_graded(catalog.get("cp2"))
    assert groups(r) == [Group(), Group(), Group(), Z2]
    assert r.total_order == 2
    assert r.eh2.branch == "orientable4_quadric" and r.eh2.group.is_trivial


def test_sphere5():
    r = compute_graded(catalog.get("sphere(5)"))
    assert all(g.is_trivial for g in groups(r))
    assert r.total_order == 1
    assert r.star_condition is True
    assert r.eh2.branch == "star_condition_quadric"


def test_torus():
    r = compute_graded(catalog.get("t2"))
    assert groups(r) == [Group.elementary(2), Z2]
    assert graded_order(r) == 8


def test_circle():
    r = compute_graded(catalog.get("sphere(1)"))
    assert groups(r) == [Z2] and r.total_order == 2 and r.eh2 is None


def test_rp3xs2_undetermined():
    K = catalog.get("rp3xs2")
    assert orientability(K) and not star_condition(K)
    e = compute_EH2(K)
    assert e.status is Status.UNDETERMINED and e.branch == "undetermined" and not e.exact
    assert e.group is None
    assert e.upper_bound == Group.elementary(2) and e.candidate == Group.elementary(2)
    r = compute_graded(K)
    assert graded_order(r) is None and r.total_order is None
    f2 = r.to_json()["factors"][1]
    assert f2["status"] == "undetermined" and f2["group"] is None
    assert f2["upper_bound"] == {"rank": 0, "torsion": [2, 2]}


def test_s1xs4_star_branch():
    e = compute_EH2(catalog.get("s1xs4"))
    assert e.branch == "star_condition_quadric" and e.group.is_trivial
    assert compute_graded(catalog.get("s1xs4")).total_order == 4


def test_nonorientable_branches():
    assert compute_EH2(catalog.get("rp2xs2")).branch == "nonorientable4_full"
    assert compute_EH2(catalog.get("rp2xs2")).group == Group.elementary(2)
    assert compute_EH2(catalog.get("rp2xs3")).branch == "undetermined"
    assert compute_EH2(catalog.get("klein")).branch == "low_dim_full"


def test_orientable_four_manifolds():
    assert compute_EH2(catalog.get("s2xs2")).group == Group.elementary(2)
    assert compute_EH2(catalog.get("t4")).group == Group.elementary(6)
    assert compute_graded(catalog.get("t4")).total_order == 2**23


@pytest.mark.parametrize("name", [n for n in catalog.names() if catalog.entry(n).dim >= 2])
def test_eh2_invariants(name):
    e = compute_EH2(catalog.get(name))
    assert e.branch in BRANCHES
    assert e.exact == (e.branch != "undetermined")
    if e.exact:
        assert e.upper_bound.order() % e.group.order() == 0
    if e.candidate is not None:
        # Q^2 is a subgroup of H^2
        assert e.upper_bound.order() % e.candidate.order() == 0


@pytest.mark.parametrize("name", catalog.names())
def test_factors_and_top_factor(name):
    K = catalog.get(name)
    r = compute_graded(K)
    n = K.dim
    assert [f.degree for f in r.factors] == list(range(1, n + 1))
    for f in r.factors:
        if f.degree != 2:
            assert f.status is Status.EXACT
            assert f.group == cohomology_with_coefficients(K, f.degree, P_group(f.degree))
    top = r.factors[-1].group
    Pn = P_group(n)
    if r.orientable:
        assert top == Pn
    else:
        # P_n / 2 P_n
        assert top == Group.elementary(sum(1 for d in Pn.torsion if d % 2 == 0))
    if all(f.status is Status.EXACT for f in r.factors):
        assert r.total_order == math.prod(f.group.order() for f in r.factors)


@pytest.mark.parametrize("name", [n for n in catalog.names() if catalog.entry(n).dim == 3])
def test_three_manifold_formula(name):
    K = catalog.get(name)
    r = compute_graded(K)
    h1, h2 = (Group.elementary(mod2_cohomology(K, k).dimension) for k in (1, 2))
    last = Group.cyclic(8) if orientability(K) else Z2
    assert groups(r) == [h1, h2, last]


def test_rejects_bad_inputs():
    with pytest.raises(ManifoldInputError, match="edge \\[0, 1\\] has 1 cofacet"):
        compute_graded(SimplicialComplex([(0, 1, 2)]))
    with pytest.raises(ManifoldInputError, match="dimension 8"):
        compute_graded(catalog.sphere(8))
    tetra = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    with pytest.raises(ManifoldInputError):
        compute_graded(SimplicialComplex(tetra + [tuple(v + 4 for v in f) for f in tetra]))
    with pytest.raises(ManifoldInputError):
        compute_EH2(catalog.sphere(1))


def test_json_schema_and_determinism():
    K = catalog.get("rp3")
    a, b = compute_graded(K).to_json(), compute_graded(K).to_json()
    assert a == b
    assert set(a) == {"manifold", "dimension", "orientable", "star_condition", "factors", "total_order", "note"}
    assert a["note"] == SET_NOTE
    assert a["factors"][2] == {"degree": 3, "group": {"rank": 0, "torsion": [8]}, "status": "exact"}
