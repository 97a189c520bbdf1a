import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from immersion_cobordism import catalog
from immersion_cobordism.cohomology import integral_homology
from immersion_cobordism.simplicial import (
    ComplexFormatError,
    SimplicialComplex,
    boundary_matrix,
    euler_characteristic,
    link,
    load_complex,
    orientability,
    parse_complex,
    parse_facet_text,
    validate_closed_manifold,
)

import oracles

BOUNDARY_TETRA = [list(c) for c in combinations(range(4), 3)]


# ---------------------------------------------------------------- parsing


def test_parse_circle():
    K = parse_complex({"dimension": 1, "facets": [[0, 1], [1, 2], [0, 2]]})
    assert K.dim == 1 and K.vertices == (0, 1, 2)
    assert K.f_vector == (3, 3)


def test_parse_sphere2_from_text():
    K = parse_complex(json.dumps({"name": "S2", "dimension": 2, "facets": BOUNDARY_TETRA}))
    assert K.name == "S2" and K.f_vector == (4, 6, 4)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"dimension": 2, "facets": [[0, 1, 2], [0, 1, 2]]}, "duplicate facet"),
        ({"dimension": 2, "facets": [[0, 1, 2], [0, 1]]}, ""),
        ({"dimension": 2, "facets": [[0, 0, 1]]}, ""),
        ({"dimension": 3, "facets": [[0, 1, 2]]}, ""),
        ({"dimension": 2, "facets": [[2, 1, 0]]}, "increasing"),
        ({"dimension": 2}, ""),
        ({"dimension": "2", "facets": [[0, 1, 2]]}, ""),
        ({"dimension": 2, "facets": []}, ""),
        ({"dimension": 2, "facets": [[0, 1, -2]]}, ""),
        ("{not json", ""),
    ],
)
def test_parse_rejects(doc, fragment):
    with pytest.raises(ComplexFormatError) as err:
        parse_complex(doc if isinstance(doc, str) else json.dumps(doc))
    assert fragment in str(err.value)


def test_parse_ignores_provenance_key():
    K = parse_complex({"name": "x", "dimension": 1, "facets": [[0, 1], [1, 2], [0, 2]], "provenance": "hand"})
    assert K == catalog.sphere(1)


def test_facet_text_and_load(tmp_path):
    text = "# circle\n0 1\n1 2  # edge\n\n0 2\n"
    K = parse_facet_text(text, name="c")
    assert K == catalog.sphere(1)
    p = tmp_path / "c.txt"
    p.write_text(text)
    assert load_complex(str(p)) == K
    q = tmp_path / "c.json"
    q.write_text(json.dumps(K.to_json()))
    assert load_complex(str(q)) == K


def test_skeleta_are_closure_sorted():
    K = catalog.get("torus2")
    for k in range(K.dim + 1):
        expect = oracles.simplices(K, k)
        assert list(K.skeleta[k]) == expect
        assert K.index(k) == {s: i for i, s in enumerate(expect)}


@given(st.permutations(BOUNDARY_TETRA))
def test_indexing_is_deterministic(facets):
    K = SimplicialComplex(facets)
    L = SimplicialComplex(BOUNDARY_TETRA)
    for k in (1, 2):
        assert boundary_matrix(K, k) == boundary_matrix(L, k)


# ---------------------------------------------------------------- validation


def test_validate_sphere3():
    r = validate_closed_manifold(catalog.sphere(3))
    assert r.accepted and r.verdict == "accepted" and not r.reasons


def test_validate_filled_triangle():
    r = validate_closed_manifold(SimplicialComplex([(0, 1, 2)]))
    assert not r.accepted and not r.is_closed_pseudomanifold
    assert "edge [0, 1] has 1 cofacet" in r.reasons


def test_validate_disjoint_spheres():
    facets = BOUNDARY_TETRA + [[v + 4 for v in f] for f in BOUNDARY_TETRA]
    r = validate_closed_manifold(SimplicialComplex(facets))
    assert r.is_closed_pseudomanifold and not r.is_strongly_connected
    assert not r.accepted


def test_validate_wedge_link_check():
    # two copies of the boundary of the 4-simplex sharing vertex 0; its link is two 2-spheres
    first = [list(c) for c in combinations(range(5), 4)]
    second = [[v if v == 0 else v + 4 for v in f] for f in first]
    r = validate_closed_manifold(SimplicialComplex(first + second))
    assert r.is_closed_pseudomanifold and not r.accepted
    assert r.link_check[0] is False
    assert all(ok for v, ok in r.link_check.items() if v != 0)


def test_report_verdict_matches_flags():
    for name in ("sphere(2)", "rp2", "klein"):
        r = validate_closed_manifold(catalog.get(name))
        assert r.accepted == (r.is_pure and r.is_closed_pseudomanifold and r.is_strongly_connected
                              and all(r.link_check.values()))
        assert r.to_json()["verdict"] == "accepted"


def test_link_of_vertex_in_sphere():
    L = link(catalog.sphere(2), 0)
    assert sorted(L) == [(1, 2), (1, 3), (2, 3)]


# ---------------------------------------------------------------- boundary matrices


def test_boundary_circle():
    d = boundary_matrix(catalog.sphere(1), 1).to_dense()
    assert len(d) == 3 and len(d[0]) == 3
    for j in range(3):
        col = [d[i][j] for i in range(3)]
        assert sorted(col) == [-1, 0, 1] and sum(col) == 0


def test_boundary_signs():
    K = catalog.sphere(2)
    d = boundary_matrix(K, 2)
    # column of [0,1,2]: +[1,2] -[0,2] +[0,1]
    col = K.index(2)[(0, 1, 2)]
    idx = K.index(1)
    assert d[idx[(1, 2)], col] == 1 and d[idx[(0, 2)], col] == -1 and d[idx[(0, 1)], col] == 1


def test_boundary_out_of_range():
    with pytest.raises(ValueError):
        boundary_matrix(catalog.sphere(2), 0)
    with pytest.raises(ValueError):
        boundary_matrix(catalog.sphere(2), 3)


def test_torus_boundary_rank_oracle():
    K = catalog.get("torus2")
    d1, d2 = boundary_matrix(K, 1), boundary_matrix(K, 2)
    assert d2.shape == (21, 14)
    assert (d1 @ d2).is_zero()
    assert oracles.rank_bareiss(d2.to_dense()) == 13


@pytest.mark.parametrize("name", catalog.names())
def test_boundary_squared_zero(name):
    K = catalog.get(name)
    for k in range(2, K.dim + 1):
        assert (boundary_matrix(K, k - 1) @ boundary_matrix(K, k)).is_zero()


# ---------------------------------------------------------------- orientability and Euler characteristic


def test_orientability_examples():
    assert all(orientability(catalog.sphere(n)) for n in range(1, 8))
    assert not orientability(catalog.get("rp2"))
    assert integral_homology(catalog.get("rp2"), 2).free_rank == 0
    assert orientability(catalog.get("cp2"))
    assert integral_homology(catalog.get("cp2"), 4).free_rank == 1


@pytest.mark.parametrize("name", catalog.names())
def test_orientability_matches_top_homology(name):
    K = catalog.get(name)
    assert orientability(K) == (integral_homology(K, K.dim).free_rank == 1)


def test_euler_examples():
    assert euler_characteristic(catalog.sphere(2)) == 2
    assert euler_characteristic(catalog.get("torus2")) == 7 - 21 + 14 == 0
    assert catalog.get("cp2").f_vector == (9, 36, 84, 90, 36)
    assert euler_characteristic(catalog.get("cp2")) == 3


@pytest.mark.parametrize("name", catalog.names())
def test_euler_equals_betti_sum(name):
    K = catalog.get(name)
    betti = [integral_homology(K, k).free_rank for k in range(K.dim + 1)]
    assert euler_characteristic(K) == sum((-1) ** k * b for k, b in enumerate(betti))
