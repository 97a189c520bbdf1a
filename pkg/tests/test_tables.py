import pytest

from immersion_cobordism.algebra import Group, quotient_group, subgroup_generated
from immersion_cobordism.tables import (
    UNDETERMINED,
    P_group,
    Q_generators,
    Q_group,
    doubles_in_Q,
    scriptP_group,
    tables_json,
    theta_is_isomorphism,
)

P_EXPECTED = {
    1: (2,), 2: (2,), 3: (8,), 4: (2,), 5: (), 6: (2,), 7: (2, 16), 8: (2, 2, 2), 9: (2, 2, 2, 2),
}


@pytest.mark.parametrize("k", range(1, 10))
def test_P(k):
    assert P_group(k) == Group(0, P_EXPECTED[k])


def test_P7_is_chain():
    assert P_group(7).torsion == (2, 16)
    assert P_group(7) == Group.from_orders(0, (16, 2))


def test_Q():
    assert Q_group(3) == Group.cyclic(4)
    for k in (1, 2, 4, 5, 6):
        assert Q_group(k).is_trivial
    assert Q_group(7) is UNDETERMINED
    assert Q_generators(7) is UNDETERMINED


@pytest.mark.parametrize("k, order", [(1, 2), (2, 2), (3, 2), (4, 2), (5, 1), (6, 2)])
def test_scriptP(k, order):
    G = scriptP_group(k)
    assert G.order() == order
    assert G == (Group.cyclic(2) if order == 2 else Group())
    assert G == quotient_group(P_group(k), Q_generators(k))


def test_theta():
    assert [k for k in range(1, 10) if theta_is_isomorphism(k)] == [1, 2, 4, 6]
    assert not theta_is_isomorphism(3) and not theta_is_isomorphism(5)


@pytest.mark.parametrize("k", range(1, 7))
def test_twice_P_in_Q(k):
    assert doubles_in_Q(k)


def test_Q3_is_2P3():
    P3 = P_group(3)
    assert subgroup_generated(P3, [(2,)]) == Q_group(3) == Group.cyclic(4)
    assert quotient_group(P3, [(2,)]) == Group.cyclic(2)


def test_ranges():
    for fn, bad in ((P_group, 10), (Q_group, 8), (scriptP_group, 7), (theta_is_isomorphism, 0)):
        with pytest.raises(ValueError):
            fn(bad)


def test_json_dump():
    data = tables_json()
    assert data["P"]["7"] == {"rank": 0, "torsion": [2, 16]}
    assert data["Q"]["7"] == "undetermined"
    assert data["Q"]["3"] == {"rank": 0, "torsion": [4]}
    assert data["scriptP"]["5"] == {"rank": 0, "torsion": []}
    assert data["theta_iso"] == [1, 2, 4, 6]
