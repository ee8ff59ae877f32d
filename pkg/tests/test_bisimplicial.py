import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skan.bisimplicial import (canonical_maps, column, const, const_iso, dec0, diagonal, row,
                               total, total_dec)
from skan.bundles.actions import trivial_action
from skan.bundles.quotients import action_groupoid
from skan.core.constructions import coproduct, truncate
from skan.core.homsets import find_isomorphism
from skan.core.maps import identity
from skan.core.standard import boundary, circle_min, simplex
from skan.errors import InvalidArgument
from skan.groups.finite import cyclic
from skan.groups.simplicial import const_sgroup
from skan.groups.wbar import wbar
from skan.invariants.certify import _retract_ok
from skan.invariants.homology import homology

# frozen from tests/oracle.py
DEC0_INTERVAL = [3, 4, 5, 6]
BAR_Z2 = ["Z", "Z/2", "0", "Z/2"]


def test_dec0_of_interval():
    D, proj, _ = dec0(simplex(1))
    assert D.counts(3) == DEC0_INTERVAL
    U, _ = coproduct([simplex(0), simplex(1)])
    assert find_isomorphism(D, U) is not None
    assert proj.target == simplex(1)


@pytest.mark.parametrize("X", [simplex(2), boundary(2), circle_min()], ids=lambda X: X.label)
def test_dec0_retracts_onto_vertices(X):
    D, _, ret = dec0(X)
    assert ret.retraction.after(ret.section) == identity(ret.section.source)
    assert any(_retract_ok(ret.section, ret.retraction, ret.homotopy, d)
               for d in ("id_to_fr", "fr_to_id"))
    # one contractible slice per vertex
    assert homology(D, 1).strings()[0] == ("Z" if X.num_generators(0) == 1
                                          else f"Z^{X.num_generators(0)}")


def test_const_rows_and_columns():
    X = boundary(2)
    B = const(X)
    assert find_isomorphism(row(B, 0, 2), truncate(X, 2)) is not None
    assert column(B, 1, 2).counts(2) == [X.size(1)] * 3
    with pytest.raises(InvalidArgument):
        column(B, 0)
    with pytest.raises(InvalidArgument):
        const(X, "diagonal")


@pytest.mark.parametrize("X", [simplex(1), simplex(2), circle_min(), boundary(2)],
                         ids=lambda X: X.label)
def test_const_iso(X):
    assert const_iso(X).is_iso()


def test_diagonal_of_const_is_the_space():
    X = boundary(2)
    assert find_isomorphism(diagonal(const(X), 2), X) is not None


def test_total_and_diagonal_of_action_groupoid():
    B = action_groupoid(trivial_action(simplex(0), const_sgroup(cyclic(2)), 4), 4)
    assert homology(diagonal(B, 4), 3).strings() == BAR_Z2
    assert homology(total(B, 4), 3).strings() == BAR_Z2


def test_canonical_maps_are_certified():
    B = action_groupoid(trivial_action(simplex(0), const_sgroup(cyclic(2)), 3), 3)
    out = canonical_maps(B, 3)
    assert out["certificate"] is not None
    u = canonical_maps(simplex(1), 2)
    assert u["certificate"] is not None
    assert u["unit"].injective(2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([simplex(2), wbar(const_sgroup(cyclic(2)), 5)]),
       st.integers(0, 1), st.integers(0, 1), st.data())
def test_total_decalage_bisimplicial_identities(X, k, l, data):
    B = total_dec(X)
    xs = list(B.elements(k + 1, l + 1))
    x = data.draw(st.sampled_from(xs))
    # horizontal and vertical faces commute
    for i in range(k + 2):
        for j in range(l + 2):
            a = B.vface(k, l + 1, j, B.hface(k + 1, l + 1, i, x))
            b = B.hface(k + 1, l, i, B.vface(k + 1, l + 1, j, x))
            assert a == b
