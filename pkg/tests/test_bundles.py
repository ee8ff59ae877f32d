import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skan.bundles.actions import GAction, GBundle, translation_action, trivial_action
from skan.bundles.cech import cech_nerve, cover
from skan.bundles.principality import (associated, classify_principality, pullback_bundle,
                                       pushforward_bundle)
from skan.bundles.quotients import homotopy_quotient, quotient_by_action, shear
from skan.bundles.twisting import (TwistingFunction, classifying_map, enumerate_twistings,
                                   find_gauge, trivial_twisting, twisted_product,
                                   twisting_classes, twisting_of_map)
from skan.core.kan import check_kan, check_trivial_fibration, to_point
from skan.core.maps import constant
from skan.core.standard import boundary, circle_min, simplex
from skan.errors import (CertificateMissing, EmptyInput, InvalidAction,
                         TwistingIdentityViolation)
from skan.groups.finite import cyclic, symmetric
from skan.groups.simplicial import const_sgroup
from skan.groups.wbar import w_bundle, wbar
from skan.invariants.homology import homology

Z2 = const_sgroup(cyclic(2))
Z3 = const_sgroup(cyclic(3))
S3 = const_sgroup(symmetric(3))

# frozen from tests/oracle.py
TWISTINGS_CIRCLE = {"Z/2": 2, "Z/3": 3, "S3": 6}
TWISTINGS_BOUNDARY2 = {"Z/2": 8}
DOUBLE_COVER_LEVELS = [2, 4, 6, 8]
DOUBLE_COVER_HQUOT = [2, 8, 24, 64]


def double_cover():
    return twisted_product(circle_min(), Z2, enumerate_twistings(circle_min(), Z2)[1])


@pytest.mark.parametrize("G", [Z2, Z3, S3], ids=lambda G: G.label)
def test_twisting_counts_on_circle(G):
    assert len(enumerate_twistings(circle_min(), G)) == TWISTINGS_CIRCLE[G.group(0).label]


def test_twisting_counts_on_triangle():
    assert len(enumerate_twistings(boundary(2), Z2)) == TWISTINGS_BOUNDARY2["Z/2"]


def test_twisting_values_must_be_group_elements():
    with pytest.raises(TwistingIdentityViolation):
        TwistingFunction(circle_min(), Z2, [(), (5,)])


def test_twistings_on_a_triangle_obey_the_last_face_rule():
    # a contractible base: one free value per spanning-tree edge
    assert len(enumerate_twistings(simplex(2), Z2)) == 4
    with pytest.raises(TwistingIdentityViolation):
        TwistingFunction(simplex(2), Z2, [(), (1, 1, 1), (1,)])


def test_twisted_product_levels():
    b = double_cover()
    assert b.P.counts(3) == DOUBLE_COVER_LEVELS
    assert homology(b.P, 1).strings() == ["Z", "Z"]
    assert b.action.is_free()


def test_gauge_classes_on_circle():
    # on S1 gauge classes match conjugacy classes
    assert len(twisting_classes(enumerate_twistings(circle_min(), S3))) == 3
    taus = enumerate_twistings(boundary(2), Z2)
    assert len(twisting_classes(taus)) == 2
    assert find_gauge(taus[0], taus[0]) is not None


def test_classifying_map_round_trip():
    W = wbar(Z2, circle_min().dim)
    for tau in enumerate_twistings(circle_min(), Z2):
        f = classifying_map(tau, W)
        assert twisting_of_map(f, Z2).values == tau.values


def test_verdicts():
    assert classify_principality(double_cover()).kind == "STRICT"
    triv = trivial_twisting(circle_min(), Z2)
    assert classify_principality(twisted_product(circle_min(), Z2, triv)).kind == "STRICT"
    # G acting trivially on itself over a point is not principal
    a = trivial_action(Z2.underlying(3), Z2, 3)
    b = GBundle(a, simplex(0), to_point(a.P))
    v = classify_principality(b)
    assert v.kind == "FAIL" and not v.at_least_weak()


def test_pullback_along_vertex_is_trivial():
    b = double_cover()
    f = constant(simplex(0), circle_min(), 0)
    pb = pullback_bundle(f, b, certify=True)
    assert pb.P.size(0) == 2
    assert pb.verdict.kind == "STRICT"


def test_pullback_along_identity_keeps_levels():
    from skan.core.maps import identity
    b = double_cover()
    pb = pullback_bundle(identity(circle_min()), b)
    assert pb.P.counts(3) == DOUBLE_COVER_LEVELS


def test_pushforward_needs_certificate():
    # Δ[1] -> Δ[0] is not an acyclic fibration; WG -> Δ[0] is
    assert not check_trivial_fibration(to_point(simplex(1)), 2).ok
    X, _, _ = w_bundle(Z2, 3)
    b = twisted_product(X, Z2, trivial_twisting(X, Z2))
    p = to_point(X)
    with pytest.raises(CertificateMissing):
        pushforward_bundle(p, b)
    with pytest.raises(CertificateMissing):
        pushforward_bundle(p, b, check_kan(p, 3))
    rep = check_trivial_fibration(p, 3)
    pf = pushforward_bundle(p, b, rep, certify=True)
    assert pf.base == simplex(0)
    assert pf.verdict.at_least_weak()


def test_associated_bundle_with_point_fibre():
    b = double_cover()
    Q, proj = associated(b, trivial_action(simplex(0), Z2, 3))
    assert Q.counts(2)[:2] == [1, 1] or homology(Q, 1).strings() == ["Z", "Z"]
    assert proj.target.label == circle_min().label


def test_associated_with_group_fibre_is_the_bundle():
    b = double_cover()
    Q, _ = associated(b, translation_action(Z2, 3))
    assert Q.counts(2) == DOUBLE_COVER_LEVELS[:3]


def test_homotopy_quotient_of_double_cover():
    b = double_cover()
    T, iso = homotopy_quotient(b.action, 3)
    assert T.counts(3) == DOUBLE_COVER_HQUOT
    assert iso.is_iso()


def test_shear_is_iso_for_free_actions():
    assert shear(double_cover(), 1, 3).is_iso()
    assert shear(double_cover(), 2, 2).is_iso()


def test_strict_quotient_of_translation_is_a_point():
    Q, _ = quotient_by_action(translation_action(S3, 3))
    assert Q.counts(3) == [1, 1, 1, 1]


def test_bad_action_is_rejected():
    P = Z2.underlying(2)
    with pytest.raises(InvalidAction):
        GAction(P, Z2, lambda n, p, g: 0, 2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([Z2, Z3, S3]), st.integers(0, 2), st.data())
def test_translation_action_laws(G, n, data):
    a = translation_action(G, 2)
    H = G.group(n)
    p = data.draw(st.integers(0, a.P.size(n) - 1))
    g = data.draw(st.integers(0, len(H) - 1))
    h = data.draw(st.integers(0, len(H) - 1))
    assert a.rule(n, a.rule(n, p, g), h) == a.rule(n, p, H.mul(g, h))
    assert a.rule(n, p, H.e) == p
    if n >= 1:
        for i in range(n + 1):
            assert a.P.face_table(n)[a.rule(n, p, g)][i] == \
                a.rule(n - 1, a.P.face_table(n)[p][i], G.face(n, i, g))


def test_cover_must_cover():
    X = boundary(2)
    with pytest.raises(EmptyInput):
        cover(X, [[X.names[1][0]]])
    with pytest.raises(EmptyInput):
        cover(X, [])


def test_cech_nerve_of_edge_cover():
    X = boundary(2)
    f = cover(X, [[n] for n in X.names[1]])
    assert len(f.members) == 3
    _, proj = cech_nerve(f)
    assert homology(proj.source, 1).strings() == ["Z", "Z"]
