from pathlib import Path

import pytest

from skan.bundles.cech import cover
from skan.bundles.twisting import enumerate_twistings, trivial_twisting, twisted_product
from skan.classification.cocycles import (Cocycle, bundle_roundtrip, cocycle_roundtrip, compose,
                                          extr, factor_span, find_section, identity_cocycle, rec,
                                          strictify, universal_cocycle)
from skan.classification.cohomology import h1, hn_cech, nerve_complex
from skan.cli.formats import parse
from skan.core.maps import constant, identity
from skan.core.standard import boundary, circle_min, simplex
from skan.errors import (CertificateNotFound, IntersectionNotContractible, InvalidArgument,
                         SectionNotFound)
from skan.groups.finite import cyclic, symmetric
from skan.groups.simplicial import const_sgroup
from skan.groups.wbar import wbar
from skan.invariants.homology import homology

DATA = Path(__file__).resolve().parents[1] / "src" / "skan" / "cli" / "data"

Z2 = const_sgroup(cyclic(2))
Z3 = const_sgroup(cyclic(3))
S3 = const_sgroup(symmetric(3))

# frozen from tests/oracle.py
H1_CIRCLE = {"Z/2": 2, "Z/3": 3, "S3": 3}
CECH_H1_TRIANGLE_Z2 = 2
CECH_H2_TETRA_Z2 = 2
FOUR_CYCLE_NERVE = ["Z", "Z"]


def double_cover():
    return twisted_product(circle_min(), Z2, enumerate_twistings(circle_min(), Z2)[1])


@pytest.mark.parametrize("G", [Z2, Z3, S3], ids=lambda G: G.label)
def test_h1_of_circle(G):
    r = h1(circle_min(), G)
    assert r.count == H1_CIRCLE[G.group(0).label]
    assert sorted(r.matching) == list(range(r.count))
    assert sum(len(m) for m in r.members) == len(r.twistings)


def test_h1_of_triangle_boundary():
    assert h1(boundary(2), Z2).count == 2


def test_h1_of_contractible_base_is_trivial():
    assert h1(simplex(2), S3).count == 1


def test_cech_degree_one_and_two():
    X = boundary(2)
    r = hn_cech(cover(X, [[n] for n in X.names[1]]), Z2, 1)
    assert r.count == CECH_H1_TRIANGLE_Z2
    assert r.method == "linear"
    Y = boundary(3)
    assert hn_cech(cover(Y, [[n] for n in Y.names[2]]), Z2, 2).count == CECH_H2_TETRA_Z2


def test_cech_linear_agrees_with_enumeration():
    X = boundary(2)
    f = cover(X, [[n] for n in X.names[1]])
    assert hn_cech(f, Z2, 1, linear=False).count == hn_cech(f, Z2, 1).count


def test_nerve_of_arcs_is_a_circle():
    f = parse(DATA / "arcs.cov", "cover")
    N = nerve_complex(f)
    assert homology(N, 1).strings() == FOUR_CYCLE_NERVE


def test_nerve_of_overlapping_cover_is_refused():
    X = boundary(2)
    a, b, c = X.names[1]
    # two arcs meeting in two vertices
    with pytest.raises(IntersectionNotContractible) as e:
        nerve_complex(cover(X, [[a, b], [c, a]]))
    assert e.value.members == [0, 1]


def test_extr_and_rec():
    b = double_cover()
    c = extr(b)
    assert c.cert is not None and c.lifting.ok
    P = rec(c)
    assert P.base == b.base or P.base.label == b.base.label
    rt = bundle_roundtrip(b)
    assert rt.cert is not None


def test_cocycle_roundtrip_triangles_commute():
    c = extr(double_cover(), 2)
    mor, e, qc = cocycle_roundtrip(c)
    assert mor.checks["left"] and mor.checks["right"]


def test_strictify_recovers_the_bundle():
    for tau in enumerate_twistings(circle_min(), Z2):
        s = strictify(twisted_product(circle_min(), Z2, tau))
        comp = s.to_bundle.after(s.to_free)
        top = s.strict.P.top
        assert comp.injective(top) and comp.surjective(top)
        assert s.section.source == circle_min() or s.section.source.label == "S1"


def test_universal_cocycle_has_both_legs_certified():
    u = universal_cocycle(Z2, 2)
    assert u.cert.level == "INVARIANTS"
    assert u.extra["right_cert"].level == "INVARIANTS"


def test_identity_and_composition():
    c = extr(double_cover(), 2)
    i = identity_cocycle(c.X, Z2, c.bound)
    d = compose(i, c)
    assert d.cert is not None
    with pytest.raises(InvalidArgument):
        compose(c, c)


def test_factor_span_gives_a_morphism():
    X = wbar(Z2, 3)
    new, mor = factor_span(identity(X), identity(X), 1, G=Z2)
    assert new.lifting.ok and new.cert.level == "INVARIANTS"
    assert mor.checks == {"left": True, "right": True, "levels": 1}
    # paths in a non-Kan target do not give an acyclic fibration
    with pytest.raises(CertificateNotFound):
        factor_span(identity(simplex(1)), identity(simplex(1)), 1)


def test_find_section():
    b = twisted_product(circle_min(), Z2, trivial_twisting(circle_min(), Z2))
    s = find_section(b.proj)
    assert b.proj.after(s) == identity(circle_min())
    with pytest.raises(SectionNotFound):
        find_section(double_cover().proj)


def test_span_legs_must_share_source():
    with pytest.raises(InvalidArgument):
        Cocycle.certified(identity(simplex(0)), constant(simplex(1), simplex(0), 0))
