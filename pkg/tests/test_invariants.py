from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skan.core.constructions import product
from skan.core.kan import to_point
from skan.core.maps import constant, identity
from skan.core.standard import boundary, circle_min, horn, simplex, sphere_min
from skan.errors import CertificateNotFound
from skan.groups.finite import cyclic, symmetric
from skan.groups.simplicial import const_sgroup, linear_structure
from skan.groups.wbar import wbar, wbar_tower
from skan.invariants.certify import we_certify
from skan.invariants.fundamental import pi0, pi1
from skan.invariants.homology import HomologyProfile, homology
from skan.invariants.mapping import _linear_classes, homotopy_classes
from skan.invariants.snf import invariant_factors, rank

# frozen from tests/oracle.py
BOUNDARY2 = ["Z", "Z", "0"]
BOUNDARY3 = ["Z", "0", "Z", "0"]
BAR_Z2 = ["Z", "Z/2", "0", "Z/2"]
BAR_Z3 = ["Z", "Z/3", "0", "Z/3"]
BAR_S3 = ["Z", "Z/2", "0", "Z/6"]


def test_homology_of_spheres():
    assert homology(boundary(2), 2).strings() == BOUNDARY2
    assert homology(boundary(3), 3).strings() == BOUNDARY3
    assert homology(circle_min(), 2).strings() == BOUNDARY2
    assert homology(sphere_min(2), 3).strings() == BOUNDARY3


@pytest.mark.parametrize("H, want", [(cyclic(2), BAR_Z2), (cyclic(3), BAR_Z3),
                                     (symmetric(3), BAR_S3)], ids=["Z2", "Z3", "S3"])
def test_homology_of_classifying_spaces(H, want):
    assert homology(wbar(const_sgroup(H), 4), 3).strings() == want


def test_contractible_pieces_have_point_homology():
    for X in (simplex(2), horn(2, 1), product(simplex(1), simplex(1))[0]):
        assert homology(X, 2).strings() == ["Z", "0", "0"]


def test_profile_parse_round_trip():
    p = HomologyProfile.parse(["Z", "Z^2 + Z/3", "0"])
    assert p.strings() == ["Z", "Z^2 + Z/3", "0"]


def _det(rows):
    m = [[Fraction(v) for v in r] for r in rows]
    n, det = len(m), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_invariant_factors_multiply_to_determinant(rows):
    n = len(rows)
    d = _det(rows)
    f = invariant_factors(rows, n)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    if d != 0:
        prod = 1
        for v in f:
            prod *= v
        assert len(f) == n and prod == abs(d)
    else:
        assert len(f) < n
    assert rank(rows) == len(f)


def test_pi0_and_pi1():
    assert len(pi0(boundary(2))) == 1
    U = product(simplex(0), simplex(0))[0]
    assert len(pi0(U)) == 1
    assert pi1(circle_min()).abelianization_str() == "Z"
    assert pi1(boundary(2)).abelianization_str() == "Z"
    assert pi1(boundary(3)).is_trivial()
    assert pi1(wbar(const_sgroup(symmetric(3)), 3)).order() == 6


def test_certificate_levels():
    X = boundary(2)
    assert we_certify(identity(X), "iso").level == "ISO"
    assert we_certify(constant(simplex(0), simplex(1), 0), "retract").level == "RETRACT"
    with pytest.raises(CertificateNotFound) as e:
        we_certify(to_point(circle_min()), "invariants", 2)
    assert isinstance(e.value.failing, dict)


def test_certificate_revalidates():
    c = we_certify(constant(simplex(0), simplex(2), 2), "retract")
    assert c.revalidate()


@pytest.mark.parametrize("X", [circle_min(), boundary(2)], ids=lambda X: X.label)
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2])
def test_linear_classes_agree_with_enumeration(X, p, n):
    K = wbar_tower(const_sgroup(cyclic(p)), n, X.dim + 1)[-1]
    lin = linear_structure(K, p, X.dim + 1)
    fast = _linear_classes(X, lin.space, lin, representatives=True)
    slow = homotopy_classes(X, K.underlying(X.dim + 1))
    assert fast.count == slow.count
    assert len({slow.class_of(r) for r in fast.representatives}) == fast.count


def test_maps_from_circle_to_wbar_count_conjugacy_classes():
    W = wbar(const_sgroup(symmetric(3)), 2)
    assert homotopy_classes(circle_min(), W).count == 3
