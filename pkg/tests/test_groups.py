import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skan.core.constructions import normalize
from skan.core.homsets import find_isomorphism
from skan.core.kan import check_kan
from skan.core.standard import boundary, circle_min, simplex
from skan.errors import InvalidGroup, NotAbelian, NotReduced, SourceNotKan
from skan.groups.doldkan import FinChainComplex, dold_kan, dold_kan_em
from skan.groups.finite import FinGroup, cyclic, direct_product, named_group, symmetric
from skan.groups.loop import kan_loop_group
from skan.groups.postnikov import postnikov_stage
from skan.groups.simplicial import const_sgroup, linear_structure
from skan.groups.wbar import (w_bundle, wbar, wbar_explicit, wbar_group, wbar_iter,
                              wbar_routes, wg_explicit)
from skan.invariants.homology import homology

# frozen from tests/oracle.py
WBAR_SIZES = {"Z/2": [1, 2, 4, 8, 16], "Z/3": [1, 3, 9, 27, 81], "S3": [1, 6, 36, 216, 1296]}

GROUPS = [cyclic(2), cyclic(3), cyclic(4), symmetric(3), direct_product([cyclic(2), cyclic(2)])]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_group_axioms(H, data):
    a, b, c = (data.draw(st.integers(0, len(H) - 1)) for _ in range(3))
    assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))
    assert H.mul(a, H.e) == a == H.mul(H.e, a)
    assert H.mul(a, H.inv(a)) == H.e


def test_bad_table_is_rejected():
    with pytest.raises(InvalidGroup):
        FinGroup.from_table([[0, 1], [1, 1]])


def test_named_groups():
    assert len(named_group("S3")) == 6
    assert len(named_group("Z/5")) == 5
    assert len(named_group("trivial")) == 1
    assert len(symmetric(3).conjugacy_classes()) == 3
    with pytest.raises(InvalidGroup):
        named_group("Q8")


@pytest.mark.parametrize("H", [cyclic(2), cyclic(3), symmetric(3)], ids=lambda H: H.label)
def test_wbar_level_sizes(H):
    W = wbar(const_sgroup(H), 4)
    assert W.counts(4) == WBAR_SIZES[H.label]
    assert W.num_generators(0) == 1


@pytest.mark.parametrize("H", [cyclic(2), symmetric(3)], ids=lambda H: H.label)
def test_wbar_routes_agree(H):
    W, T, iso = wbar_routes(const_sgroup(H), 3)
    assert iso.is_iso()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([cyclic(2), cyclic(3), symmetric(3)]), st.integers(2, 4), st.data())
def test_wbar_faces_satisfy_identities(H, n, data):
    W = wbar_explicit(const_sgroup(H), 4)
    x = data.draw(st.integers(0, W.size(n) - 1))
    up, down = W.face_table(n), W.face_table(n - 1)
    for j in range(n + 1):
        for i in range(j):
            assert down[up[x][j]][i] == down[up[x][i]][j - 1]


def test_wg_is_contractible_and_free():
    for H in (cyclic(2), symmetric(3)):
        G = const_sgroup(H)
        WG, fib, b = w_bundle(G, 3)
        assert WG.counts(3) == [len(H) ** (n + 1) for n in range(4)]
        assert homology(WG, 2).strings() == ["Z", "0", "0"]
        assert b.action.is_free()
        assert find_isomorphism(WG, wg_explicit(G, 3)) is not None
        assert check_kan(fib, 3).ok


def test_wbar_group_needs_abelian():
    with pytest.raises(NotAbelian):
        wbar_group(const_sgroup(symmetric(3)), 3).group(1)


def test_em_spaces():
    K1 = dold_kan_em(cyclic(2), 1, 3).underlying(3)
    assert find_isomorphism(K1, wbar(const_sgroup(cyclic(2)), 3)) is not None
    K2 = dold_kan_em(cyclic(2), 2, 4).underlying(4)
    W2 = wbar_iter(const_sgroup(cyclic(2)), 2, 4)
    assert find_isomorphism(K2, W2) is not None
    assert homology(W2, 3).strings()[:3] == ["Z", "0", "Z/2"]
    with pytest.raises(NotAbelian):
        dold_kan_em(symmetric(3), 1, 2)


def test_dold_kan_of_two_term_complex():
    # Z/2 --id--> Z/2 is acyclic, so Γ is contractible
    C = FinChainComplex([[2], [2]], {1: [[1]]})
    K = dold_kan(C, 3).underlying(3)
    assert homology(K, 2).strings() == ["Z", "0", "0"]


def test_linear_structure_round_trips():
    K = wbar_iter(const_sgroup(cyclic(3)), 1, 3)
    A = wbar_group(const_sgroup(cyclic(3)), 3)
    lin = linear_structure(A, 3, 3)
    assert lin.space == K or lin.space.counts(3) == K.counts(3)
    for n in range(4):
        for idx in range(lin.space.size(n)):
            assert lin.index(n, lin.vec(n, idx)) == idx


def test_loop_group_of_circle_and_sphere():
    assert kan_loop_group(circle_min(), 2).pi0().abelianization_str() == "Z"
    with pytest.raises(NotReduced):
        kan_loop_group(boundary(2), 2)
    # one vertex and one 2-cell with degenerate boundary
    S2 = normalize({"generators": [["v"], [], ["t"]], "faces": {"t": ["s0 v"] * 3}})
    assert kan_loop_group(S2, 2).pi0().is_trivial()


def test_postnikov_stage_of_wbar():
    W = wbar(const_sgroup(cyclic(2)), 4)
    S, proj = postnikov_stage(W, 1)
    assert proj.surjective(3)
    assert homology(S, 2).strings()[:2] == ["Z", "Z/2"]


def test_postnikov_needs_kan_source():
    with pytest.raises(SourceNotKan):
        postnikov_stage(simplex(1), 0, check_up_to=2)
