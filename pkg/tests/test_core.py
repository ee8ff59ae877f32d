import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skan.core.cells import Cell, normal_word
from skan.core.constructions import (coproduct, cylinder, normalize, product, skeleton,
                                     subcomplex, to_raw, truncate)
from skan.core.homsets import count_maps, find_isomorphism
from skan.core.kan import check_kan, check_trivial_fibration, is_kan, to_point
from skan.core.maps import SimplicialMap, identity
from skan.core.standard import boundary, circle_min, horn, simplex, sphere_min
from skan.errors import DanglingFace, DegenerateGeneratorListed, InsufficientDimensionBound

# level sizes frozen from tests/oracle.py (monotone sequences)
SIMPLEX_LEVELS = {0: [1, 1, 1, 1], 1: [2, 3, 4, 5], 2: [3, 6, 10, 15]}
INTERVAL_SQUARED = [4, 9, 16, 25]

SMALL = [simplex(0), simplex(1), simplex(2), boundary(2), boundary(3), circle_min(),
         horn(2, 1), sphere_min(2)]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_simplex_level_sizes(k):
    assert simplex(k).counts(3) == SIMPLEX_LEVELS[k]


def test_product_of_intervals():
    P, p1, p2 = product(simplex(1), simplex(1))
    assert P.counts(3) == INTERVAL_SQUARED
    assert P.generator_counts() == [4, 5, 2]
    assert p1.target == simplex(1) and p2.target == simplex(1)


def test_normalize_sorts_and_round_trips():
    raw = {"generators": [["b", "a"], ["e"]], "faces": {"e": ["b", "a"]}}
    X = normalize(raw)
    assert X.names[0] == ("a", "b")
    assert normalize(to_raw(X)) == X


def test_normalize_rejects_dangling_face():
    with pytest.raises(DanglingFace):
        normalize({"generators": [["a"], ["e"]], "faces": {"e": ["a", "z"]}})


def test_normalize_rejects_degenerate_generator():
    with pytest.raises(DegenerateGeneratorListed):
        normalize({"generators": [["a"], ["s0 a"]], "faces": {"s0 a": ["a", "a"]}})


def test_normal_word_is_decreasing():
    assert normal_word([0, 0]) == (1, 0)
    assert normal_word([1, 0]) == (1, 0)


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.label)
def test_simplicial_identities_on_tables(X):
    # d_i d_j = d_{j-1} d_i for i < j, and d_i s_j as usual
    for n in range(2, 4):
        up, down = X.face_table(n), X.face_table(n - 1)
        for x in range(X.size(n)):
            for j in range(n + 1):
                for i in range(j):
                    assert down[up[x][j]][i] == down[up[x][i]][j - 1]
    for n in range(0, 3):
        dg, fc = X.degen_table(n), X.face_table(n + 1)
        for x in range(X.size(n)):
            for j in range(n + 1):
                y = dg[x][j]
                assert fc[y][j] == x and fc[y][j + 1] == x


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 3), st.data())
def test_eilenberg_zilber_decomposition_is_unique(X, n, data):
    cells = X.simplices(n)
    assert len(set(cells)) == len(cells)
    c = data.draw(st.sampled_from(cells))
    assert c.degree == n
    assert list(c.word) == sorted(c.word, reverse=True)
    assert len(set(c.word)) == len(c.word)


def test_horn_fails_kan_on_interval():
    rep = check_kan(simplex(1), 2)
    assert not rep.ok
    assert rep.counterexample["dimension"] == 2


def test_point_is_kan_and_acyclic():
    assert is_kan(simplex(0), 3)
    assert check_trivial_fibration(to_point(simplex(0)), 2).ok


def test_standard_simplex_is_not_kan():
    assert not is_kan(simplex(2), 3)


def test_circle_min_not_kan():
    assert not is_kan(circle_min(), 2)


def test_boundary_is_not_acyclic():
    assert not check_trivial_fibration(to_point(boundary(2)), 2).ok


def test_map_counts_and_isomorphisms():
    # maps Δ[1] -> Δ[1] are monotone maps [1] -> [1]
    assert count_maps(simplex(1), simplex(1)) == 3
    assert count_maps(simplex(0), boundary(2)) == 3
    assert find_isomorphism(boundary(2), boundary(2)) is not None
    assert find_isomorphism(boundary(2), circle_min()) is None


def test_identity_and_composition():
    X = boundary(3)
    i = identity(X)
    assert i.after(i) == i
    assert i.is_iso() and i.inverse() == i


def test_cylinder_ends():
    X = circle_min()
    P, i0, i1, proj = cylinder(X)
    assert proj.after(i0) == identity(X)
    assert proj.after(i1) == identity(X)


def test_coproduct_and_subcomplex():
    U, inj = coproduct([simplex(0), simplex(1)])
    assert U.generator_counts() == [3, 1]
    X = boundary(2)
    S, incl = subcomplex(X, [X.generator(1, "01")])
    assert S.generator_counts() == [2, 1]
    assert incl.injective(2)


def test_skeleton_and_truncate():
    X = simplex(2)
    sk, _ = skeleton(X, 1)
    assert find_isomorphism(sk, boundary(2)) is not None
    T = truncate(X, 1)
    with pytest.raises(InsufficientDimensionBound):
        T.simplices(2)


def test_map_from_cells_sends_degeneracies_to_degeneracies():
    X, S = simplex(1), circle_min()
    f = SimplicialMap(X, S, [[Cell((), 0, 0), Cell((), 0, 0)], [Cell((), 1, 0)]])
    for y, c in enumerate(X.simplices(2)):
        img = S.simplices(2)[f.level(2)[y]]
        assert img.word and not (c.dim == 1 and img.dim != 1)
