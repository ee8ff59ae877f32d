"""Exhaustive enumeration of simplicial maps and the constructions built on it."""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterator

from ..errors import BudgetExceeded, InsufficientDimensionBound
from .build import from_levels
from .cells import Cell
from .constructions import extend_coskeletal, product
from .maps import SimplicialMap, identity
from .sset import SimplicialSet
from .standard import simplex, subdivided_map, subdivided_simplex, last_vertex, yoneda


def _usable_target(K: SimplicialSet, X: SimplicialSet) -> SimplicialSet:
    if X.available(K.dim):
        return X
    if X.coskeletal_above is not None:
        return extend_coskeletal(X, K.dim)
    raise InsufficientDimensionBound(
        f"maps out of a {K.dim}-dimensional object need level {K.dim} of "
        f"{X.label or 'the target'}, which is exact only through {X.bound}")


def _eager_order(K: SimplicialSet) -> list[tuple[int, int]]:
    """Generators in an order where each one follows its faces as closely as possible.

    A simplex is visited right after its last face, so it prunes early.
    """
    waiting: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    missing: dict[tuple[int, int], int] = {}
    for d in range(1, K.dim + 1):
        for g in range(K.num_generators(d)):
            fs = {(c.dim, c.gen) for c in K.faces[d][g]}
            missing[(d, g)] = len(fs)
            for f in fs:
                waiting[f].append((d, g))
    order: list[tuple[int, int]] = []
    placed = set()

    def place(x):
        stack = [x]
        while stack:
            y = stack.pop()
            if y in placed:
                continue
            placed.add(y)
            order.append(y)
            for z in waiting.get(y, ()):
                missing[z] -= 1
                if missing[z] == 0:
                    stack.append(z)

    for d in range(K.dim + 1):
        for g in range(K.num_generators(d)):
            if (d, g) not in placed and missing.get((d, g), 0) == 0:
                place((d, g))
    for d in range(K.dim + 1):
        for g in range(K.num_generators(d)):
            if (d, g) not in placed:
                place((d, g))
    return order


class MapSearch:
    """Depth-first enumeration of maps ``K -> X``.

    Generators of ``K`` are visited by increasing dimension, so the images of
    all faces are known when a generator is reached; candidates are looked up
    by their face tuple. ``fixed`` pins chosen generators to given images.
    """

    def __init__(self, K: SimplicialSet, X: SimplicialSet, fixed: dict | None = None,
                 budget: int | None = None):
        self.K = K
        self.X = _usable_target(K, X)
        self.fixed = dict(fixed or {})
        self.budget = budget
        self.nodes = 0
        self.order = _eager_order(K)
        self._lookup: dict[int, dict[tuple, list[int]]] = {}

    def _by_faces(self, d: int) -> dict[tuple, list[int]]:
        table = self._lookup.get(d)
        if table is None:
            table = defaultdict(list)
            for x, fs in enumerate(self.X.face_table(d)):
                table[fs].append(x)
            self._lookup[d] = table
        return table

    def _value(self, images, c: Cell) -> int:
        v = images[c.dim][c.gen]
        return self.X.apply_word_index(c.dim, v, c.word) if c.word else v

    def _candidates(self, images, d: int, g: int) -> list[int]:
        if d == 0:
            cands = range(self.X.size(0))
        else:
            fs = tuple(self._value(images, c) for c in self.K.faces[d][g])
            cands = self._by_faces(d).get(fs, ())
        pin = self.fixed.get((d, g))
        if pin is not None:
            return [pin] if pin in cands else []
        return list(cands)

    def assignments(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        """Yield image tables ``images[d][g]``."""
        K = self.K
        if self.X.is_empty():
            if K.is_empty():
                yield ()
            return
        images = [[0] * K.num_generators(d) for d in range(K.dim + 1)]
        order = self.order
        N = len(order)
        if N == 0:
            yield ()
            return
        stack = [self._candidates(images, *order[0])]
        pos = [0]
        while stack:
            t = len(stack) - 1
            if pos[t] >= len(stack[t]):
                stack.pop()
                pos.pop()
                if pos:
                    pos[-1] += 1
                continue
            d, g = order[t]
            images[d][g] = stack[t][pos[t]]
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded(f"map search exceeded {self.budget} nodes")
            if t + 1 == N:
                yield tuple(tuple(row) for row in images)
                pos[t] += 1
            else:
                stack.append(self._candidates(images, *order[t + 1]))
                pos.append(0)

    def maps(self) -> Iterator[SimplicialMap]:
        for imgs in self.assignments():
            yield SimplicialMap(self.K, self.X, imgs, validate=False)

    def count(self) -> int:
        return sum(1 for _ in self.assignments())

    def first(self):
        for imgs in self.assignments():
            return SimplicialMap(self.K, self.X, imgs, validate=False)
        return None


def hom_set(K: SimplicialSet, X: SimplicialSet, budget: int | None = None) -> list[SimplicialMap]:
    """All simplicial maps ``K -> X`` in a deterministic order."""
    return list(MapSearch(K, X, budget=budget).maps())


def count_maps(K: SimplicialSet, X: SimplicialSet, budget: int | None = None) -> int:
    return MapSearch(K, X, budget=budget).count()


def evaluate(X: SimplicialSet, images, c: Cell) -> int:
    v = images[c.dim][c.gen]
    return X.apply_word_index(c.dim, v, c.word) if c.word else v


def precompose(images, phi: SimplicialMap, X: SimplicialSet) -> tuple:
    """Image table of ``f ∘ phi`` where ``f`` is given by ``images``."""
    src, mid = phi.source, phi.target
    out = []
    for d in range(src.dim + 1):
        row = []
        for v in phi.images[d]:
            row.append(evaluate(X, images, mid.simplices(d)[v]))
        out.append(tuple(row))
    return tuple(out)


# -- isomorphism search -------------------------------------------------------------------


def find_isomorphism(X: SimplicialSet, Y: SimplicialSet, budget: int = 200_000):
    """An isomorphism ``X -> Y`` or ``None``.

    Generators are matched from the top dimension down; choosing the image of
    a simplex forces the images of its faces, which prunes the search.
    """
    if X.generator_counts() != Y.generator_counts() or X.bound != Y.bound:
        return None
    assign: dict[tuple[int, int], int] = {}
    used: dict[tuple[int, int], tuple[int, int]] = {}
    order = [(d, g) for d in range(X.dim, -1, -1) for g in range(X.num_generators(d))]
    nodes = [0]

    def bind(d, g, h, trail) -> bool:
        cur = assign.get((d, g))
        if cur is not None:
            return cur == h
        if (d, h) in used:
            return False
        assign[(d, g)] = h
        used[(d, h)] = (d, g)
        trail.append((d, g, h))
        if d == 0:
            return True
        for fx, fy in zip(X.faces[d][g], Y.faces[d][h]):
            if fx.word != fy.word or fx.dim != fy.dim:
                return False
            if not bind(fx.dim, fx.gen, fy.gen, trail):
                return False
        return True

    def undo(trail):
        for d, g, h in reversed(trail):
            del assign[(d, g)]
            del used[(d, h)]

    def search(t) -> bool:
        while t < len(order) and order[t] in assign:
            t += 1
        if t == len(order):
            return True
        d, g = order[t]
        for h in range(Y.num_generators(d)):
            if (d, h) in used:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            trail: list = []
            if bind(d, g, h, trail) and search(t + 1):
                return True
            undo(trail)
        return False

    if not search(0):
        return None
    images = [[assign[(d, g)] for g in range(X.num_generators(d))] for d in range(X.dim + 1)]
    return SimplicialMap(X, Y, images)


# -- function complexes and Ex -------------------------------------------------------------


@lru_cache(maxsize=128)
def _cylinder(n: int, K: SimplicialSet):
    return product(simplex(n), K)


def _level_operator(n: int, i: int, kind: str, K: SimplicialSet) -> SimplicialMap:
    """``Δ[n∓1] × K -> Δ[n] × K`` induced by a coface or codegeneracy."""
    if kind == "face":
        src_n, theta = n - 1, [v if v < i else v + 1 for v in range(n)]
    else:
        src_n, theta = n + 1, [v if v <= i else v - 1 for v in range(n + 2)]
    P, _, _ = _cylinder(src_n, K)
    Q, _, _ = _cylinder(n, K)
    Dsrc, Dn = simplex(src_n), simplex(n)

    def image(d, g):
        a, b = P.key(d, g)
        ta = tuple(theta[v] for v in Dsrc.key(d, a))
        return Q.locate(d, (Dn.locate(d, ta), b))
    return SimplicialMap.from_indices(P, Q, image, validate=False)


_op_cache: dict = {}


def _op(n, i, kind, K):
    key = (n, i, kind, id(K))
    if key not in _op_cache:
        _op_cache[key] = (_level_operator(n, i, kind, K), K)
    return _op_cache[key][0]


def _index_names(levels):
    names = {}
    for n, ks in enumerate(levels):
        for t, k in enumerate(ks):
            names[(n, k)] = f"m{n}_{t}"
    return lambda n, k: names[(n, k)]


def function_complex(K: SimplicialSet, X: SimplicialSet, bound: int,
                     budget: int | None = None) -> SimplicialSet:
    """``X^K`` through level ``bound``; level ``n`` is ``hom(Δ[n] × K, X)``."""
    levels = [[imgs for imgs in MapSearch(_cylinder(n, K)[0], X, budget=budget).assignments()]
              for n in range(bound + 1)]
    F = from_levels(
        bound, lambda n: levels[n],
        lambda n, i, k: precompose(k, _op(n, i, "face", K), X),
        lambda n, i, k: precompose(k, _op(n, i, "degen", K), X),
        name_at=_index_names(levels), label=f"{X.label}^{K.label}", validate=False)
    return F


def evaluation(F: SimplicialSet, K: SimplicialSet, X: SimplicialSet, vertex: int) -> SimplicialMap:
    """``X^K -> X`` evaluating at a vertex of ``K``."""
    def image(n, g):
        P, _, _ = _cylinder(n, K)
        D = simplex(n)
        kv = K.apply_word_index(0, vertex, tuple(range(n - 1, -1, -1)))
        cell = P.simplices(n)[P.locate(n, (_top_index(D, n), kv))]
        return evaluate(X, F.key(n, g), cell)
    return SimplicialMap.from_indices(F, X, image, validate=False)


def _top_index(D: SimplicialSet, n: int) -> int:
    return D.locate(n, tuple(range(n + 1)))


def constant_paths(F: SimplicialSet, K: SimplicialSet, X: SimplicialSet) -> SimplicialMap:
    """``X -> X^K`` sending a simplex to the map that ignores ``K``."""
    def image(n, g):
        P, p1, _ = _cylinder(n, K)
        yx = yoneda(X, n, g)
        return F.locate(n, precompose(yx.images, p1, X))
    src = X if X.dim <= F.top and X.bound is None else _upto(X, F.top)
    return SimplicialMap.from_indices(src, F, image, validate=False)


def _upto(X: SimplicialSet, top: int) -> SimplicialSet:
    from .constructions import truncate
    return X if X.bound is not None and X.top == top else truncate(X, top)


def ex(X: SimplicialSet, iterations: int, bound: int, budget: int | None = None):
    """``Ex^k X`` through level ``bound`` with the natural map ``X -> Ex^k X``."""
    cur, unit = X, identity(X)
    for _ in range(iterations):
        nxt, step = _ex_once(cur, bound, budget)
        unit = step.after(unit)
        cur = nxt
    return cur, unit


def _ex_once(X: SimplicialSet, bound: int, budget):
    levels = [list(MapSearch(subdivided_simplex(n), X, budget=budget).assignments())
              for n in range(bound + 1)]
    faces = {}
    degens = {}

    def face(n, i, k):
        op = faces.get((n, i))
        if op is None:
            op = faces[(n, i)] = subdivided_map([v if v < i else v + 1 for v in range(n)], n)
        return precompose(k, op, X)

    def degen(n, j, k):
        op = degens.get((n, j))
        if op is None:
            op = degens[(n, j)] = subdivided_map([v if v <= j else v - 1 for v in range(n + 2)], n)
        return precompose(k, op, X)

    E = from_levels(bound, lambda n: levels[n], face, degen, name_at=_index_names(levels),
                    label=f"Ex({X.label})", validate=False)

    def image(n, g):
        return E.locate(n, precompose(yoneda(X, n, g).images, last_vertex(n), X))
    unit = SimplicialMap.from_indices(X, E, image, validate=False)
    return E, unit
