"""Covers by subcomplexes and their Čech nerves."""
from __future__ import annotations

from itertools import product as cartesian

from ..bisimplicial import BiSimplicialSet, total
from ..core.cells import Cell
from ..core.constructions import coproduct, subcomplex, truncate
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import EmptyInput, InsufficientDimensionBound


def cover(X: SimplicialSet, members) -> SimplicialMap:
    """``⊔ U_i -> X`` for subcomplexes given by generator names or cells."""
    members = [list(m) for m in members]
    if not members or any(not m for m in members):
        raise EmptyInput("a cover needs at least one nonempty member")
    parts, maps = [], []
    for t, m in enumerate(members):
        cells = [c if isinstance(c, Cell) else _named(X, c) for c in m]
        S, incl = subcomplex(X, cells, label=f"U{t}")
        parts.append(S)
        maps.append(incl)
    Y, inj = coproduct(parts)
    images = [[None] * Y.num_generators(d) for d in range(Y.dim + 1)]
    for incl, i in zip(maps, inj):
        for d, level in enumerate(i.images):
            for g, v in enumerate(level):
                images[d][v] = incl.images[d][g]
    covered = [set() for _ in range(X.dim + 1)]
    for d, level in enumerate(images):
        covered[d].update(level)
    if any(len(covered[d]) != X.num_generators(d) for d in range(X.dim + 1)):
        raise EmptyInput("the members do not cover every simplex")
    f = SimplicialMap(Y, X, images, label="cover")
    f.members = [{(d, g) for d, level in enumerate(incl.images) for g in level}
                 for incl in maps]
    return f


def _named(X: SimplicialSet, name: str) -> Cell:
    for d in range(X.dim + 1):
        if name in X.names[d]:
            return X.generator(d, name)
    raise KeyError(name)


def cech_nerve(f: SimplicialMap, bound: int | None = None):
    """``Č(Y)_l = Y ×_X ... ×_X Y`` (``l + 1`` factors) and ``σ_* Č(Y) -> X``.

    Bidegree ``(k, l)`` holds ``(l + 1)``-tuples of ``k``-simplices of ``Y``
    over one simplex of ``X``. Returns ``(Č(Y), total_proj)``.
    """
    Y, X = f.source, f.target
    if bound is None:
        if X.bound is not None or Y.bound is not None:
            raise InsufficientDimensionBound("a bounded input needs an explicit bound")
        bound = X.dim + 2
    for Z in (X, Y):
        Z.require(bound)

    def elements(k, l):
        by: dict[int, list[int]] = {}
        for y, x in enumerate(f.level(k)):
            by.setdefault(x, []).append(y)
        return sorted(t for ys in by.values() for t in cartesian(ys, repeat=l + 1))

    B = BiSimplicialSet(
        elements,
        lambda k, l, i, t: tuple(Y.face_table(k)[y][i] for y in t),
        lambda k, l, i, t: t[:i] + t[i + 1:],
        lambda k, l, j, t: tuple(Y.degen_table(k)[y][j] for y in t),
        lambda k, l, j, t: t[:j + 1] + t[j:],
        bound=(None if Y.bound is None else Y.top, None),
        name=lambda k, l, t: "(" + ",".join(Y.token(k, y) for y in t) + ")",
        label=f"C({Y.label})")
    T = total(B, bound)
    lvl = f.level
    target = X
    if X.bound is None:
        target = truncate(X, bound)
    proj = SimplicialMap.from_indices(T, target, lambda n, g: lvl(n)[T.key(n, g)[n][0]],
                                      validate=False)
    return B, proj
