"""Turn levelwise (set, faces, degeneracies) data into normal form.

Every construction in skan describes its result by hashable *keys* per level
together with face and degeneracy functions on keys. :func:`from_levels`
finds the nondegenerate keys, computes Eilenberg-Zilber decompositions, and
attaches the keys to the resulting :class:`SimplicialSet` so maps can be
written as functions of keys.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable

from ..errors import CrossCheckMismatch, InvalidArgument
from .cells import Cell
from .sset import SimplicialSet, compact

Key = Hashable


def from_levels(top: int,
                level: Callable[[int], Iterable[Key]],
                face: Callable[[int, int, Key], Key],
                degen: Callable[[int, int, Key], Key],
                *, complete: bool = False,
                name_of: Callable[[Key], str] = compact,
                name_at: Callable[[int, Key], str] | None = None,
                label: str = "",
                coskeletal_above: int | None = None,
                validate: bool = True) -> SimplicialSet:
    """Build a simplicial set from levels ``0..top``.

    ``face(n, i, x)`` maps level ``n`` to ``n - 1``; ``degen(n, i, x)`` maps
    level ``n`` to ``n + 1`` and is only called for ``n < top``. With
    ``complete=True`` the caller asserts there are no nondegenerate
    simplices above ``top`` and the result carries no bound.
    """
    keys = [list(level(n)) for n in range(top + 1)]
    index = []
    for n, ks in enumerate(keys):
        idx = {k: i for i, k in enumerate(ks)}
        if len(idx) != len(ks):
            raise InvalidArgument(f"duplicate keys in level {n}")
        index.append(idx)

    images: list[dict[Key, int]] = [dict() for _ in keys]  # largest s_i hitting x
    for n in range(1, top + 1):
        img = images[n]
        here = index[n]
        for y in keys[n - 1]:
            for i in range(n):
                x = degen(n - 1, i, y)
                if x not in here:
                    raise CrossCheckMismatch(f"s{i} leaves level {n} for key {y!r}")
                if img.get(x, -1) < i:
                    img[x] = i

    ez: list[dict[Key, tuple]] = []
    nondeg: list[list[Key]] = []
    for n, ks in enumerate(keys):
        table = {}
        nd = []
        img = images[n]
        for x in ks:
            i = img.get(x)
            if i is None:
                table[x] = ((), n, x)
                nd.append(x)
            else:
                y = face(n, i, x)
                word, m, base = ez[n - 1][y]
                table[x] = ((i,) + word, m, base)
        ez.append(table)
        nondeg.append(nd)

    gen_index: list[dict[Key, int]] = []
    names: list[list[str]] = []
    for n, nd in enumerate(nondeg):
        if name_at is not None:
            named = sorted(((name_at(n, x), x) for x in nd), key=lambda t: t[0])
        else:
            named = sorted(((name_of(x), x) for x in nd), key=lambda t: t[0])
        if len({nm for nm, _ in named}) != len(named):
            raise InvalidArgument(f"generator names collide in dimension {n}")
        names.append([nm for nm, _ in named])
        gen_index.append({x: g for g, (_, x) in enumerate(named)})

    def to_cell(n: int, x: Key) -> Cell:
        word, m, base = ez[n][x]
        return Cell(word, m, gen_index[m][base])

    faces = [[() for _ in names[0]]]
    for n in range(1, top + 1):
        by_gen = [None] * len(names[n])
        for x in nondeg[n]:
            by_gen[gen_index[n][x]] = tuple(to_cell(n - 1, face(n, i, x)) for i in range(n + 1))
        faces.append(by_gen)

    result = SimplicialSet(names, faces, bound=None if complete else top,
                           coskeletal_above=coskeletal_above, label=label, validate=validate)
    for n in range(top + 1):
        cells = result.simplices(n)
        if len(cells) != len(keys[n]):
            raise CrossCheckMismatch(
                f"level {n} of {label or 'construction'} has {len(keys[n])} keys "
                f"but its normal form has {len(cells)} simplices")
        where = result.index(n)
        aligned = [None] * len(cells)
        for x in keys[n]:
            aligned[where[to_cell(n, x)]] = x
        result.attach_keys(n, aligned)
    result.attach_key_ops(face, degen)
    return result

