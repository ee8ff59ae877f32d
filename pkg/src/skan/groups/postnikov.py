"""The G_0 fiber sequence of a simplicial group and Postnikov stages of Kan complexes."""
from __future__ import annotations

from itertools import combinations

from ..core.build import from_levels
from ..core.constructions import quotient_by_relation
from ..core.kan import check_kan
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import ActionNotFree, SourceNotKan
from .simplicial import SimplicialGroup, const_sgroup


def _total_degeneracy(G: SimplicialGroup, n: int, h: int) -> int:
    for m in range(n):
        h = G.degen(m, 0, h)
    return h


def g0_sequence(G: SimplicialGroup, bound: int):
    """``G_0 -> G -> G/G_0`` as maps of underlying simplicial sets.

    ``G_0`` sits in each level through its total degeneracy and acts by
    right multiplication; the quotient has the right cosets as simplices.
    """
    H = G.group(0)
    U = G.underlying(bound)
    sub = []
    for n in range(bound + 1):
        image = [_total_degeneracy(G, n, h) for h in range(len(H))]
        if len(set(image)) != len(H):
            raise ActionNotFree(f"G_0 does not act freely on level {n}")
        sub.append(image)

    def rep(n, a):
        Gn = G.group(n)
        return min(Gn.mul(a, s) for s in sub[n])

    def key_rep(n, k):
        Gn = G.group(n)
        return Gn.key(rep(n, Gn.index(k)))

    Q = from_levels(bound, lambda n: sorted({key_rep(n, k) for k in G.group(n).keys},
                                            key=G.group(n).index),
                    lambda n, i, k: key_rep(n - 1, G.face_key(n, i, k)),
                    lambda n, j, k: key_rep(n + 1, G.degen_key(n, j, k)),
                    name_at=lambda n, k: "[" + G.group(n).names[G.group(n).index(k)] + "]",
                    label=f"{G.label}/G0", validate=False)
    C = const_sgroup(H).underlying()
    incl = SimplicialMap.from_indices(C, U, lambda d, h: U.locate(0, H.key(h)))
    quot = SimplicialMap.from_indices(U, Q, lambda d, g: Q.locate(d, key_rep(d, U.key(d, g))))
    return incl, quot


def postnikov_stage(X: SimplicialSet, n: int, *, check_up_to: int | None = None):
    """``X(n)``: identify simplices with equal restrictions to every ``n``-face.

    Returns the quotient and the projection ``X -> X(n)``. The source must
    pass the Kan check (through ``n + 2`` or the top level by default).
    """
    up = min(X.top, n + 2) if check_up_to is None else check_up_to
    report = check_kan(X, up)
    if not report.ok:
        raise SourceNotKan(f"postnikov stages need a Kan source: {report.counterexample}")

    def label(q, idx):
        if q <= n:
            return idx
        return tuple(X.restrict(q, idx, S) for S in combinations(range(q + 1), n + 1))
    return quotient_by_relation(X, label, label=f"{X.label}({n})")
