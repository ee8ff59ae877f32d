"""The classifying construction W̄G and the universal bundle WG → W̄G.

An ``n``-simplex of W̄G is stored as the ascending tuple ``(g_0, ..., g_{n-1})``
of element indices with ``g_i`` in ``G_i``; names list the entries from the
top down, ``[g_{n-1},...,g_0]``.
"""
from __future__ import annotations

from itertools import product as cartesian

from ..bisimplicial import BiSimplicialSet, dec0, total
from ..core.build import from_levels
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import CrossCheckMismatch, InsufficientDimensionBound, InvalidMap, NotAbelian
from .finite import FinGroup
from .simplicial import SimplicialGroup


def wbar_face(G: SimplicialGroup, n: int, j: int, t: tuple) -> tuple:
    if j == n:
        return t[:n - 1]
    out = list(t[:max(j - 1, 0)])
    if j >= 1:
        out.append(G.group(j - 1).mul(t[j - 1], G.face(j, j, t[j])))
    for i in range(j, n - 1):
        out.append(G.face(i + 1, j, t[i + 1]))
    return tuple(out)


def wbar_degen(G: SimplicialGroup, n: int, j: int, t: tuple) -> tuple:
    out = list(t[:j])
    out.append(G.group(j).e)
    for i in range(j + 1, n + 1):
        out.append(G.degen(i - 1, j, t[i - 1]))
    return tuple(out)


def wbar_name(G: SimplicialGroup, t: tuple) -> str:
    return "[" + ",".join(G.group(i).names[t[i]] for i in reversed(range(len(t)))) + "]"


def _check_bound(G: SimplicialGroup, bound: int) -> None:
    if G.bound is not None and bound - 1 > G.bound:
        raise InsufficientDimensionBound(f"W̄ through {bound} needs the group through {bound - 1}")


def wbar_explicit(G: SimplicialGroup, bound: int) -> SimplicialSet:
    """W̄G from the level formula ``G_{n-1} × ... × G_0``."""
    _check_bound(G, bound)
    return from_levels(
        bound, lambda n: cartesian(*[range(len(G.group(i))) for i in range(n)]),
        lambda n, j, t: wbar_face(G, n, j, t),
        lambda n, j, t: wbar_degen(G, n, j, t),
        name_at=lambda n, t: wbar_name(G, t), label=f"Wbar({G.label})", validate=False)


def nerve_bisimplicial(G: SimplicialGroup) -> BiSimplicialSet:
    """Levelwise nerve of the one-object groupoids ``B G_k``.

    Bidegree ``(k, l)`` holds ``l``-tuples in ``G_k``. The horizontal
    direction is the simplicial direction of ``G``; the vertical direction is
    the nerve, whose ``d_0`` drops the first entry.
    """
    def elements(k, l):
        return cartesian(range(len(G.group(k))), repeat=l)

    def vface(k, l, i, x):
        if i == 0:
            return x[1:]
        if i == l:
            return x[:-1]
        return x[:i - 1] + (G.group(k).mul(x[i - 1], x[i]),) + x[i + 1:]

    def name(k, l, x):
        return "(" + ",".join(G.group(k).names[h] for h in x) + ")"
    return BiSimplicialSet(
        elements,
        lambda k, l, i, x: tuple(G.face(k, i, h) for h in x),
        vface,
        lambda k, l, j, x: tuple(G.degen(k, j, h) for h in x),
        lambda k, l, j, x: x[:j] + (G.group(k).e,) + x[j:],
        bound=(G.bound, None), name=name, label=f"NB({G.label})")


def _front(G: SimplicialGroup, m: int, a: int, i: int) -> int:
    # restrict an m-simplex of G to its vertices 0..i
    for k in range(m, i, -1):
        a = G.face(k, k, a)
    return a


def wbar_routes(G: SimplicialGroup, bound: int):
    """Both constructions of W̄G and the comparison map between them."""
    W = wbar_explicit(G, bound)
    T = total(nerve_bisimplicial(G), bound)

    def image(n, t):
        return tuple(tuple(_front(G, i + m, t[i + m], i) for m in range(n - i))
                     for i in range(n + 1))
    iso = SimplicialMap.from_keys(W, T, image, validate=True)
    return W, T, iso


def wbar(G: SimplicialGroup, bound: int, *, cross_check: bool = True) -> SimplicialSet:
    """W̄G through ``bound``; by default checked against σ_* of the levelwise nerve."""
    if not cross_check:
        return wbar_explicit(G, bound)
    try:
        W, T, iso = wbar_routes(G, bound)
    except (InvalidMap, KeyError) as e:
        raise CrossCheckMismatch(f"W̄ routes disagree: {e}") from e
    if W.counts() != T.counts() or not iso.is_iso():
        raise CrossCheckMismatch("the explicit W̄ formula and the total simplicial set differ")
    return W


def wbar_group(A: SimplicialGroup, bound: int | None = None) -> SimplicialGroup:
    """W̄A as a simplicial abelian group with componentwise products."""
    top = None if bound is None else bound
    if top is not None:
        _check_bound(A, top)
        A.require_abelian(max(0, top - 1))

    def level(n):
        groups = [A.group(i) for i in range(n)]
        for g in groups:
            if not g.is_abelian():
                raise NotAbelian(f"{A.label} is not abelian")
        keys = list(cartesian(*[range(len(g)) for g in groups]))

        def op(a, b):
            return tuple(g.mul(x, y) for g, x, y in zip(groups, a, b))
        return FinGroup(keys, op, tuple(g.e for g in groups),
                        names=[wbar_name(A, k) for k in keys], label=f"Wbar({A.label})_{n}",
                        abelian=True, check=False)
    return SimplicialGroup(level, lambda n, j, t: wbar_face(A, n, j, t),
                           lambda n, j, t: wbar_degen(A, n, j, t),
                           bound=None if A.bound is None else A.bound + 1,
                           label=f"Wbar({A.label})")


def wbar_tower(A: SimplicialGroup, k: int, bound: int) -> list[SimplicialGroup]:
    """``[A, W̄A, ..., W̄^k A]`` as simplicial abelian groups."""
    A.require_abelian(bound)
    out = [A]
    for _ in range(k):
        out.append(wbar_group(out[-1], bound))
    return out


def wbar_iter(A: SimplicialGroup, k: int, bound: int) -> SimplicialSet:
    """Underlying simplicial set of ``W̄^k A``."""
    return wbar_tower(A, k, bound)[-1].underlying(bound)


def w_bundle(G: SimplicialGroup, bound: int):
    """``WG = Dec0 W̄G`` with its projection to W̄G and right ``G``-action.

    An ``n``-simplex of WG is ``(g_0, ..., g_n)``; ``G_n`` acts by right
    multiplication on ``g_n``. Returns ``(WG, fib, bundle)``.
    """
    from ..bundles.actions import GAction, GBundle
    W = wbar(G, bound + 1)
    WG, fib, _ = dec0(W, bound)
    for n in range(bound + 1):
        want = 1
        for i in range(n + 1):
            want *= len(G.group(i))
        if WG.size(n) != want:
            raise CrossCheckMismatch(f"WG level {n} has {WG.size(n)} simplices, expected {want}")

    def rule(n, p, g):
        t = W.key(n + 1, WG.key(n, p))
        t = t[:n] + (G.group(n).mul(t[n], g),)
        return WG.locate(n, W.locate(n + 1, t))
    action = GAction(WG, G, rule, bound, label=f"W({G.label})")
    return WG, fib, GBundle(action, W, fib)


def wg_explicit(G: SimplicialGroup, bound: int) -> SimplicialSet:
    """WG from its level formula ``G_n × ... × G_0`` with the décalage operators."""
    return from_levels(
        bound, lambda n: cartesian(*[range(len(G.group(i))) for i in range(n + 1)]),
        lambda n, j, t: wbar_face(G, n + 1, j, t),
        lambda n, j, t: wbar_degen(G, n + 1, j, t),
        name_at=lambda n, t: wbar_name(G, t), label=f"W({G.label})", validate=False)
