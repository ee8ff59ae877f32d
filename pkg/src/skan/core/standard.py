"""Standard simplicial sets: simplices, boundaries, horns, spheres, nerves of posets."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Hashable, Sequence

from ..errors import InvalidArgument
from .build import from_levels
from .cells import Cell
from .maps import SimplicialMap
from .sset import SimplicialSet


def _monotone(m: int, n: int):
    return combinations_with_replacement(range(n + 1), m + 1)


def _drop(key, i):
    return key[:i] + key[i + 1:]


def _dup(key, i):
    return key[:i + 1] + key[i:]


def _vertex_name(n):
    if n < 10:
        return lambda key: "".join(map(str, key))
    return lambda key: "_".join(map(str, key))


def _simplex_like(n: int, keep: Callable[[tuple], bool], label: str) -> SimplicialSet:
    if n < 0:
        return SimplicialSet([], [], label=label)
    return from_levels(n, lambda m: [k for k in _monotone(m, n) if keep(k)],
                       lambda m, i, k: _drop(k, i), lambda m, i, k: _dup(k, i),
                       complete=True, name_of=_vertex_name(n), label=label)


@lru_cache(maxsize=64)
def simplex(n: int) -> SimplicialSet:
    """The standard ``n``-simplex; its keys are monotone vertex sequences."""
    if n < 0:
        raise InvalidArgument("simplex dimension must be nonnegative")
    return _simplex_like(n, lambda k: True, f"D[{n}]")


@lru_cache(maxsize=64)
def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise InvalidArgument("boundary dimension must be nonnegative")
    if n == 0:
        return SimplicialSet([], [], label="dD[0]")
    return _simplex_like(n, lambda k: len(set(k)) < n + 1, f"dD[{n}]")


@lru_cache(maxsize=64)
def horn(n: int, k: int) -> SimplicialSet:
    if n < 1 or not 0 <= k <= n:
        raise InvalidArgument(f"horn needs n >= 1 and 0 <= k <= n, got ({n}, {k})")
    missing = frozenset(range(n + 1)) - {k}
    return _simplex_like(n, lambda key: not set(key) >= missing, f"L{k}[{n}]")


def sphere_min(n: int) -> SimplicialSet:
    """The ``n``-sphere modelled as the boundary of the ``(n+1)``-simplex."""
    if n < 0:
        raise InvalidArgument("sphere dimension must be nonnegative")
    return boundary(n + 1)


@lru_cache(maxsize=1)
def circle_min() -> SimplicialSet:
    """One vertex ``v`` and one edge ``e`` with both faces at ``v``."""
    v = Cell((), 0, 0)
    return SimplicialSet([["v"], ["e"]], [[()], [(v, v)]], label="S1")


def generate_standard(kind: str, n: int = 0, k: int | None = None) -> SimplicialSet:
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        if k is None:
            raise InvalidArgument("horn needs k")
        return horn(n, k)
    if kind == "sphere_min":
        return sphere_min(n)
    if kind == "circle_min":
        return circle_min()
    raise InvalidArgument(f"unknown standard kind {kind!r}")


def simplex_map(theta: Sequence[int], n: int) -> SimplicialMap:
    """``Δ[m] -> Δ[n]`` induced by a monotone ``theta: [m] -> [n]``."""
    theta = tuple(theta)
    if any(a > b for a, b in zip(theta, theta[1:])) or (theta and not 0 <= theta[-1] <= n):
        raise InvalidArgument("theta must be monotone into [n]")
    src, tgt = simplex(len(theta) - 1), simplex(n)
    return SimplicialMap.from_keys(src, tgt, lambda d, key: tuple(theta[a] for a in key),
                                   validate=False)


def yoneda(X: SimplicialSet, n: int, idx: int) -> SimplicialMap:
    """The map ``Δ[n] -> X`` sending the top simplex to ``x``."""
    D = simplex(n)
    return SimplicialMap.from_indices(
        D, X, lambda d, g: X.restrict(n, idx, D.key(d, g)), validate=False)


def poset_nerve(elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool],
                *, name_of=None, label: str = "") -> SimplicialSet:
    """Nerve of a finite poset; simplices are weakly increasing chains."""
    elems = list(elements)
    up = {a: [b for b in elems if leq(a, b)] for a in elems}
    chains: list[list[tuple]] = [[(a,) for a in elems]]
    longest = 0
    while True:
        nxt = [c + (b,) for c in chains[-1] for b in up[c[-1]]]
        strict = any(len(set(c)) == len(c) for c in nxt)
        if not strict:
            break
        chains.append(nxt)
        longest += 1
    kw = {"name_of": name_of} if name_of else {}
    return from_levels(longest, lambda m: chains[m] if m < len(chains) else [],
                       lambda m, i, c: _drop(c, i), lambda m, i, c: _dup(c, i),
                       complete=True, label=label, **kw)


def _subset_name(chain):
    return "<".join("".join(map(str, s)) for s in chain)


@lru_cache(maxsize=16)
def subdivided_simplex(n: int) -> SimplicialSet:
    """``sd Δ[n]``: the nerve of nonempty vertex subsets ordered by inclusion."""
    subsets = [tuple(c) for r in range(1, n + 2) for c in combinations(range(n + 1), r)]
    return poset_nerve(subsets, lambda a, b: set(a) <= set(b),
                       name_of=_subset_name, label=f"sdD[{n}]")


def subdivided_map(theta: Sequence[int], n: int) -> SimplicialMap:
    """``sd Δ[m] -> sd Δ[n]`` induced by a monotone ``theta``."""
    src, tgt = subdivided_simplex(len(theta) - 1), subdivided_simplex(n)
    return SimplicialMap.from_keys(
        src, tgt, lambda d, chain: tuple(tuple(sorted({theta[a] for a in s})) for s in chain),
        validate=False)


def last_vertex(n: int) -> SimplicialMap:
    """``sd Δ[n] -> Δ[n]`` sending a subset to its largest vertex."""
    src = subdivided_simplex(n)
    return SimplicialMap.from_keys(src, simplex(n), lambda d, chain: tuple(s[-1] for s in chain),
                                   validate=False)
