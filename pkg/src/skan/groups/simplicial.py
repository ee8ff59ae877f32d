"""Simplicial groups with finite levels."""
from __future__ import annotations

from typing import Callable

from ..core.build import from_levels
from ..core.sset import SimplicialSet
from ..errors import InsufficientDimensionBound, InvalidGroup, NotAbelian
from .finite import FinGroup

PAIR_CHECK_LIMIT = 40_000  # homomorphism checks on all pairs below this many pairs


class SimplicialGroup:
    """Levels ``G_n`` with face and degeneracy homomorphisms acting on element keys.

    ``bound`` caps the available levels (``None`` means any level can be
    built on demand). ``complete_dim`` records that the underlying simplicial
    set has no nondegenerate simplices above it.
    """

    def __init__(self, level: Callable[[int], FinGroup], face, degen, *, bound: int | None = None,
                 complete_dim: int | None = None, label: str = ""):
        self._level = level
        self.face_key = face
        self.degen_key = degen
        self.bound = bound
        self.complete_dim = complete_dim
        self.label = label
        self._groups: dict[int, FinGroup] = {}
        self._tables: dict[tuple, list[int]] = {}
        self._underlying: dict[int, SimplicialSet] = {}

    def group(self, n: int) -> FinGroup:
        G = self._groups.get(n)
        if G is None:
            if self.bound is not None and n > self.bound:
                raise InsufficientDimensionBound(
                    f"level {n} of {self.label or 'the simplicial group'} exceeds bound {self.bound}")
            G = self._level(n)
            self._groups[n] = G
        return G

    def face(self, n: int, i: int, a: int) -> int:
        """Index form of ``d_i: G_n -> G_{n-1}``."""
        return self.face_table(n, i)[a]

    def degen(self, n: int, j: int, a: int) -> int:
        return self.degen_table(n, j)[a]

    def face_table(self, n: int, i: int) -> list[int]:
        t = self._tables.get(("d", n, i))
        if t is None:
            G, H = self.group(n), self.group(n - 1)
            t = [H.index(self.face_key(n, i, k)) for k in G.keys]
            self._tables[("d", n, i)] = t
        return t

    def degen_table(self, n: int, j: int) -> list[int]:
        t = self._tables.get(("s", n, j))
        if t is None:
            G, H = self.group(n), self.group(n + 1)
            t = [H.index(self.degen_key(n, j, k)) for k in G.keys]
            self._tables[("s", n, j)] = t
        return t

    def is_abelian(self, upto: int) -> bool:
        return all(self.group(n).is_abelian() for n in range(upto + 1))

    def require_abelian(self, upto: int) -> None:
        if not self.is_abelian(upto):
            raise NotAbelian(f"{self.label or 'simplicial group'} is not abelian")

    def validate(self, upto: int) -> None:
        """Operators are homomorphisms and satisfy the simplicial identities."""
        for n in range(upto + 1):
            G = self.group(n)
            size = len(G)
            pairs = [(a, b) for a in range(size) for b in range(size)] \
                if size * size <= PAIR_CHECK_LIMIT else \
                [(a, b) for a in range(0, size, max(1, size // 64))
                 for b in range(0, size, max(1, size // 64))]
            ops = []
            if n >= 1:
                ops += [(self.group(n - 1), self.face_table(n, i)) for i in range(n + 1)]
            if n < upto:
                ops += [(self.group(n + 1), self.degen_table(n, j)) for j in range(n + 1)]
            for H, t in ops:
                if t[G.e] != H.e:
                    raise InvalidGroup(f"an operator on level {n} does not preserve the identity")
                for a, b in pairs:
                    if t[G.mul(a, b)] != H.mul(t[a], t[b]):
                        raise InvalidGroup(f"an operator on level {n} is not a homomorphism")
        self.underlying(upto).validate()

    def underlying(self, bound: int | None = None) -> SimplicialSet:
        """The underlying simplicial set, exact through ``bound``."""
        if bound is None:
            if self.complete_dim is not None:
                bound = self.complete_dim
            elif self.bound is not None:
                bound = self.bound
            else:
                raise InsufficientDimensionBound("an unbounded simplicial group needs a bound")
        got = self._underlying.get(bound)
        if got is None:
            complete = self.complete_dim is not None and bound >= self.complete_dim
            got = from_levels(
                bound, lambda n: self.group(n).keys,
                lambda n, i, k: self.face_key(n, i, k),
                lambda n, j, k: self.degen_key(n, j, k),
                complete=complete, name_at=lambda n, k: self.group(n).names[self.group(n).index(k)],
                label=self.label, validate=False)
            self._underlying[bound] = got
        return got

    def __repr__(self):
        return f"SimplicialGroup({self.label or '?'}, bound={self.bound})"


def const_sgroup(H: FinGroup, bound: int | None = None) -> SimplicialGroup:
    """The constant simplicial group on ``H``; all operators are identities."""
    return SimplicialGroup(lambda n: H, lambda n, i, k: k, lambda n, j, k: k,
                           bound=bound, complete_dim=0, label=f"const({H.label})")


class LinearStructure:
    """Coordinates exhibiting an elementary abelian simplicial group as a
    simplicial vector space over ``F_p``.

    ``vec(n, idx)`` and ``index(n, vec)`` translate between simplex indices of
    ``space`` (the underlying simplicial set) and coordinate vectors.
    """

    def __init__(self, A: SimplicialGroup, space: SimplicialSet, p: int):
        self.A, self.space, self.p = A, space, p
        self._coords: dict[int, tuple[dict, dict]] = {}

    def _level(self, n):
        got = self._coords.get(n)
        if got is None:
            got = _coordinates(self.A.group(n), self.p)
            self._coords[n] = got
        return got

    def dim(self, n: int) -> int:
        to_vec, _ = self._level(n)
        return len(next(iter(to_vec.values())))

    def vec(self, n: int, idx: int) -> list[int]:
        to_vec, _ = self._level(n)
        G = self.A.group(n)
        return list(to_vec[G.index(self.space.key(n, idx))])

    def index(self, n: int, vec) -> int:
        _, from_vec = self._level(n)
        G = self.A.group(n)
        return self.space.locate(n, G.key(from_vec[tuple(v % self.p for v in vec)]))


def _coordinates(G: FinGroup, p: int):
    """Greedy ``F_p`` basis of an elementary abelian ``p``-group with both coordinate maps."""
    span = {G.e: ()}
    basis = []
    for a in range(len(G)):
        if a in span:
            continue
        if G.power(a, p) != G.e:
            raise NotAbelian(f"{G.label} is not elementary abelian of exponent {p}")
        basis.append(a)
        new = {}
        for x, coords in span.items():
            y = x
            for c in range(p):
                new[y] = coords + (c,)
                y = G.mul(y, a)
        span = new
    d = len(basis)
    to_vec = {x: tuple(list(c) + [0] * (d - len(c))) for x, c in span.items()}
    if len(to_vec) != len(G):
        raise NotAbelian(f"{G.label} is not elementary abelian")
    return to_vec, {v: x for x, v in to_vec.items()}


def linear_structure(A: SimplicialGroup, p: int, bound: int | None = None) -> LinearStructure:
    """Adapter for the linear fast path of :func:`skan.invariants.mapping.homotopy_classes`."""
    A.require_abelian(0 if bound is None else bound)
    return LinearStructure(A, A.underlying(bound), p)
