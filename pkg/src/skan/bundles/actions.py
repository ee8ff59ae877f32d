"""Right actions of simplicial groups and bundles over a base."""
from __future__ import annotations

from functools import cached_property
from typing import Callable

from ..core.constructions import product
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import InvalidAction
from ..groups.simplicial import SimplicialGroup


class GAction:
    """A right action ``P × G -> P``.

    ``rule(n, p, g)`` takes a simplex index of ``P`` and an element index of
    ``G_n``. The action is exact through ``bound``.
    """

    def __init__(self, P: SimplicialSet, G: SimplicialGroup, rule: Callable[[int, int, int], int],
                 bound: int, *, label: str = "", check: bool = True):
        self.P, self.G, self.rule, self.bound = P, G, rule, bound
        self.label = label or f"{P.label}.{G.label}"
        if check:
            self.validate()

    def validate(self) -> None:
        """Unit, associativity and compatibility with operators, exhaustively."""
        P, G = self.P, self.G
        for n in range(self.bound + 1):
            H = G.group(n)
            for p in range(P.size(n)):
                if self.rule(n, p, H.e) != p:
                    raise InvalidAction(f"unit law fails on {P.simplex_name(n, p)}")
                for g in range(len(H)):
                    pg = self.rule(n, p, g)
                    for h in range(len(H)):
                        if self.rule(n, pg, h) != self.rule(n, p, H.mul(g, h)):
                            raise InvalidAction("associativity fails")
                    if n >= 1:
                        for i in range(n + 1):
                            if P.face_table(n)[pg][i] != self.rule(
                                    n - 1, P.face_table(n)[p][i], G.face(n, i, g)):
                                raise InvalidAction(f"d{i} is not equivariant")
                    if n < self.bound:
                        for j in range(n + 1):
                            if P.degen_table(n)[pg][j] != self.rule(
                                    n + 1, P.degen_table(n)[p][j], G.degen(n, j, g)):
                                raise InvalidAction(f"s{j} is not equivariant")

    @cached_property
    def group_space(self) -> SimplicialSet:
        return self.G.underlying(self.bound)

    @cached_property
    def act(self) -> SimplicialMap:
        """The action as a simplicial map ``P × G -> P``."""
        U = self.group_space
        X, _, _ = product(self.P, U)

        def image(n, g):
            a, b = X.key(n, g)
            return self.rule(n, a, self.G.group(n).index(U.key(n, b)))
        return SimplicialMap.from_indices(X, self.P, image, validate=False)

    def element(self, n: int, idx: int) -> int:
        """Group element index of simplex ``idx`` of the underlying simplicial set."""
        return self.G.group(n).index(self.group_space.key(n, idx))

    def is_free(self) -> bool:
        for n in range(self.bound + 1):
            H = self.G.group(n)
            for p in range(self.P.size(n)):
                if sum(1 for g in range(len(H)) if self.rule(n, p, g) == p) != 1:
                    return False
        return True

    def orbits(self, n: int) -> list[list[int]]:
        seen = set()
        out = []
        H = self.G.group(n)
        for p in range(self.P.size(n)):
            if p in seen:
                continue
            orbit = sorted({self.rule(n, p, g) for g in range(len(H))})
            seen.update(orbit)
            out.append(orbit)
        return out


class GBundle:
    """A ``G``-space ``P`` with an invariant projection to ``base``."""

    def __init__(self, action: GAction, base: SimplicialSet, proj: SimplicialMap,
                 *, check: bool = True, label: str = ""):
        self.action, self.base, self.proj = action, base, proj
        self.label = label or f"{action.P.label}->{base.label}"
        self.verdict = None
        if check:
            self.validate()

    @property
    def P(self) -> SimplicialSet:
        return self.action.P

    @property
    def G(self) -> SimplicialGroup:
        return self.action.G

    @property
    def bound(self) -> int:
        return self.action.bound

    def validate(self) -> None:
        a = self.action
        for n in range(a.bound + 1):
            lvl = self.proj.level(n)
            for p in range(a.P.size(n)):
                for g in range(len(a.G.group(n))):
                    if lvl[a.rule(n, p, g)] != lvl[p]:
                        raise InvalidAction("projection is not invariant under the action")

    def __repr__(self):
        return f"GBundle({self.label!r}, bound={self.bound})"


def translation_action(G: SimplicialGroup, bound: int) -> GAction:
    """``G`` acting on its own underlying simplicial set by right multiplication."""
    U = G.underlying(bound)

    def rule(n, p, g):
        H = G.group(n)
        return U.locate(n, H.key(H.mul(H.index(U.key(n, p)), g)))
    return GAction(U, G, rule, bound, label=f"{G.label}.{G.label}")


def trivial_action(P: SimplicialSet, G: SimplicialGroup, bound: int) -> GAction:
    return GAction(P, G, lambda n, p, g: p, bound, label=f"{P.label}.triv")
