"""The Kan loop group of a reduced simplicial set, by presentations."""
from __future__ import annotations

from ..core.constructions import is_n_reduced
from ..core.sset import SimplicialSet
from ..errors import InvalidGroup, NotReduced
from ..invariants.fpgroups import FPGroup, cyclic_reduce, free_reduce, invert


def substitute(word, images) -> tuple[int, ...]:
    """Image of ``word`` under the homomorphism sending generator ``i`` to ``images[i]``."""
    out: list[int] = []
    for a in word:
        w = images[abs(a) - 1]
        out.extend(w if a > 0 else invert(w))
    return free_reduce(out)


class SimplicialGroupPresentation:
    """Levelwise presented groups with operators as generator substitutions.

    ``faces[n][i][g]`` is the word in level ``n - 1`` that generator ``g`` of
    level ``n`` maps to under ``d_i``; ``degens[n][j][g]`` likewise for ``s_j``
    into level ``n + 1``.
    """

    def __init__(self, levels: list[FPGroup], faces, degens, *, label: str = "",
                 check: bool = True):
        self.levels = levels
        self.faces = faces
        self.degens = degens
        self.label = label
        if check:
            self.validate()

    @property
    def bound(self) -> int:
        return len(self.levels) - 1

    def _apply(self, ops, word):
        return substitute(word, ops)

    def validate(self) -> None:
        """Relators go to the identity and the simplicial identities hold on generators."""
        top = self.bound
        for n, G in enumerate(self.levels):
            for r in G.relators:
                targets = [(n - 1, self.faces[n][i]) for i in range(n + 1)] if n else []
                targets += [(n + 1, self.degens[n][j]) for j in range(n + 1)] if n < top else []
                for m, ops in targets:
                    w = cyclic_reduce(self._apply(ops, r))
                    known = set(self.levels[m].relators)
                    if w and w not in known and invert(w) not in known:
                        raise InvalidGroup(f"an operator on level {n} does not respect a relator")
            for g in range(len(G.generators)):
                x = ((g + 1),)
                for j in range(2, n + 1):
                    for i in range(j):
                        a = self._apply(self.faces[n - 1][i], self._apply(self.faces[n][j], x))
                        b = self._apply(self.faces[n - 1][j - 1], self._apply(self.faces[n][i], x))
                        if a != b:
                            raise InvalidGroup(f"d{i}d{j} = d{j - 1}d{i} fails on level {n}")
                if n < top:
                    for j in range(n + 1):
                        y = self._apply(self.degens[n][j], x)
                        for i in range(n + 2):
                            z = self._apply(self.faces[n + 1][i], y)
                            if i in (j, j + 1):
                                ok = z == x
                            elif i < j:
                                ok = z == self._apply(self.degens[n - 1][j - 1],
                                                      self._apply(self.faces[n][i], x))
                            else:
                                ok = z == self._apply(self.degens[n - 1][j],
                                                      self._apply(self.faces[n][i - 1], x))
                            if not ok:
                                raise InvalidGroup(f"d{i}s{j} identity fails on level {n}")

    def pi0(self) -> FPGroup:
        """``π_0``: level 0 modulo ``d_0 x = d_1 x`` for the level 1 generators."""
        G0 = self.levels[0]
        rels = list(G0.relators)
        if self.bound >= 1:
            for g in range(len(self.levels[1].generators)):
                a, b = self.faces[1][0][g], self.faces[1][1][g]
                rels.append(free_reduce(tuple(a) + invert(b)))
        return FPGroup(list(G0.generators), rels)

    def __repr__(self):
        return f"SimplicialGroupPresentation({self.label!r}, bound={self.bound})"


def kan_loop_group(Y: SimplicialSet, bound: int) -> SimplicialGroupPresentation:
    """The loop group ``GY``: level ``n`` is free on ``Y_{n+1}`` minus the image of ``s_0``.

    Writing ``τy`` for the generator of ``y``: ``d_0 τy = (τ d_0 y)^-1 τ d_1 y``,
    ``d_i τy = τ d_{i+1} y`` for ``i >= 1``, ``s_j τy = τ s_{j+1} y`` and
    ``τ s_0 z = 1``.
    """
    Y.require(bound + 1)
    if not is_n_reduced(Y, 0):
        raise NotReduced(f"{Y.label or 'input'} has more than one vertex")

    def in_s0(m, y):
        return Y.degen_table(m - 1)[Y.face_table(m)[y][0]][0] == y

    gens: list[dict[int, int]] = []
    levels = []
    for n in range(bound + 1):
        table = {}
        names = []
        for y in range(Y.size(n + 1)):
            if not in_s0(n + 1, y):
                table[y] = len(names) + 1
                names.append(Y.token(n + 1, y))
        gens.append(table)
        levels.append(FPGroup(names, []))

    def tau(n, y):
        g = gens[n].get(y)
        return () if g is None else (g,)

    faces: list = [[]]
    degens: list = []
    for n in range(1, bound + 1):
        level_faces = []
        order = sorted(gens[n], key=gens[n].get)
        for i in range(n + 1):
            row = []
            for y in order:
                ft = Y.face_table(n + 1)[y]
                if i == 0:
                    row.append(free_reduce(invert(tau(n - 1, ft[0])) + tau(n - 1, ft[1])))
                else:
                    row.append(tau(n - 1, ft[i + 1]))
            level_faces.append(row)
        faces.append(level_faces)
    for n in range(bound):
        order = sorted(gens[n], key=gens[n].get)
        degens.append([[tau(n + 1, Y.degen_table(n + 1)[y][j + 1]) for y in order]
                       for j in range(n + 1)])
    return SimplicialGroupPresentation(levels, faces, degens, label=f"G({Y.label})")
