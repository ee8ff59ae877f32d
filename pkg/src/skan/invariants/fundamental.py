"""Path components and edge-path presentations of the fundamental group."""
from __future__ import annotations

from collections import deque

from ..core.constructions import UnionFind, find_vertex
from ..core.sset import SimplicialSet
from .fpgroups import FPGroup


def pi0(X: SimplicialSet) -> list[tuple[int, ...]]:
    """Vertex classes of the coequalizer of ``d0, d1: X_1 -> X_0``, least vertex first."""
    X.require(1)
    uf = UnionFind(X.num_generators(0))
    if X.dim >= 1:
        for a, b in X.faces[1]:
            uf.union(a.gen, b.gen)
    groups: dict[int, list[int]] = {}
    for v in range(X.num_generators(0)):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


def pi0_count(X: SimplicialSet) -> int:
    return len(pi0(X))


def basepoints(X: SimplicialSet) -> list[int]:
    """The least vertex of each component."""
    return [c[0] for c in pi0(X)]


def spanning_tree(X: SimplicialSet, root: int) -> tuple[set[int], list[int]]:
    """Breadth-first spanning tree edges and the vertices of the root's component."""
    adj: dict[int, list[tuple[int, int]]] = {}
    if X.dim >= 1:
        for g, (d0, d1) in enumerate(X.faces[1]):
            adj.setdefault(d1.gen, []).append((g, d0.gen))
            adj.setdefault(d0.gen, []).append((g, d1.gen))
    seen = {root}
    tree: set[int] = set()
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for g, w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                tree.add(g)
                order.append(w)
                queue.append(w)
    return tree, order


def pi1(X: SimplicialSet, x=0) -> FPGroup:
    """Edge-path presentation of ``π1(X, x)`` from the 2-skeleton.

    Generators are the nondegenerate edges of the component outside a
    spanning tree; each nondegenerate triangle contributes
    ``[d2] [d0] [d1]^-1``.
    """
    X.require(2)
    v = find_vertex(X, x)
    tree, verts = spanning_tree(X, v)
    comp = set(verts)
    gens: dict[int, int] = {}
    names = []
    if X.dim >= 1:
        for g, (d0, d1) in enumerate(X.faces[1]):
            if d1.gen in comp and g not in tree:
                gens[g] = len(names) + 1
                names.append(X.names[1][g])

    def letter(c):
        if c.word or c.gen not in gens:
            return ()
        return (gens[c.gen],)

    rels = []
    if X.dim >= 2:
        for g, (e0, e1, e2) in enumerate(X.faces[2]):
            first = X.face(e2, 1)
            if first.gen not in comp:
                continue
            rels.append(letter(e2) + letter(e0) + tuple(-a for a in letter(e1)))
    return FPGroup(names, rels)
