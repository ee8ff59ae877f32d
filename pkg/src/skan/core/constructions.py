"""Limits, colimits, truncations and reductions of simplicial sets."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import (DanglingFace, DegenerateGeneratorListed, EmptyInput, InvalidArgument,
                      RelationNotSimplicial, SimplicialIdentityViolation, VertexNotFound)
from .build import from_levels
from .cells import Cell, normal_word
from .maps import SimplicialMap, constant
from .sset import SimplicialSet
from .standard import simplex

# -- raw data ---------------------------------------------------------------------------


def parse_cell_string(text: str) -> tuple[tuple[int, ...], str]:
    """``"s1 s0 v"`` -> ``((1, 0), "v")``; the word is normalized."""
    parts = text.split()
    if not parts:
        raise InvalidArgument("empty cell string")
    word = []
    for p in parts[:-1]:
        if not (p.startswith("s") and p[1:].isdigit()):
            raise InvalidArgument(f"bad degeneracy {p!r} in {text!r}")
        word.append(int(p[1:]))
    return normal_word(word), parts[-1]


def _looks_degenerate(name: str) -> bool:
    parts = name.split()
    return len(parts) > 1 and all(p.startswith("s") and p[1:].isdigit() for p in parts[:-1])


def normalize(raw: dict) -> SimplicialSet:
    """Canonical simplicial set from loosely structured data.

    ``raw["generators"]`` lists names per dimension and ``raw["faces"]`` maps
    each positive-dimensional name to its face strings. An optional
    ``raw["degenerate"]`` section may restate faces of degenerate simplices;
    those entries are checked against the normal form and dropped.
    """
    gens = [list(level) for level in raw.get("generators", [])]
    faces_raw = raw.get("faces", {})
    for d, level in enumerate(gens):
        for name in level:
            if _looks_degenerate(name):
                raise DegenerateGeneratorListed(
                    f"{name!r} is a degeneracy and cannot be listed as a generator")
    order = [sorted(level) for level in gens]
    index = [{nm: g for g, nm in enumerate(level)} for level in order]

    def cell(text: str, degree: int, where: str) -> Cell:
        word, base = parse_cell_string(text)
        m = degree - len(word)
        if m < 0 or m >= len(index) or base not in index[m]:
            raise DanglingFace(f"{where}: face {text!r} names no {max(m, 0)}-dimensional generator")
        if any(j > degree - 1 - t for t, j in enumerate(word)):
            raise DanglingFace(f"{where}: degeneracy index out of range in {text!r}")
        return Cell(word, m, index[m][base])

    faces = [[() for _ in order[0]]] if order else []
    for d in range(1, len(order)):
        row = []
        for name in order[d]:
            fs = faces_raw.get(name)
            if fs is None or len(fs) != d + 1:
                raise DanglingFace(f"generator {name!r} needs {d + 1} faces")
            row.append(tuple(cell(f, d - 1, name) for f in fs))
        faces.append(row)
    X = SimplicialSet(order, faces, label=raw.get("label", ""))
    for name, fs in raw.get("degenerate", {}).items():
        word, base = parse_cell_string(name)
        d = len(fs) - 1
        c = cell(name, d, name)
        for i, f in enumerate(fs):
            if X.face(c, i) != cell(f, d - 1, name):
                raise SimplicialIdentityViolation(
                    f"listed face d{i} of degenerate {name!r} disagrees with its normal form",
                    generator=base, identity=f"d{i}s")
    return X


def to_raw(X: SimplicialSet) -> dict:
    faces = {}
    for d in range(1, X.dim + 1):
        for g, name in enumerate(X.names[d]):
            faces[name] = [X.cell_str(c) for c in X.faces[d][g]]
    return {"generators": [list(level) for level in X.names], "faces": faces}


# -- products and pullbacks ---------------------------------------------------------------


def product(X: SimplicialSet, Y: SimplicialSet):
    """``X × Y`` with its two projections."""
    if X.is_empty() or Y.is_empty():
        E = SimplicialSet([], [], label="empty")
        return E, SimplicialMap(E, X, []), SimplicialMap(E, Y, [])
    complete = X.bound is None and Y.bound is None
    top = X.dim + Y.dim if complete else min(Z.top for Z in (X, Y) if Z.bound is not None)
    P = from_levels(
        top, lambda n: [(a, b) for a in range(X.size(n)) for b in range(Y.size(n))],
        lambda n, i, k: (X.face_table(n)[k[0]][i], Y.face_table(n)[k[1]][i]),
        lambda n, i, k: (X.degen_table(n)[k[0]][i], Y.degen_table(n)[k[1]][i]),
        complete=complete, name_at=lambda n, k: f"({X.token(n, k[0])},{Y.token(n, k[1])})",
        label=f"{X.label}x{Y.label}", validate=False)
    p1 = SimplicialMap.from_indices(P, X, lambda d, g: P.key(d, g)[0], validate=False)
    p2 = SimplicialMap.from_indices(P, Y, lambda d, g: P.key(d, g)[1], validate=False)
    return P, p1, p2


def fiber_product(f: SimplicialMap, g: SimplicialMap):
    """``A ×_Z B`` for ``f: A -> Z`` and ``g: B -> Z`` with both projections."""
    A, B, Z = f.source, g.source, f.target
    if g.target != Z:
        raise InvalidArgument("maps in a fiber product must share their target")
    if A.is_empty() or B.is_empty():
        E = SimplicialSet([], [], label="empty")
        return E, SimplicialMap(E, A, []), SimplicialMap(E, B, [])
    needed = A.dim + B.dim
    caps = [x.top for x in (A, B, Z) if x.bound is not None]
    complete = A.bound is None and B.bound is None and (not caps or min(caps) >= needed)
    top = needed if complete else min(caps)

    def level(n):
        over = defaultdict(list)
        for b, z in enumerate(g.level(n)):
            over[z].append(b)
        return [(a, b) for a, z in enumerate(f.level(n)) for b in over.get(z, ())]

    P = from_levels(
        top, level,
        lambda n, i, k: (A.face_table(n)[k[0]][i], B.face_table(n)[k[1]][i]),
        lambda n, i, k: (A.degen_table(n)[k[0]][i], B.degen_table(n)[k[1]][i]),
        complete=complete, name_at=lambda n, k: f"({A.token(n, k[0])},{B.token(n, k[1])})",
        label=f"{A.label}x_{Z.label}{B.label}", validate=False)
    p1 = SimplicialMap.from_indices(P, A, lambda d, i: P.key(d, i)[0], validate=False)
    p2 = SimplicialMap.from_indices(P, B, lambda d, i: P.key(d, i)[1], validate=False)
    return P, p1, p2


def fiber(f: SimplicialMap, vertex: int):
    """Fiber of ``f`` over a vertex of its target, with its inclusion."""
    pt = simplex(0)
    P, p1, _ = fiber_product(f, constant(pt, f.target, vertex))
    return P, p1


# -- colimits ------------------------------------------------------------------------------


def coproduct(parts: Sequence[SimplicialSet]):
    """Disjoint union with its inclusions; names are prefixed only on collision."""
    parts = list(parts)
    if not parts:
        return SimplicialSet([], [], label="empty"), []
    dim = max(p.dim for p in parts)
    bounds = [p.bound for p in parts if p.bound is not None]
    clash = any(len(set(n for p in parts if d <= p.dim for n in p.names[d]))
                != sum(p.num_generators(d) for p in parts) for d in range(dim + 1))
    names, faces = [], []
    offsets = []
    for d in range(dim + 1):
        names.append([])
        faces.append([])
    for t, p in enumerate(parts):
        off = [len(names[d]) for d in range(dim + 1)]
        offsets.append(off)
        for d in range(p.dim + 1):
            for g, nm in enumerate(p.names[d]):
                names[d].append(f"{t}:{nm}" if clash else nm)
                faces[d].append(tuple(Cell(c.word, c.dim, c.gen + off[c.dim])
                                      for c in p.faces[d][g]))
    S = SimplicialSet(names, faces, bound=min(bounds) if bounds else None,
                      label="+".join(p.label for p in parts), validate=False)
    incl = [SimplicialMap(p, S, [[offsets[t][d] + g for g in range(p.num_generators(d))]
                                 for d in range(p.dim + 1)], validate=False)
            for t, p in enumerate(parts)]
    return S, incl


def subcomplex(X: SimplicialSet, generators: Iterable[Cell], label: str = ""):
    """Smallest subcomplex containing the given generators, with its inclusion."""
    keep = [set() for _ in range(X.dim + 1)]
    stack = [c for c in generators]
    while stack:
        c = stack.pop()
        if not c.nondegenerate:
            c = Cell((), c.dim, c.gen)
        if c.gen in keep[c.dim]:
            continue
        keep[c.dim].add(c.gen)
        if c.dim:
            stack.extend(Cell((), f.dim, f.gen) for f in X.faces[c.dim][c.gen])
    order = [sorted(k) for k in keep]
    new = [{g: i for i, g in enumerate(o)} for o in order]
    names = [[X.names[d][g] for g in order[d]] for d in range(len(order))]
    faces = [[tuple(Cell(c.word, c.dim, new[c.dim][c.gen]) for c in X.faces[d][g])
              for g in order[d]] for d in range(len(order))]
    S = SimplicialSet(names, faces, bound=X.bound, label=label or f"sub({X.label})",
                      validate=False)
    incl = SimplicialMap(S, X, [list(o) for o in order[:S.dim + 1]], validate=False)
    return S, incl


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def quotient_by_relation(X: SimplicialSet, relation, *, label: str = ""):
    """Quotient of ``X`` with its projection.

    ``relation`` is either a list of pairs of cells to identify (the smallest
    simplicial equivalence relation containing them is used) or a function
    ``label(n, idx)`` assigning class labels, which must already be closed
    under faces and degeneracies.
    """
    top = X.top
    ufs = [UnionFind(X.size(n)) for n in range(top + 1)]
    if callable(relation):
        for n in range(top + 1):
            first = {}
            for i in range(X.size(n)):
                lab = relation(n, i)
                if lab in first:
                    ufs[n].union(first[lab], i)
                else:
                    first[lab] = i
        _check_closed(X, ufs, top)
    else:
        for a, b in relation:
            if a.degree != b.degree:
                raise InvalidArgument("identified cells must have equal degree")
            n = a.degree
            if n > top:
                raise InvalidArgument(f"cell of degree {n} beyond level {top}")
            ufs[n].union(X.index(n)[a], X.index(n)[b])
        _close(X, ufs, top)
    return _quotient_from_uf(X, ufs, top, label or f"{X.label}/~")


def _classes(uf, size):
    groups = defaultdict(list)
    for i in range(size):
        groups[uf.find(i)].append(i)
    return [g for g in groups.values() if len(g) > 1]


def _close(X, ufs, top):
    changed = True
    while changed:
        changed = False
        for n in range(top, -1, -1):
            for members in _classes(ufs[n], X.size(n)):
                if n > 0:
                    ft = X.face_table(n)
                    r = members[0]
                    for m in members[1:]:
                        for i in range(n + 1):
                            changed |= ufs[n - 1].union(ft[r][i], ft[m][i])
                if n < top:
                    dt = X.degen_table(n)
                    r = members[0]
                    for m in members[1:]:
                        for j in range(n + 1):
                            changed |= ufs[n + 1].union(dt[r][j], dt[m][j])


def _check_closed(X, ufs, top):
    for n in range(top + 1):
        for members in _classes(ufs[n], X.size(n)):
            r = members[0]
            for m in members[1:]:
                if n > 0:
                    ft = X.face_table(n)
                    for i in range(n + 1):
                        if ufs[n - 1].find(ft[r][i]) != ufs[n - 1].find(ft[m][i]):
                            raise RelationNotSimplicial(
                                f"d{i} separates {X.simplex_name(n, r)!r} and "
                                f"{X.simplex_name(n, m)!r}")
                if n < top:
                    dt = X.degen_table(n)
                    for j in range(n + 1):
                        if ufs[n + 1].find(dt[r][j]) != ufs[n + 1].find(dt[m][j]):
                            raise RelationNotSimplicial(
                                f"s{j} separates {X.simplex_name(n, r)!r} and "
                                f"{X.simplex_name(n, m)!r}")


def _quotient_from_uf(X, ufs, top, label):
    roots = [[uf.find(i) for i in range(X.size(n))] for n, uf in enumerate(ufs)]
    Q = from_levels(
        top, lambda n: sorted(set(roots[n])),
        lambda n, i, r: roots[n - 1][X.face_table(n)[r][i]],
        lambda n, i, r: roots[n + 1][X.degen_table(n)[r][i]],
        complete=X.bound is None, name_at=lambda n, r: X.token(n, r), label=label,
        validate=False)
    proj = SimplicialMap.from_indices(X, Q, lambda d, g: Q.locate(d, roots[d][g]),
                                      validate=False)
    return Q, proj


def collapse(X: SimplicialSet, A: SimplicialMap, label: str = ""):
    """``X/A`` for a subcomplex inclusion ``A -> X``; an empty ``A`` adds a point."""
    if A.source.is_empty():
        pt = simplex(0)
        S, (i0, i1) = coproduct([X, pt])
        return S, i0
    base = A.images[0][0]
    pairs = []
    for d in range(A.source.dim + 1):
        pt = X.apply_word_index(0, base, tuple(range(d - 1, -1, -1)))
        for v in A.images[d]:
            pairs.append((X.simplices(d)[v], X.simplices(d)[pt]))
    return quotient_by_relation(X, pairs, label=label)


# -- truncations ----------------------------------------------------------------------------


def skeleton(X: SimplicialSet, n: int):
    gens = [Cell((), d, g) for d in range(min(n, X.dim) + 1) for g in range(X.num_generators(d))]
    S, incl = subcomplex(X, gens, label=f"sk{n}({X.label})")
    if X.bound is not None and X.bound >= n:
        S = SimplicialSet(S.names, S.faces, label=S.label, validate=False)
        incl = SimplicialMap(S, X, incl.images, validate=False)
    return S, incl


def _subsets(q, size):
    return list(combinations(range(q + 1), size))


def coskeleton(X: SimplicialSet, n: int, bound: int) -> SimplicialSet:
    """``cosk_n X`` through level ``bound``: level ``q`` is ``hom(sk_n Δ[q], X)``.

    A key at level ``q`` lists the images of the ``min(n, q)``-faces of ``Δ[q]``
    in lexicographic order of their vertex sets.
    """
    X.require(min(n, bound))

    def p_of(q):
        return min(n, q)

    def value(q, key, theta):
        S = sorted(set(theta))
        p = p_of(q)
        subs = _subsets(q, p + 1)
        for t, A in enumerate(subs):
            if set(S) <= set(A):
                return X.act(p, key[t], [A.index(v) for v in theta])
        raise AssertionError("unreachable")

    def level(q):
        if q <= n:
            return [(x,) for x in range(X.size(q))]
        subs = _subsets(q, n + 1)
        faces_n = X.face_table(n) if n > 0 else None
        out = []
        chosen: list[int] = []
        known: dict[tuple, int] = {}

        def rec(t):
            if t == len(subs):
                out.append(tuple(chosen))
                return
            A = subs[t]
            for x in range(X.size(n)):
                ok = True
                added = []
                if n > 0:
                    for i in range(n + 1):
                        C = A[:i] + A[i + 1:]
                        v = faces_n[x][i]
                        w = known.get(C)
                        if w is None:
                            known[C] = v
                            added.append(C)
                        elif w != v:
                            ok = False
                            break
                if ok:
                    chosen.append(x)
                    rec(t + 1)
                    chosen.pop()
                for C in added:
                    del known[C]
        rec(0)
        return out

    def face(q, i, key):
        delta = [v if v < i else v + 1 for v in range(q)]
        p = p_of(q - 1)
        return tuple(value(q, key, [delta[a] for a in A]) for A in _subsets(q - 1, p + 1))

    def degen(q, j, key):
        sigma = [v if v <= j else v - 1 for v in range(q + 2)]
        p = p_of(q + 1)
        return tuple(value(q, key, [sigma[a] for a in A]) for A in _subsets(q + 1, p + 1))

    def name_at(q, key):
        p = p_of(q)
        if len(key) == 1:
            return X.token(p, key[0])
        return "(" + ",".join(X.token(p, x) for x in key) + ")"

    C = from_levels(bound, level, face, degen, name_at=name_at,
                    label=f"cosk{n}({X.label})", coskeletal_above=n, validate=False)
    return C


def coskeleton_unit(X: SimplicialSet, C: SimplicialSet) -> SimplicialMap:
    """The canonical map ``X -> cosk_n X``."""
    n = C.coskeletal_above

    def image(q, g):
        p = min(n, q)
        return C.locate(q, tuple(X.restrict(q, g, A) for A in _subsets(q, p + 1)))
    return SimplicialMap.from_indices(X, C, image, validate=False)


def extend_coskeletal(X: SimplicialSet, bound: int) -> SimplicialSet:
    """Re-present a coskeletal object through a higher level."""
    if X.coskeletal_above is None:
        raise InvalidArgument("object is not marked coskeletal")
    return coskeleton(X, X.coskeletal_above, bound)


def truncation(X: SimplicialSet, n: int, mode: str, bound: int | None = None) -> SimplicialSet:
    if mode == "sk":
        return skeleton(X, n)[0]
    if mode == "cosk":
        return coskeleton(X, n, X.top if bound is None else bound)
    raise InvalidArgument(f"unknown truncation mode {mode!r}")


# -- reductions ---------------------------------------------------------------------------


def reduce_n(X: SimplicialSet, n: int):
    """``X / sk_n X`` with its projection."""
    if X.is_empty():
        raise EmptyInput("cannot reduce the empty simplicial set")
    _, incl = skeleton(X, n)
    return collapse(X, incl, label=f"red{n}({X.label})")


def is_n_reduced(X: SimplicialSet, n: int) -> bool:
    return all(X.size(k) == 1 for k in range(min(n, X.top) + 1))


def find_vertex(X: SimplicialSet, x) -> int:
    if isinstance(x, int):
        if not 0 <= x < X.num_generators(0):
            raise VertexNotFound(f"no vertex with index {x}")
        return x
    if isinstance(x, Cell):
        if x.degree != 0:
            raise VertexNotFound("not a vertex")
        return x.gen
    try:
        return X.generator(0, x).gen
    except KeyError:
        raise VertexNotFound(f"no vertex named {x!r}") from None


def eilenberg_subcomplex(X: SimplicialSet, x, n: int):
    """Simplices whose ``(n-1)``-dimensional faces all degenerate from ``x``.

    Computed as the fiber of ``X -> cosk_{n-1} X`` over the image of ``x``;
    returns the subcomplex and its inclusion.
    """
    v = find_vertex(X, x)
    if n <= 0:
        from .maps import identity
        return X, identity(X)
    C = coskeleton(X, n - 1, X.top)
    unit = coskeleton_unit(X, C)
    P, incl = fiber(unit, unit.images[0][v])
    gens = [Cell((), d, incl.images[d][g]) for d in range(P.dim + 1)
            for g in range(P.num_generators(d))]
    return subcomplex(X, gens, label=f"E{n}({X.label})")


def components(X: SimplicialSet) -> list[list[int]]:
    """Vertex partition by edges; a small helper shared with the invariants."""
    uf = UnionFind(X.num_generators(0))
    for g in range(X.num_generators(1)):
        a, b = X.faces[1][g]
        uf.union(a.gen, b.gen)
    groups = defaultdict(list)
    for v in range(X.num_generators(0)):
        groups[uf.find(v)].append(v)
    return sorted(groups.values())



def cylinder(X: SimplicialSet):
    """``X × Δ[1]`` with the two end inclusions and the projection to ``X``."""
    I = simplex(1)
    P, p1, _ = product(X, I)

    def end(k):
        def image(n, g):
            return P.locate(n, (g, I.locate(n, (k,) * (n + 1))))
        return SimplicialMap.from_indices(X, P, image, validate=False)
    return P, end(0), end(1), p1


def truncate(X: SimplicialSet, bound: int) -> SimplicialSet:
    """The same simplices through ``bound``, as a bounded object."""
    X.require(bound)
    return from_levels(bound, lambda n: range(X.size(n)),
                       lambda n, i, x: X.face_table(n)[x][i],
                       lambda n, j, x: X.degen_table(n)[x][j],
                       name_at=lambda n, x: X.token(n, x), label=X.label, validate=False)
