"""Bisimplicial sets, their diagonal and total simplicial set, and décalage.

A :class:`BiSimplicialSet` is given levelwise: ``elements(k, l)`` lists
hashable keys in bidegree ``(k, l)`` and four operator callables act on keys.
The first index is horizontal, the second vertical.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, NamedTuple

from .core.build import from_levels
from .core.constructions import product, truncate
from .core.maps import SimplicialMap
from .core.sset import SimplicialSet, compact
from .core.standard import simplex
from .errors import (CertificateNotFound, InsufficientDimensionBound, InvalidArgument,
                     SimplicialIdentityViolation)

Key = Hashable


class BiSimplicialSet:
    """Levelwise bisimplicial set.

    ``hface(k, l, i, x)`` lowers ``k``; ``vface(k, l, i, x)`` lowers ``l``;
    the degeneracies raise them. ``bound`` is ``(p_max, q_max)``, with
    ``None`` for an unbounded direction. ``finite_dim`` may record that the
    diagonal and total have no nondegenerate simplices above it.
    """

    def __init__(self, elements: Callable[[int, int], list], hface, vface, hdegen, vdegen,
                 *, bound=(None, None), name: Callable[[int, int, Key], str] | None = None,
                 label: str = "", finite_dim: int | None = None):
        self._elements = elements
        self.hface, self.vface = hface, vface
        self.hdegen, self.vdegen = hdegen, vdegen
        self.bound = tuple(bound)
        self._name = name
        self.label = label
        self.finite_dim = finite_dim
        self._cache: dict[tuple[int, int], list] = {}
        self._index: dict[tuple[int, int], dict] = {}

    def require(self, k: int, l: int) -> None:
        p, q = self.bound
        if (p is not None and k > p) or (q is not None and l > q):
            raise InsufficientDimensionBound(
                f"bidegree ({k},{l}) is outside the bound {self.bound}")

    def elements(self, k: int, l: int) -> list:
        got = self._cache.get((k, l))
        if got is None:
            self.require(k, l)
            got = list(self._elements(k, l))
            self._cache[(k, l)] = got
            self._index[(k, l)] = {x: i for i, x in enumerate(got)}
        return got

    def index(self, k: int, l: int) -> dict:
        self.elements(k, l)
        return self._index[(k, l)]

    def size(self, k: int, l: int) -> int:
        return len(self.elements(k, l))

    def name(self, k: int, l: int, x: Key) -> str:
        return self._name(k, l, x) if self._name else compact(x)

    def square_bound(self) -> int | None:
        p, q = self.bound
        if p is None:
            return q
        return p if q is None else min(p, q)

    def check_identities(self, upto: int) -> None:
        """Simplicial identities in each direction and commutation, for ``k, l <= upto``."""
        for k in range(upto + 1):
            for l in range(upto + 1):
                for x in self.elements(k, l):
                    _check_direction(self, k, l, x, True)
                    _check_direction(self, k, l, x, False)
                    _check_commute(self, k, l, x)

    def __repr__(self):
        lab = f"{self.label!r}, " if self.label else ""
        return f"BiSimplicialSet({lab}bound={self.bound})"


def _ops(B, horizontal):
    if horizontal:
        return (lambda k, l, i, x: B.hface(k, l, i, x),
                lambda k, l, j, x: B.hdegen(k, l, j, x),
                lambda k, l: k, lambda k, l, d: (k + d, l))
    return (lambda k, l, i, x: B.vface(k, l, i, x),
            lambda k, l, j, x: B.vdegen(k, l, j, x),
            lambda k, l: l, lambda k, l, d: (k, l + d))


def _check_direction(B, k, l, x, horizontal):
    face, degen, deg, shift = _ops(B, horizontal)
    n = deg(k, l)
    side = "horizontal" if horizontal else "vertical"

    def bad(identity):
        raise SimplicialIdentityViolation(
            f"{side} identity {identity} fails at bidegree ({k},{l}) on {x!r}", identity=identity)
    if n >= 2:
        below = shift(k, l, -1)
        for j in range(1, n + 1):
            for i in range(j):
                if face(*below, i, face(k, l, j, x)) != face(*below, j - 1, face(k, l, i, x)):
                    bad(f"d{i}d{j}=d{j - 1}d{i}")
    p, q = B.bound
    limit = p if horizontal else q
    if limit is not None and n + 1 > limit:
        return
    up = shift(k, l, 1)
    for j in range(n + 1):
        y = degen(k, l, j, x)
        for i in range(n + 2):
            z = face(*up, i, y)
            if i in (j, j + 1):
                if z != x:
                    bad(f"d{i}s{j}=id")
            elif i < j:
                if z != degen(*shift(k, l, -1), j - 1, face(k, l, i, x)):
                    bad(f"d{i}s{j}=s{j - 1}d{i}")
            elif z != degen(*shift(k, l, -1), j, face(k, l, i - 1, x)):
                bad(f"d{i}s{j}=s{j}d{i - 1}")
        if n + 2 <= (limit if limit is not None else n + 2):
            for i in range(j + 1):
                if degen(*up, j + 1, degen(k, l, i, x)) != degen(*up, i, degen(k, l, j, x)):
                    bad(f"s{j + 1}s{i}=s{i}s{j}")


def _check_commute(B, k, l, x):
    if k >= 1 and l >= 1:
        for i in range(k + 1):
            for j in range(l + 1):
                a = B.vface(k - 1, l, j, B.hface(k, l, i, x))
                b = B.hface(k, l - 1, i, B.vface(k, l, j, x))
                if a != b:
                    raise SimplicialIdentityViolation(
                        f"horizontal d{i} and vertical d{j} do not commute at ({k},{l})")
    p, q = B.bound
    if k >= 1 and (q is None or l + 1 <= q):
        for i in range(k + 1):
            for j in range(l + 1):
                a = B.vdegen(k - 1, l, j, B.hface(k, l, i, x))
                b = B.hface(k, l + 1, i, B.vdegen(k, l, j, x))
                if a != b:
                    raise SimplicialIdentityViolation(
                        f"horizontal d{i} and vertical s{j} do not commute at ({k},{l})")


# -- constructors ---------------------------------------------------------------------------


def _top_of(X: SimplicialSet):
    return None if X.bound is None else X.top


def const(X: SimplicialSet, direction: str = "horizontal") -> BiSimplicialSet:
    """``X`` spread constantly along the other direction.

    With ``direction="horizontal"`` the bidegree ``(k, l)`` part is ``X_k``
    and the vertical operators are identities.
    """
    if direction not in ("horizontal", "vertical"):
        raise InvalidArgument("direction must be 'horizontal' or 'vertical'")
    h = direction == "horizontal"

    def deg(k, l):
        return k if h else l

    def elements(k, l):
        X.require(deg(k, l))
        return range(X.size(deg(k, l)))

    def move(active, table):
        def op(k, l, i, x):
            if active:
                return getattr(X, table)(deg(k, l))[x][i]
            return x
        return op
    top = _top_of(X)
    return BiSimplicialSet(
        elements, move(h, "face_table"), move(not h, "face_table"),
        move(h, "degen_table"), move(not h, "degen_table"),
        bound=(top, None) if h else (None, top),
        name=lambda k, l, x: X.token(deg(k, l), x),
        label=f"const({X.label})", finite_dim=X.dim if X.bound is None else None)


def total_dec(X: SimplicialSet) -> BiSimplicialSet:
    """Total décalage: bidegree ``(k, l)`` is ``X_{k+l+1}``.

    Horizontal operators act on the first ``k + 1`` vertices, vertical ones
    on the last ``l + 1``.
    """
    def elements(k, l):
        X.require(k + l + 1)
        return range(X.size(k + l + 1))
    top = _top_of(X)
    cap = None if top is None else top - 1
    return BiSimplicialSet(
        elements,
        lambda k, l, i, x: X.face_table(k + l + 1)[x][i],
        lambda k, l, j, x: X.face_table(k + l + 1)[x][k + 1 + j],
        lambda k, l, i, x: X.degen_table(k + l + 1)[x][i],
        lambda k, l, j, x: X.degen_table(k + l + 1)[x][k + 1 + j],
        bound=(cap, cap), name=lambda k, l, x: X.token(k + l + 1, x),
        label=f"Dec({X.label})")


def row(B: BiSimplicialSet, l: int = 0, bound: int | None = None) -> SimplicialSet:
    """The horizontal simplicial set ``B_{•,l}``."""
    top = B.bound[0] if bound is None else bound
    if top is None:
        raise InvalidArgument("an unbounded row needs an explicit bound")
    return from_levels(top, lambda n: B.elements(n, l),
                       lambda n, i, x: B.hface(n, l, i, x),
                       lambda n, j, x: B.hdegen(n, l, j, x),
                       name_at=lambda n, x: B.name(n, l, x), label=f"row{l}({B.label})",
                       validate=False)


def column(B: BiSimplicialSet, k: int = 0, bound: int | None = None) -> SimplicialSet:
    """The vertical simplicial set ``B_{k,•}``."""
    top = B.bound[1] if bound is None else bound
    if top is None:
        raise InvalidArgument("an unbounded column needs an explicit bound")
    return from_levels(top, lambda n: B.elements(k, n),
                       lambda n, i, x: B.vface(k, n, i, x),
                       lambda n, j, x: B.vdegen(k, n, j, x),
                       name_at=lambda n, x: B.name(k, n, x), label=f"col{k}({B.label})",
                       validate=False)


class Dec0Retract(NamedTuple):
    """``section: const X_0 -> Dec0 X``, its retraction, and a homotopy
    ``Dec0 X × Δ[1] -> Dec0 X`` from the identity to ``section ∘ retraction``."""
    section: SimplicialMap
    retraction: SimplicialMap
    homotopy: SimplicialMap


def discrete(X: SimplicialSet) -> SimplicialSet:
    """The constant simplicial set on the vertices of ``X``."""
    return SimplicialSet([X.names[0]], [[()] * X.num_generators(0)], label=f"{X.label}_0")


def dec0(X: SimplicialSet, bound: int | None = None):
    """Plain décalage ``(Dec0 X)_n = X_{n+1}`` with projection ``d_{n+1}``.

    Returns ``(Dec0 X, proj, Dec0Retract)``. The extra last vertex is the
    cone point of each slice, so ``Dec0 X`` is a disjoint union of slices
    over the vertices of ``X``.
    """
    if X.bound is None:
        top = X.dim if bound is None else bound
        complete = bound is None or bound >= X.dim
    else:
        top = X.top - 1 if bound is None else bound
        if top > X.top - 1:
            raise InsufficientDimensionBound(f"Dec0 through {top} needs level {top + 1}")
        complete = False
    if top < 0:
        raise InsufficientDimensionBound("Dec0 needs level 1")
    D = from_levels(top, lambda n: range(X.size(n + 1)),
                    lambda n, i, x: X.face_table(n + 1)[x][i],
                    lambda n, j, x: X.degen_table(n + 1)[x][j],
                    complete=complete, name_at=lambda n, x: X.token(n + 1, x),
                    label=f"Dec0({X.label})", validate=False)
    proj = SimplicialMap.from_indices(
        D, X, lambda d, g: X.face_table(d + 1)[D.key(d, g)][d + 1], validate=False)

    C = discrete(X)
    section = SimplicialMap.from_indices(
        C, D, lambda d, v: D.locate(0, X.degen_table(0)[v][0]), validate=False)
    retraction = SimplicialMap.from_indices(
        D, C, lambda d, g: C.act(0, X.restrict(d + 1, D.key(d, g), [d + 1]), (0,) * (d + 1)),
        validate=False)
    P, _, _ = product(D, simplex(1))
    I = simplex(1)

    def contract(d, key):
        x, a = key
        alpha = I.key(d, a)
        theta = [i if alpha[i] == 0 else d + 1 for i in range(d + 1)] + [d + 1]
        return X.act(d + 1, D.key(d, x), theta)
    H = SimplicialMap.from_keys(P, D, contract, validate=False)
    return D, proj, Dec0Retract(section, retraction, H)


# -- diagonal and total ---------------------------------------------------------------------


def diagonal(B: BiSimplicialSet, bound: int | None = None) -> SimplicialSet:
    """``(dB)_n = B_{n,n}`` with the composite operators."""
    cap = B.square_bound()
    top = cap if bound is None else bound
    if top is None:
        if B.finite_dim is None:
            raise InvalidArgument("an unbounded diagonal needs an explicit bound")
        top = B.finite_dim
    if cap is not None and top > cap:
        raise InsufficientDimensionBound(f"diagonal through {top} exceeds the bound {B.bound}")
    complete = B.finite_dim is not None and top >= B.finite_dim
    return from_levels(
        top, lambda n: B.elements(n, n),
        lambda n, i, x: B.vface(n - 1, n, i, B.hface(n, n, i, x)),
        lambda n, j, x: B.vdegen(n + 1, n, j, B.hdegen(n, n, j, x)),
        complete=complete, name_at=lambda n, x: B.name(n, n, x),
        label=f"diag({B.label})", validate=False)


def _total_level(B: BiSimplicialSet, n: int) -> list[tuple]:
    # chains x_0..x_n with x_i in B_{i,n-i} and d^v_0 x_i = d^h_{i+1} x_{i+1}
    if n == 0:
        return [(x,) for x in B.elements(0, 0)]
    by_v0 = []
    for i in range(n):
        table = defaultdict(list)
        for x in B.elements(i, n - i):
            table[B.vface(i, n - i, 0, x)].append(x)
        by_v0.append(table)
    out = []

    def extend(i, tail):
        if i < 0:
            out.append(tuple(reversed(tail)))
            return
        prev = tail[-1]
        want = B.hface(i + 1, n - i - 1, i + 1, prev)
        for x in by_v0[i].get(want, ()):
            tail.append(x)
            extend(i - 1, tail)
            tail.pop()
    for x in B.elements(n, 0):
        extend(n - 1, [x])
    return out


def total_face(B: BiSimplicialSet, n: int, j: int, x: tuple) -> tuple:
    return tuple(B.hface(i + 1, n - 1 - i, j, x[i + 1]) if j <= i
                 else B.vface(i, n - i, j - i, x[i]) for i in range(n))


def total_degen(B: BiSimplicialSet, n: int, j: int, x: tuple) -> tuple:
    return tuple(B.hdegen(i - 1, n + 1 - i, j, x[i - 1]) if j < i
                 else B.vdegen(i, n - i, j - i, x[i]) for i in range(n + 2))


def total(B: BiSimplicialSet, bound: int) -> SimplicialSet:
    """``σ_* B`` through ``bound``, as an equalizer of finite products.

    An ``n``-simplex is a tuple ``(x_0, ..., x_n)`` with ``x_i`` in
    ``B_{i,n-i}`` whose vertical 0-face matches the next entry's last
    horizontal face.
    """
    cap = B.square_bound()
    if cap is not None and bound > cap:
        raise InsufficientDimensionBound(f"total through {bound} exceeds the bound {B.bound}")
    complete = B.finite_dim is not None and bound >= B.finite_dim

    def name(n, x):
        return "<" + "|".join(B.name(i, n - i, xi) for i, xi in enumerate(x)) + ">"
    return from_levels(bound, lambda n: _total_level(B, n),
                       lambda n, j, x: total_face(B, n, j, x),
                       lambda n, j, x: total_degen(B, n, j, x),
                       complete=complete, name_at=name, label=f"tot({B.label})",
                       validate=False)


def const_iso(X: SimplicialSet, bound: int | None = None) -> SimplicialMap:
    """The isomorphism ``X -> σ_* const X`` (horizontal constant)."""
    B = const(X)
    T = total(B, X.top if bound is None else bound)
    return SimplicialMap.from_indices(
        X, T, lambda n, x: T.locate(n, tuple(X.restrict(n, x, range(i + 1))
                                             for i in range(n + 1))))


def _front_back(B, n, b, i):
    # keep horizontal vertices 0..i and vertical vertices i..n
    k = n
    while k > i:
        b = B.hface(k, n, k, b)
        k -= 1
    l = n
    for _ in range(i):
        b = B.vface(i, l, 0, b)
        l -= 1
    return b


def canonical_maps(obj, bound: int, *, certify: bool = True, budget: int = 5_000) -> dict:
    """Comparison maps with certification attempts.

    For a bisimplicial ``B``: ``d_to_total: diag B -> σ_* B``. For a simplicial
    set ``X``: ``unit: X -> σ_* σ^* X`` where ``σ^* X`` is the total décalage.
    """
    from .invariants.certify import we_certify
    out: dict = {}
    if isinstance(obj, BiSimplicialSet):
        B = obj
        D, T = diagonal(B, bound), total(B, bound)
        f = SimplicialMap.from_keys(
            D, T, lambda n, b: tuple(_front_back(B, n, b, i) for i in range(n + 1)))
        out["d_to_total"] = f
    elif isinstance(obj, SimplicialSet):
        X = obj
        if X.bound is not None and X.top < bound + 1:
            raise InsufficientDimensionBound(f"the unit through {bound} needs level {bound + 1}")
        T = total(total_dec(X), bound)
        src = X if X.bound is None and X.dim <= bound else truncate(X, bound)
        f = SimplicialMap.from_indices(
            src, T, lambda n, x: T.locate(n, tuple(X.degen_table(n)[x][i]
                                                   for i in range(n + 1))))
        out["unit"] = f
    else:
        raise InvalidArgument("canonical_maps takes a bisimplicial or simplicial set")
    if certify:
        name = "d_to_total" if "d_to_total" in out else "unit"
        check = max(0, bound - 1)
        try:
            out["certificate"] = we_certify(out[name], ("invariants", check), budget=budget)
        except CertificateNotFound as e:
            out["certificate"] = None
            out["certificate_failure"] = e.failing
    return out


# -- maps of bisimplicial sets --------------------------------------------------------------


def hom_bisimplicial(A: BiSimplicialSet, B: BiSimplicialSet, upto: int,
                     budget: int | None = None) -> int:
    """Number of bisimplicial maps ``A -> B`` restricted to ``k, l <= upto``.

    Degenerate elements are forced by their nondegenerate roots, so only the
    bidegree-wise nondegenerate elements are free.
    """
    from .errors import BudgetExceeded
    order = []
    for total_deg in range(2 * upto + 1):
        for k in range(max(0, total_deg - upto), min(upto, total_deg) + 1):
            l = total_deg - k
            for x in A.elements(k, l):
                order.append((k, l, x))
    forced = []
    for k, l, x in order:
        src = None
        for j in range(k):
            y = A.hface(k, l, j, x)
            if A.hdegen(k - 1, l, j, y) == x:
                src = ("h", j, y)
                break
        if src is None:
            for j in range(l):
                y = A.vface(k, l, j, x)
                if A.vdegen(k, l - 1, j, y) == x:
                    src = ("v", j, y)
                    break
        forced.append(src)

    f: dict = {}
    count = 0
    nodes = 0

    def faces_ok(k, l, x, b):
        for i in range(k + 1) if k else ():
            if B.hface(k, l, i, b) != f[(k - 1, l, A.hface(k, l, i, x))]:
                return False
        for i in range(l + 1) if l else ():
            if B.vface(k, l, i, b) != f[(k, l - 1, A.vface(k, l, i, x))]:
                return False
        return True

    def rec(t):
        nonlocal count, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"bisimplicial map search exceeded {budget} nodes")
        while t < len(order) and forced[t] is not None:
            k, l, x = order[t]
            kind, j, y = forced[t]
            if kind == "h":
                b = B.hdegen(k - 1, l, j, f[(k - 1, l, y)])
            else:
                b = B.vdegen(k, l - 1, j, f[(k, l - 1, y)])
            if not faces_ok(k, l, x, b):
                return
            f[(k, l, x)] = b
            t += 1
        if t == len(order):
            count += 1
            return
        k, l, x = order[t]
        for b in B.elements(k, l):
            if faces_ok(k, l, x, b):
                f[(k, l, x)] = b
                rec(t + 1)
    rec(0)
    return count
