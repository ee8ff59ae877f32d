"""Action groupoids, quotients, homotopy quotients and shear maps."""
from __future__ import annotations

from itertools import product as cartesian

from ..bisimplicial import BiSimplicialSet, total
from ..core.build import from_levels
from ..core.constructions import product, truncate
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import CrossCheckMismatch, InsufficientDimensionBound, InvalidArgument
from .actions import GAction, GBundle


def _extends(a: GAction, bound: int) -> bool:
    # a complete space under a constant group acts at every level
    return bound <= a.bound or (a.P.bound is None and a.G.complete_dim == 0)


def action_groupoid(a: GAction, bound: int | None = None) -> BiSimplicialSet:
    """``P//G``: bidegree ``(k, l)`` holds ``(p, g_1, ..., g_l)`` with ``p`` in ``P_k``.

    Vertically ``d_0`` acts, ``(p g_1, g_2, ...)``, inner faces multiply
    neighbours and the last face drops ``g_l``; horizontally everything moves
    by the simplicial operators of ``P`` and ``G``.
    """
    P, G = a.P, a.G

    def elements(k, l):
        return [(p,) + gs for p in range(P.size(k))
                for gs in cartesian(range(len(G.group(k))), repeat=l)]

    def vface(k, l, i, x):
        p, gs = x[0], x[1:]
        if i == 0:
            return (a.rule(k, p, gs[0]),) + gs[1:]
        if i == l:
            return x[:-1]
        return (p,) + gs[:i - 1] + (G.group(k).mul(gs[i - 1], gs[i]),) + gs[i + 1:]

    def name(k, l, x):
        return "(" + ",".join([P.token(k, x[0])] + [G.group(k).names[g] for g in x[1:]]) + ")"
    return BiSimplicialSet(
        elements,
        lambda k, l, i, x: (P.face_table(k)[x[0]][i],) + tuple(G.face(k, i, g) for g in x[1:]),
        vface,
        lambda k, l, j, x: (P.degen_table(k)[x[0]][j],) + tuple(G.degen(k, j, g) for g in x[1:]),
        lambda k, l, j, x: x[:j + 1] + (G.group(k).e,) + x[j + 1:],
        bound=(a.bound if bound is None else bound, None), name=name, label=f"{P.label}//{G.label}")


def quotient_by_action(a: GAction, *, label: str = ""):
    """``P/G`` levelwise by orbits, with the quotient map; orbits are named by their least simplex.

    The result is complete when ``P`` is complete and the group is constant.
    """
    P = a.P
    reps: dict[int, list[int]] = {}

    def rep(n, p):
        if n not in reps:
            root = list(range(P.size(n)))
            for orbit in a.orbits(n):
                for q in orbit:
                    root[q] = orbit[0]
            reps[n] = root
        return reps[n][p]
    complete = P.bound is None and a.G.complete_dim == 0 and P.dim <= a.bound
    top = P.dim if complete else a.bound
    Q = from_levels(top, lambda n: sorted({rep(n, p) for p in range(P.size(n))}),
                    lambda n, i, r: rep(n - 1, P.face_table(n)[r][i]),
                    lambda n, j, r: rep(n + 1, P.degen_table(n)[r][j]),
                    complete=complete, name_at=lambda n, r: P.token(n, r),
                    label=label or f"{P.label}/{a.G.label}", validate=False)
    S = P if P.dim <= top else truncate(P, top)
    proj = SimplicialMap.from_indices(S, Q, lambda d, g: Q.locate(d, rep(d, g)), validate=False)
    return Q, proj


def diagonal_action(a: GAction, b: GAction) -> GAction:
    """``G`` acting on ``P × V`` diagonally."""
    if a.G is not b.G:
        raise InvalidArgument("diagonal actions need the same group")
    bound = min(a.bound, b.bound)
    X, _, _ = product(a.P, b.P)
    if X.bound is None and _extends(a, X.dim) and _extends(b, X.dim):
        bound = max(bound, X.dim)

    def rule(n, x, g):
        p, v = X.key(n, x)
        return X.locate(n, (a.rule(n, p, g), b.rule(n, v, g)))
    return GAction(X, a.G, rule, bound, label=f"{a.P.label}x{b.P.label}", check=False)


def homotopy_quotient(a: GAction, bound: int | None = None):
    """``P/_h G = σ_*(P//G)`` and an isomorphism onto the Borel construction.

    The Borel side is ``(P × WG)/G`` for the diagonal action. The comparison
    sends ``(p; g_{n-1}, ..., g_0)`` to the orbit of ``(p, (e, g_{n-1}, ..., g_0))``.
    Returns ``(P/_h G, iso)``.
    """
    from ..groups.wbar import w_bundle
    G = a.G
    bound = a.bound if bound is None else bound
    if not _extends(a, bound):
        raise InsufficientDimensionBound(f"the action is exact only through {a.bound}")
    T = total(action_groupoid(a, bound), bound)
    for n in range(bound + 1):
        want = a.P.size(n)
        for i in range(n):
            want *= len(G.group(i))
        if T.size(n) != want:
            raise CrossCheckMismatch(f"homotopy quotient level {n} has {T.size(n)} simplices, "
                                     f"expected {want}")
    WG, _, wb = w_bundle(G, bound)
    W = wb.base
    D = diagonal_action(GAction(a.P, G, a.rule, bound, check=False), wb.action)
    Q, q = quotient_by_action(D, label=f"({a.P.label}xW{G.label})/{G.label}")
    X = D.P

    def image(n, g):
        x = T.key(n, g)
        t = tuple(x[i][1] for i in range(n)) + (G.group(n).e,)
        w = WG.locate(n, W.locate(n + 1, t))
        return q.level(n)[X.locate(n, (x[n][0], w))]
    try:
        iso = SimplicialMap.from_indices(T, Q, image)
    except Exception as e:
        raise CrossCheckMismatch(f"Borel comparison is not simplicial: {e}") from e
    if not iso.is_iso():
        raise CrossCheckMismatch("Borel comparison is not an isomorphism")
    return T, iso


def hq_projection(b: GBundle, T: SimplicialSet) -> SimplicialMap:
    """``P/_h G -> X`` induced by the bundle projection."""
    lvl = b.proj.level
    return SimplicialMap.from_indices(T, b.base, lambda n, g: lvl(n)[T.key(n, g)[n][0]],
                                      validate=False)


def hq_classifying(G, T: SimplicialSet, W: SimplicialSet) -> SimplicialMap:
    """``P/_h G -> */_h G = W̄G``: forget ``p``."""
    return SimplicialMap.from_indices(
        T, W, lambda n, g: W.locate(n, tuple(T.key(n, g)[i][1] for i in range(n))),
        validate=False)


def fiber_power(f: SimplicialMap, k: int, bound: int | None = None):
    """``P ×_X ... ×_X P`` with ``k`` factors and its projections."""
    P = f.source
    if bound is None:
        complete = P.bound is None
        bound = k * P.dim if complete else P.top
    else:
        complete = False

    def level(n):
        by = {}
        for p, x in enumerate(f.level(n)):
            by.setdefault(x, []).append(p)
        out = []
        for group in by.values():
            out.extend(cartesian(group, repeat=k))
        return sorted(out)
    S = from_levels(bound, level,
                    lambda n, i, t: tuple(P.face_table(n)[p][i] for p in t),
                    lambda n, j, t: tuple(P.degen_table(n)[p][j] for p in t),
                    complete=complete,
                    name_at=lambda n, t: "(" + ",".join(P.token(n, p) for p in t) + ")",
                    label=f"{P.label}^{k}", validate=False)
    projections = [SimplicialMap.from_indices(S, P, lambda d, g, i=i: S.key(d, g)[i],
                                              validate=False) for i in range(k)]
    return S, projections


def multi_shear(b: GBundle, n: int = 1, bound: int | None = None) -> SimplicialMap:
    """``P × G^n -> P^{×_X (n+1)}``, ``(p, g_1, ..., g_n) -> (p, p g_1, ..., p g_n)``."""
    a = b.action
    top = a.bound if bound is None else bound
    G = a.G

    def level(m):
        return [(p,) + gs for p in range(a.P.size(m))
                for gs in cartesian(range(len(G.group(m))), repeat=n)]
    S = from_levels(top, level,
                    lambda m, i, t: (a.P.face_table(m)[t[0]][i],)
                    + tuple(G.face(m, i, g) for g in t[1:]),
                    lambda m, j, t: (a.P.degen_table(m)[t[0]][j],)
                    + tuple(G.degen(m, j, g) for g in t[1:]),
                    name_at=lambda m, t: "(" + ",".join(
                        [a.P.token(m, t[0])] + [G.group(m).names[g] for g in t[1:]]) + ")",
                    label=f"{a.P.label}x{G.label}^{n}", validate=False)
    F, _ = fiber_power(b.proj, n + 1, top)
    return SimplicialMap.from_keys(
        S, F, lambda m, t: (t[0],) + tuple(a.rule(m, t[0], g) for g in t[1:]))


def shear(b: GBundle, n: int = 1, bound: int | None = None) -> SimplicialMap:
    """The shear map ``(p, g) -> (p, p g)``; ``n > 1`` gives the multi-shear."""
    return multi_shear(b, n, bound)
