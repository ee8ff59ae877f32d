"""Twisting functions, twisted products and gauge equivalence.

A twisting function sends ``x`` in ``X_n`` (``n >= 1``) to ``τ(x)`` in
``G_{n-1}`` with

    τ(d_i x) = d_i τ(x)                 for i <= n - 2
    τ(d_{n-1} x) = τ(d_n x) · d_{n-1} τ(x)
    τ(s_j x) = s_j τ(x)                 for j < n
    τ(s_n x) = e

The twisted product ``X ×_τ G`` has ``d_n(x, g) = (d_n x, τ(x) · d_n g)``.
"""
from __future__ import annotations

from ..core.build import from_levels
from ..core.cells import Cell
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import CombinatorialBlowup, InsufficientDimensionBound, TwistingIdentityViolation
from ..groups.simplicial import SimplicialGroup
from .actions import GAction, GBundle


class TwistingFunction:
    """Values on the generators of ``X``; degenerate simplices follow the identities.

    ``values[n][g]`` is an element index of ``G_{n-1}`` for generator ``g`` of
    dimension ``n >= 1`` (``values[0]`` is empty).
    """

    def __init__(self, X: SimplicialSet, G: SimplicialGroup, values, *, check: bool = True,
                 upto: int | None = None):
        self.X, self.G = X, G
        self.values = [()] + [tuple(v) for v in list(values)[1:]]
        while len(self.values) <= X.dim:
            self.values.append(())
        self._tables: dict[int, list[int]] = {}
        if check:
            self.validate(upto)

    def _value_cell(self, c) -> int:
        # apply the degeneracy word innermost first
        m = c.dim
        v = self.values[m][c.gen] if m >= 1 else None
        for j in reversed(c.word):
            if j == m:
                v = self.G.group(m).e
            else:
                v = self.G.degen(m - 1, j, v)
            m += 1
        return v

    def table(self, n: int) -> list[int]:
        t = self._tables.get(n)
        if t is None:
            t = [self._value_cell(c) for c in self.X.simplices(n)]
            self._tables[n] = t
        return t

    def __call__(self, n: int, idx: int) -> int:
        return self.table(n)[idx]

    def default_upto(self) -> int:
        return self.X.dim + 1 if self.X.bound is None else self.X.top

    def validate(self, upto: int | None = None) -> None:
        """Check every identity on every simplex through level ``upto``."""
        X, G = self.X, self.G
        upto = self.default_upto() if upto is None else upto
        for n in range(1, self.X.dim + 1):
            if len(self.values[n]) != X.num_generators(n):
                raise TwistingIdentityViolation(f"wrong number of values in dimension {n}")
            H = G.group(n - 1)
            if any(not 0 <= v < len(H) for v in self.values[n]):
                raise TwistingIdentityViolation(f"value out of range in dimension {n}")
        for n in range(0, upto + 1):
            tau = self.table(n) if n >= 1 else None
            below = self.table(n - 1) if n >= 2 else None
            for x in range(X.size(n)):
                if n >= 2:
                    ft = X.face_table(n)[x]
                    for i in range(n - 1):
                        if below[ft[i]] != G.face(n - 1, i, tau[x]):
                            raise TwistingIdentityViolation(
                                f"τ(d{i} x) != d{i} τ(x) at {X.simplex_name(n, x)}")
                    rhs = G.group(n - 2).mul(below[ft[n]], G.face(n - 1, n - 1, tau[x]))
                    if below[ft[n - 1]] != rhs:
                        raise TwistingIdentityViolation(
                            f"last-face identity fails at {X.simplex_name(n, x)}")
                if n + 1 <= upto:
                    above = self.table(n + 1)
                    dt = X.degen_table(n)[x]
                    for j in range(n + 1):
                        want = G.group(n).e if j == n else G.degen(n - 1, j, tau[x])
                        if above[dt[j]] != want:
                            raise TwistingIdentityViolation(
                                f"degeneracy identity s{j} fails at {X.simplex_name(n, x)}")

    def __eq__(self, other):
        return isinstance(other, TwistingFunction) and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values))

    def __repr__(self):
        return f"TwistingFunction({self.values})"


def trivial_twisting(X: SimplicialSet, G: SimplicialGroup) -> TwistingFunction:
    return TwistingFunction(X, G, [()] + [[G.group(n - 1).e] * X.num_generators(n)
                                          for n in range(1, X.dim + 1)])


def _generator_order(X: SimplicialSet, lo: int):
    return [(n, g) for n in range(lo, X.dim + 1) for g in range(X.num_generators(n))]


def _estimate(X: SimplicialSet, G: SimplicialGroup, lo: int, shift: int) -> int:
    est = 1
    for n, _ in _generator_order(X, lo):
        est *= len(G.group(n - shift))
    return est


def enumerate_twistings(X: SimplicialSet, G: SimplicialGroup, *,
                        budget: int = 200_000) -> list[TwistingFunction]:
    """Every twisting function ``X -> G``, in lexicographic order of generator values."""
    if X.bound is not None:
        raise InsufficientDimensionBound("twistings are enumerated on complete simplicial sets")
    order = _generator_order(X, 1)
    values = [[None] * X.num_generators(n) for n in range(X.dim + 1)]
    out: list[TwistingFunction] = []
    nodes = 0

    def partial(n, idx):
        c = X.simplices(n)[idx]
        m = c.dim
        v = values[m][c.gen] if m >= 1 else None
        for j in reversed(c.word):
            v = G.group(m).e if j == m else G.degen(m - 1, j, v)
            m += 1
        return v

    def candidates(n, g):
        H = G.group(n - 1)
        if n == 1:
            return range(len(H))
        x = X.index(n)[_cell(n, g)]
        ft = X.face_table(n)[x]
        low = [partial(n - 1, ft[i]) for i in range(n + 1)]
        return [a for a in range(len(H))
                if all(G.face(n - 1, i, a) == low[i] for i in range(n - 1))
                and G.group(n - 2).mul(low[n], G.face(n - 1, n - 1, a)) == low[n - 1]]

    def search(t):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise CombinatorialBlowup("twisting enumeration exceeded its budget",
                                      estimate=_estimate(X, G, 1, 1))
        if t == len(order):
            out.append(TwistingFunction(X, G, [tuple(v) for v in values], check=False))
            return
        n, g = order[t]
        for a in candidates(n, g):
            values[n][g] = a
            search(t + 1)
        values[n][g] = None
    search(0)
    return out


def twisted_product(X: SimplicialSet, G: SimplicialGroup, tau: TwistingFunction,
                    bound: int | None = None) -> GBundle:
    """``X ×_τ G`` with the right action on the fibre and its projection to ``X``."""
    complete = X.bound is None and G.complete_dim == 0 and bound is None
    if bound is None:
        bound = X.dim if complete else X.top

    def face(n, i, k):
        x, g = k
        fx = X.face_table(n)[x][i]
        if i < n:
            return fx, G.face(n, i, g)
        return fx, G.group(n - 1).mul(tau(n, x), G.face(n, n, g))

    def degen(n, j, k):
        return X.degen_table(n)[k[0]][j], G.degen(n, j, k[1])
    E = from_levels(bound, lambda n: [(x, g) for x in range(X.size(n))
                                      for g in range(len(G.group(n)))],
                    face, degen, complete=complete,
                    name_at=lambda n, k: f"({X.token(n, k[0])},{G.group(n).names[k[1]]})",
                    label=f"{X.label}x_t{G.label}", validate=False)

    def rule(n, p, g):
        x, h = E.key(n, p)
        return E.locate(n, (x, G.group(n).mul(h, g)))
    action = GAction(E, G, rule, bound, label=f"{E.label}.{G.label}", check=False)
    proj = SimplicialMap.from_indices(E, X, lambda d, g: E.key(d, g)[0], validate=False)
    return GBundle(action, X, proj, check=False)


class Gauge:
    """``φ: X_n -> G_n`` carrying one twisting to another.

    ``φ`` commutes with ``d_i`` for ``i < n`` and with every ``s_j``, and
    ``τ'(x) · d_n φ(x) = φ(d_n x) · τ(x)``.
    """

    def __init__(self, source: TwistingFunction, target: TwistingFunction, values):
        self.source, self.target = source, target
        self.values = [tuple(v) for v in values]

    def __call__(self, n: int, idx: int) -> int:
        c = self.source.X.simplices(n)[idx]
        v, m = self.values[c.dim][c.gen], c.dim
        for j in reversed(c.word):
            v = self.source.G.degen(m, j, v)
            m += 1
        return v

    def bundle_map(self, E1: GBundle, E2: GBundle) -> SimplicialMap:
        """The equivariant map ``(x, g) -> (x, φ(x) g)`` of twisted products."""
        G = self.source.G
        P1, P2 = E1.P, E2.P
        return SimplicialMap.from_indices(
            P1, P2, lambda d, i: P2.locate(d, _gauge_key(G, self, d, P1.key(d, i))))


def _gauge_key(G, phi, d, k):
    x, g = k
    return x, G.group(d).mul(phi(d, x), g)


def find_gauge(t1: TwistingFunction, t2: TwistingFunction, *, budget: int = 200_000):
    """A gauge transformation from ``t1`` to ``t2`` or ``None``, by exhaustive search."""
    X, G = t1.X, t1.G
    order = _generator_order(X, 0)
    values = [[None] * X.num_generators(n) for n in range(X.dim + 1)]
    nodes = 0

    def partial(n, idx):
        c = X.simplices(n)[idx]
        v, m = values[c.dim][c.gen], c.dim
        for j in reversed(c.word):
            v = G.degen(m, j, v)
            m += 1
        return v

    def candidates(n, g):
        H = G.group(n)
        if n == 0:
            return range(len(H))
        x = X.index(n)[_cell(n, g)]
        ft = X.face_table(n)[x]
        low = [partial(n - 1, ft[i]) for i in range(n + 1)]
        L = G.group(n - 1)
        rhs = L.mul(low[n], t1(n, x))
        a2 = t2(n, x)
        return [a for a in range(len(H))
                if all(G.face(n, i, a) == low[i] for i in range(n))
                and L.mul(a2, G.face(n, n, a)) == rhs]

    def search(t):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise CombinatorialBlowup("gauge search exceeded its budget",
                                      estimate=_estimate(X, G, 0, 0))
        if t == len(order):
            return True
        n, g = order[t]
        for a in candidates(n, g):
            values[n][g] = a
            if search(t + 1):
                return True
        values[n][g] = None
        return False
    if search(0):
        return Gauge(t1, t2, values)
    return None


def _cell(n, g):
    return Cell((), n, g)


def twisting_classes(taus: list[TwistingFunction], *, budget: int = 200_000) -> list[list[int]]:
    """Partition twistings into isomorphism classes of their twisted products."""
    classes: list[list[int]] = []
    for i, t in enumerate(taus):
        for cls in classes:
            if find_gauge(t, taus[cls[0]], budget=budget) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def classifying_map(tau: TwistingFunction, W: SimplicialSet) -> SimplicialMap:
    """``X -> W̄G``, ``x -> (τ(x|[0,1]), τ(x|[0,2]), ..., τ(x))``."""
    X = tau.X

    def image(n, g):
        return W.locate(n, tuple(tau(i + 1, X.restrict(n, g, range(i + 2))) for i in range(n)))
    return SimplicialMap.from_indices(X, W, image)


def twisting_of_map(f: SimplicialMap, G: SimplicialGroup) -> TwistingFunction:
    """Inverse of :func:`classifying_map`: ``τ(x)`` is the last entry of ``f(x)``."""
    X, W = f.source, f.target
    values = [()]
    for n in range(1, X.dim + 1):
        lvl = f.level(n)
        values.append([W.key(n, lvl[X.index(n)[_cell(n, g)]])[n - 1]
                       for g in range(X.num_generators(n))])
    return TwistingFunction(X, G, values)
