"""Cocycles as spans, extraction and reconstruction of bundles, and strictification."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..bundles.actions import GAction, GBundle
from ..bundles.principality import _working_bound
from ..bundles.quotients import (diagonal_action, homotopy_quotient, hq_classifying,
                                 hq_projection, quotient_by_action)
from ..core.cells import Cell
from ..core.constructions import fiber_product, truncate
from ..core.homsets import MapSearch, constant_paths, evaluation, function_complex
from ..core.kan import check_trivial_fibration
from ..core.maps import SimplicialMap, identity
from ..core.sset import SimplicialSet
from ..core.standard import simplex
from ..errors import (BudgetExceeded, CertificateNotFound, CrossCheckMismatch,
                      InvalidArgument, SectionNotFound)
from ..groups.simplicial import SimplicialGroup
from ..groups.wbar import w_bundle
from ..invariants.certify import WeCert, we_certify


def _leg_bound(f: SimplicialMap) -> int:
    tops = [Z.top for Z in (f.source, f.target)]
    return max(1, min(tops))


@dataclass
class Cocycle:
    """A span ``X <- Y -> W̄G`` whose left leg is a certified acyclic fibration.

    ``lifting`` is the boundary-lifting report of the left leg through
    ``bound``; ``cert`` an optional weak-equivalence certificate for it.
    """
    left: SimplicialMap
    right: SimplicialMap
    G: SimplicialGroup | None = None
    bound: int = 1
    lifting: object = None
    cert: WeCert | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def X(self) -> SimplicialSet:
        return self.left.target

    @property
    def Y(self) -> SimplicialSet:
        return self.left.source

    @classmethod
    def certified(cls, left, right, G=None, bound=None, *, policy="invariants", label=""):
        """Build after checking boundary lifting for the left leg and certifying it."""
        if left.source != right.source:
            raise InvalidArgument("the legs of a span must share their source")
        bound = _leg_bound(left) if bound is None else bound
        rep = check_trivial_fibration(left, bound)
        if not rep.ok:
            raise CertificateNotFound(f"left leg fails boundary lifting: {rep.counterexample}",
                                      failing="lifting")
        cert = we_certify(left, policy, max(bound - 1, 0))
        return cls(left, right, G, bound, rep, cert, label)

    def revalidate(self) -> bool:
        rep = check_trivial_fibration(self.left, self.bound)
        return rep.ok and (self.cert is None or self.cert.revalidate())

    def summary(self) -> dict:
        return {"label": self.label, "bound": self.bound,
                "Y": self.Y.counts(self.bound) if self.Y.available(self.bound) else None,
                "left": {"lifting": self.lifting.summary() if self.lifting else None,
                         "certificate": self.cert.summary() if self.cert else None}}


@dataclass
class CocycleMorphism:
    """``map: Y1 -> Y2`` with both triangles commuting exactly."""
    source: Cocycle
    target: Cocycle
    map: SimplicialMap
    checks: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        m, s, t = self.map, self.source, self.target
        top = min(s.Y.top, t.Y.top)
        for n in range(top + 1):
            lm = m.level(n)
            for leg in ("left", "right"):
                a, b = getattr(s, leg).level(n), getattr(t, leg).level(n)
                if any(a[y] != b[lm[y]] for y in range(s.Y.size(n))):
                    raise CrossCheckMismatch(f"the {leg} triangle fails at level {n}")
        self.checks = {"left": True, "right": True, "levels": top}


def extr(b: GBundle, bound: int | None = None, *, policy="invariants") -> Cocycle:
    """``X <- P/_h G -> W̄G``."""
    bound = _working_bound(b, bound)
    T, _ = homotopy_quotient(b.action, bound)
    W = w_bundle(b.G, bound)[2].base
    left = hq_projection(b, T)
    right = hq_classifying(b.G, T, W)
    return Cocycle.certified(left, right, b.G, bound, policy=policy, label=f"extr({b.label})")


def _universal(G: SimplicialGroup, bound: int):
    WG, fib, wb = w_bundle(G, bound)
    return WG, fib, wb, wb.base


def rec(c: Cocycle) -> GBundle:
    """Pull ``WG -> W̄G`` back along the right leg and project through the left leg."""
    if c.G is None:
        raise InvalidArgument("reconstruction needs group coefficients")
    WG, fib, wb, W = _universal(c.G, c.bound)
    if c.right.target != W:
        raise InvalidArgument("the right leg does not land in W̄G at the cocycle's bound")
    Pb, p1, _ = fiber_product(c.right, fib)
    a = wb.action

    def rule(n, x, g):
        y, w = Pb.key(n, x)
        return Pb.locate(n, (y, a.rule(n, w, g)))
    act = GAction(Pb, c.G, rule, min(c.bound, Pb.top), label=f"rec.{c.G.label}", check=False)
    if not act.is_free():
        raise CrossCheckMismatch("the reconstructed action is not degreewise free")
    return GBundle(act, c.X, c.left.after(p1), check=False, label=f"rec({c.label})")


def universal_cocycle(G: SimplicialGroup, bound: int, *, policy="invariants") -> Cocycle:
    """``W̄G <- WG ×_G WG -> W̄G`` with both legs certified."""
    WG, fib, wb, W = _universal(G, bound)
    D = diagonal_action(wb.action, wb.action)
    U, uq = quotient_by_action(D, label=f"W{G.label}x_GW{G.label}")
    X = D.P
    legs = []
    for side in (0, 1):
        legs.append(SimplicialMap.from_indices(
            U, W, lambda d, g, s=side: fib.level(d)[X.key(d, U.key(d, g))[s]]))
    c = Cocycle.certified(legs[0], legs[1], G, bound, policy=policy, label=f"u({G.label})")
    mirror = Cocycle.certified(legs[1], legs[0], G, bound, policy=policy)
    c.extra = {"right_cert": mirror.cert, "right_lifting": mirror.lifting,
               "pairs": X, "quotient": uq}
    return c


def compose(c: Cocycle, d: Cocycle, *, policy="invariants") -> Cocycle:
    """Span composition by the fibre product over the middle object."""
    if c.right.target != d.X:
        raise InvalidArgument("spans do not compose")
    Z, pr1, pr2 = fiber_product(c.right, d.left)
    bound = min(c.bound, d.bound, Z.top)
    return Cocycle.certified(c.left.after(pr1), d.right.after(pr2), d.G, bound,
                             policy=policy, label=f"{d.label}.{c.label}")


def q(c: Cocycle, *, universal: Cocycle | None = None, policy="invariants") -> Cocycle:
    """Postcompose with the universal cocycle."""
    u = universal_cocycle(c.G, c.bound, policy=policy) if universal is None else universal
    return compose(c, u, policy=policy)


def identity_cocycle(W: SimplicialSet, G: SimplicialGroup, bound: int) -> Cocycle:
    return Cocycle.certified(identity(W), identity(W), G, bound, label="id")


@dataclass
class Roundtrip:
    """``P^f = Rec(Extr(P))`` with the comparison ``P^f -> P`` and its certificate."""
    free: GBundle
    map: SimplicialMap
    cert: WeCert | None
    cocycle: Cocycle


def bundle_roundtrip(b: GBundle, bound: int | None = None, *, policy="invariants") -> Roundtrip:
    """``P^f -> P``, ``((p; g), (g, h)) -> p·h``; checked simplicial, equivariant and over ``X``."""
    c = extr(b, bound, policy=policy)
    Pf = rec(c)
    T = c.Y
    WG = w_bundle(b.G, c.bound)[0]
    W = c.right.target
    S = Pf.P
    a = b.action

    def image(n, g):
        x, w = S.key(n, g)
        h = W.key(n + 1, WG.key(n, w))[n]
        return a.rule(n, T.key(n, x)[n][0], h)
    m = SimplicialMap.from_indices(S, b.P, image)
    for n in range(Pf.bound + 1):
        lm, H = m.level(n), b.G.group(n)
        if any(lm[Pf.action.rule(n, s, g)] != a.rule(n, lm[s], g)
               for s in range(S.size(n)) for g in range(len(H))):
            raise CrossCheckMismatch("comparison map is not equivariant")
        if Pf.proj.level(n) != [b.proj.level(n)[v] for v in lm]:
            raise CrossCheckMismatch("comparison map does not lie over the base")
    try:
        cert = we_certify(m, policy, max(c.bound - 1, 0))
    except CertificateNotFound:
        cert = None
    return Roundtrip(Pf, m, cert, c)


def cocycle_roundtrip(c: Cocycle, *, policy="invariants"):
    """``Extr(Rec(c)) -> q(c)`` through ``Y``, with both triangles checked exactly."""
    P = rec(c)
    e = extr(P, c.bound, policy=policy)
    u = universal_cocycle(c.G, c.bound, policy=policy)
    qc = q(c, universal=u, policy=policy)
    WG, _, _, W = _universal(c.G, c.bound)
    T, S, Z = e.Y, P.P, qc.Y
    DX, uproj = u.extra["pairs"], u.extra["quotient"]

    def image(n, g):
        x = T.key(n, g)
        y, w = S.key(n, x[n][0])
        t = tuple(x[i][1] for i in range(n)) + (c.G.group(n).e,)
        w2 = WG.locate(n, W.locate(n + 1, t))
        orbit = uproj.level(n)[DX.locate(n, (w, w2))]
        return Z.locate(n, (y, orbit))
    m = SimplicialMap.from_indices(T, Z, image)
    return CocycleMorphism(e, qc, m), e, qc


def find_section(p: SimplicialMap, *, budget: int = 200_000) -> SimplicialMap:
    """The lexicographically least section of ``p``; ``SectionNotFound`` otherwise."""
    X, T = p.target, p.source

    class _Search(MapSearch):
        def _candidates(self, images, d, g):
            want = X.index(d)[Cell((), d, g)]
            lvl = p.level(d)
            return [c for c in super()._candidates(images, d, g) if lvl[c] == want]
    try:
        s = _Search(X, T, budget=budget).first()
    except BudgetExceeded as e:
        raise SectionNotFound(f"no section found within budget: {e}") from None
    if s is None:
        raise SectionNotFound("the projection has no section")
    return s


@dataclass
class Strictification:
    strict: GBundle
    section: SimplicialMap
    to_free: SimplicialMap
    to_bundle: SimplicialMap
    certs: dict


def strictify(b: GBundle, bound: int | None = None, *, policy="invariants",
              budget: int = 200_000) -> Strictification:
    """``P^s -> P^f -> P`` from the least section of ``P/_h G -> X``."""
    rt = bundle_roundtrip(b, bound, policy=policy)
    c = rt.cocycle
    s = find_section(c.left, budget=budget)
    X = c.X
    sc = Cocycle(identity(X), c.right.after(s), c.G, c.bound, label="section")
    Ps = rec(sc)
    Pf = rt.free
    S = Ps.P
    F = Pf.P
    sl = s.level

    def image(n, g):
        x, w = S.key(n, g)
        return F.locate(n, (sl(n)[x], w))
    to_free = SimplicialMap.from_indices(S, F, image)
    certs = {}
    for name, f in (("to_free", to_free), ("to_bundle", rt.map)):
        try:
            certs[name] = we_certify(f, policy, max(c.bound - 1, 0))
        except CertificateNotFound as e:
            certs[name] = e
    return Strictification(Ps, s, to_free, rt.map, certs)


def factor_span(left: SimplicialMap, right: SimplicialMap, bound: int, *,
                G: SimplicialGroup | None = None, policy="invariants", budget: int | None = None):
    """Replace ``left: Y -> X`` by ``Y ×_X X^{Δ[1]} -> X`` (evaluate at the end).

    Returns the new cocycle and the morphism ``Y -> Y'`` given by constant paths.
    """
    X = left.target
    if not X.available(bound + 1) and X.bound is not None:
        from ..errors import InsufficientDimensionBound
        raise InsufficientDimensionBound(f"path objects through {bound} need more levels of X")
    I = simplex(1)
    F = function_complex(I, X, bound, budget=budget)
    ev0, ev1 = evaluation(F, I, X, 0), evaluation(F, I, X, 1)
    Z, pr1, pr2 = fiber_product(left, ev0)
    new = Cocycle.certified(ev1.after(pr2), right.after(pr1), G, min(bound, Z.top),
                            policy=policy, label="factored")
    const = constant_paths(F, I, X)
    cl = const.level
    Y = left.source
    if (Y.top if Y.bound is not None else Y.dim) > Z.top:
        Y = truncate(Y, Z.top)
    lf = left.level
    m = SimplicialMap.from_indices(Y, Z, lambda d, y: Z.locate(d, (y, cl(d)[lf(d)[y]])))
    old = Cocycle(left, right, G, new.bound, label="span")
    return new, CocycleMorphism(old, new, m)
