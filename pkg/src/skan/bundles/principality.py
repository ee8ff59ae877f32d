"""Principality verdicts, pullback, pushforward and associated bundles."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..bisimplicial import total
from ..core.constructions import fiber_product, truncate
from ..core.kan import LiftingReport, check_kan
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import CertificateMissing, CertificateNotFound, ProjectionNotFibration
from ..invariants.certify import WeCert, we_certify
from .actions import GAction, GBundle
from .quotients import _extends, action_groupoid, diagonal_action, quotient_by_action, shear


@dataclass
class Principality:
    """``STRICT``, ``WEAK`` (with a certificate), ``FAIL`` or ``INCONCLUSIVE``."""
    kind: str
    cert: WeCert | None = None
    report: dict = field(default_factory=dict)

    def at_least_weak(self) -> bool:
        return self.kind in ("STRICT", "WEAK")

    def summary(self) -> dict:
        out = {"kind": self.kind, "report": self.report}
        if self.cert is not None:
            out["certificate"] = self.cert.summary()
        return out


def _over_base(Q: SimplicialSet, X: SimplicialSet, fn) -> SimplicialMap:
    target = X if Q.bound is None or X.bound is not None else truncate(X, Q.top)
    if target.bound is not None and Q.bound is not None and target.top > Q.top:
        target = truncate(target, Q.top)
    return SimplicialMap.from_indices(Q, target, fn, validate=False)


def strict_quotient_map(b: GBundle) -> SimplicialMap:
    """``P/G -> X`` induced by the projection."""
    Q, _ = quotient_by_action(b.action)
    lvl = b.proj.level
    return _over_base(Q, b.base, lambda d, g: lvl(d)[Q.key(d, g)])


def _working_bound(b: GBundle, bound):
    if bound is not None:
        return bound
    if _extends(b.action, b.P.dim + 1):
        return max(b.bound, b.P.dim + 1, 2)
    return b.bound


def classify_principality(b: GBundle, policy="invariants", bound: int | None = None, *,
                          budget: int = 20_000) -> Principality:
    """Strict when the action is free with ``P/G ≅ X``; weak when the shear is certified.

    ``FAIL`` is only reported on a disproof (an invariant that differs);
    other certification failures are ``INCONCLUSIVE``.
    """
    wb = _working_bound(b, bound)
    up = max(1, min(wb, b.P.top, b.base.top))
    report = check_kan(b.proj, up)
    if not report.ok:
        raise ProjectionNotFibration(f"projection fails horn lifting: {report.counterexample}")
    a = b.action
    free_upto = min(a.bound, b.P.dim) if _extends(a, b.P.dim) and b.P.bound is None else a.bound
    free = a if free_upto == a.bound else GAction(a.P, a.G, a.rule, free_upto, check=False)
    if free.is_free():
        q = strict_quotient_map(b)
        if q.is_iso():
            return Principality("STRICT", WeCert("ISO", q, {"inverse": q.inverse()}),
                                {"free": True, "quotient": "iso"})
    sh = shear(b, 1, wb)
    try:
        cert = we_certify(sh, policy, max(wb - 1, 0), budget=budget)
    except CertificateNotFound as e:
        info = e.failing if isinstance(e.failing, dict) else {"failing": e.failing}
        kind = "FAIL" if isinstance(e.failing, dict) else "INCONCLUSIVE"
        return Principality(kind, None, {"shear": info, "message": str(e)})
    return Principality("WEAK", cert, {"free": free.is_free(), "shear": cert.level})


def pullback_bundle(f: SimplicialMap, b: GBundle, *, certify: bool = False,
                    policy="invariants", bound: int | None = None) -> GBundle:
    """``f^* P = Y ×_X P`` with ``G`` acting on the second factor."""
    Pb, p1, _ = fiber_product(f, b.proj)
    a = b.action
    top = a.bound if Pb.bound is None else min(a.bound, Pb.top)
    if Pb.bound is None and _extends(a, Pb.dim):
        top = max(top, Pb.dim)

    def rule(n, x, g):
        y, p = Pb.key(n, x)
        return Pb.locate(n, (y, a.rule(n, p, g)))
    act = GAction(Pb, a.G, rule, top, label=f"{Pb.label}.{a.G.label}", check=False)
    out = GBundle(act, f.source, p1, check=False, label=f"{f.source.label}*{b.label}")
    if certify:
        out.verdict = classify_principality(out, policy, bound)
    return out


def pushforward_bundle(p: SimplicialMap, b: GBundle, certificate: LiftingReport | None = None,
                       *, certify: bool = False, policy="invariants",
                       bound: int | None = None) -> GBundle:
    """``p_! P``: the same total space over ``X`` through ``p ∘ proj``.

    ``certificate`` must be a successful boundary-lifting report for ``p``
    reaching the bundle's bound.
    """
    if certificate is None or not certificate.ok or certificate.kind != "boundary":
        raise CertificateMissing("pushforward needs an acyclic-fibration certificate for p")
    if certificate.up_to < min(b.bound, p.source.top):
        raise CertificateMissing(f"certificate reaches {certificate.up_to}, "
                                 f"the bundle needs {b.bound}")
    out = GBundle(b.action, p.target, p.after(b.proj), check=False,
                  label=f"{p.target.label}!{b.label}")
    if certify:
        out.verdict = classify_principality(out, policy, bound)
    return out


def associated(b: GBundle, V: GAction, bound: int | None = None):
    """``P ×_G V`` with its projection to the base.

    Uses the plain quotient of ``P × V`` when the diagonal action is free,
    otherwise the homotopy quotient.
    """
    D = diagonal_action(b.action, V)
    X = D.P
    lvl = b.proj.level
    if D.is_free():
        Q, _ = quotient_by_action(D, label=f"{b.P.label}x_G{V.P.label}")
        return Q, _over_base(Q, b.base, lambda d, g: lvl(d)[X.key(d, Q.key(d, g))[0]])
    top = D.bound if bound is None else bound
    T = total(action_groupoid(D, top), top)
    return T, _over_base(T, b.base, lambda d, g: lvl(d)[X.key(d, T.key(d, g)[d][0])[0]])
