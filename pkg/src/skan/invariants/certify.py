"""Weak-equivalence certificates at three strengths.

``ISO`` carries an inverse. ``RETRACT`` carries a retraction together with a
simplicial homotopy from the composite to the identity. ``INVARIANTS`` records
matching components, fundamental-group data and homology through a bound;
it is evidence, not a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.constructions import cylinder
from ..core.homsets import MapSearch
from ..core.maps import SimplicialMap, identity
from ..errors import (BudgetExceeded, CertificateNotFound, InsufficientDimensionBound,
                      InvalidArgument)
from .fundamental import pi0, pi1
from .homology import homology

LEVELS = ("ISO", "RETRACT", "INVARIANTS")


@dataclass
class WeCert:
    level: str
    map: SimplicialMap
    data: dict = field(default_factory=dict)

    def revalidate(self) -> bool:
        f = self.map
        if self.level == "ISO":
            inv = self.data["inverse"]
            return (inv.after(f) == identity(f.source) and f.after(inv) == identity(f.target))
        if self.level == "RETRACT":
            return _retract_ok(f, self.data["retraction"], self.data["homotopy"],
                               self.data["direction"])
        if self.level == "INVARIANTS":
            return _invariants(f, self.data["bound"], self.data.get("budget", 20_000))[0]
        return False

    def at_least(self, level: str) -> bool:
        return LEVELS.index(self.level) <= LEVELS.index(level)

    def summary(self) -> dict:
        out = {"level": self.level}
        if self.level == "INVARIANTS":
            out.update({k: v for k, v in self.data.items() if k != "budget"})
        elif self.level == "RETRACT":
            out["direction"] = self.data["direction"]
        return out


def _retract_ok(f, r, H, direction) -> bool:
    X, Y = f.source, f.target
    if r.after(f) != identity(X):
        return False
    P, i0, i1, _ = cylinder(Y)
    if H.source != P:
        return False
    ends = (H.after(i0), H.after(i1))
    fr = f.after(r)
    want = (identity(Y), fr) if direction == "id_to_fr" else (fr, identity(Y))
    return ends[0] == want[0] and ends[1] == want[1]


def _search_retract(f: SimplicialMap, budget: int):
    X, Y = f.source, f.target
    pins = {}
    for d in range(X.dim + 1):
        for g, v in enumerate(f.images[d]):
            if v < Y.num_generators(d):
                pins[(d, v)] = g
    P, i0, i1, _ = cylinder(Y)
    for r in MapSearch(Y, X, fixed=pins, budget=budget).maps():
        if r.after(f) != identity(X):
            continue
        fr = f.after(r)
        for direction, (a, b) in (("fr_to_id", (fr, identity(Y))),
                                  ("id_to_fr", (identity(Y), fr))):
            fixed = {}
            for end, m in ((i0, a), (i1, b)):
                for d in range(Y.dim + 1):
                    for g, v in enumerate(end.images[d]):
                        fixed[(d, v)] = m.images[d][g]
            H = MapSearch(P, Y, fixed=fixed, budget=budget).first()
            if H is not None and _retract_ok(f, r, H, direction):
                return r, H, direction
    return None


def _invariants(f: SimplicialMap, bound: int, budget: int):
    X, Y = f.source, f.target
    info: dict = {"bound": bound}
    cx, cy = pi0(X), pi0(Y)
    where = {v: t for t, c in enumerate(cy) for v in c}
    image = {where[f.level(0)[c[0]]] for c in cx}
    info["pi0"] = [len(cx), len(cy)]
    if len(cx) != len(cy) or len(image) != len(cy):
        info["failing"] = "pi0"
        return False, info
    hx, hy = homology(X, bound), homology(Y, bound)
    info["homology"] = [hx.strings(), hy.strings()]
    if hx != hy:
        info["failing"] = "homology"
        return False, info
    if bound >= 1:
        groups = []
        for c in cx:
            gx, gy = pi1(X, c[0]), pi1(Y, f.level(0)[c[0]])
            ax, ay = gx.abelianization(), gy.abelianization()
            entry = {"abelianization": [gx.abelianization_str(), gy.abelianization_str()]}
            if ax != ay:
                info["pi1"] = groups + [entry]
                info["failing"] = "pi1"
                return False, info
            try:
                ox, oy = gx.order(budget), gy.order(budget)
                entry["order"] = [ox, oy]
                if ox != oy:
                    info["pi1"] = groups + [entry]
                    info["failing"] = "pi1"
                    return False, info
            except BudgetExceeded:
                entry["order"] = "inconclusive"
            groups.append(entry)
        info["pi1"] = groups
    return True, info


def _normalize_policy(policy):
    if isinstance(policy, tuple):
        name, bound = policy
    else:
        name, bound = policy, None
    name = {"require_iso": "iso", "try_retract": "retract"}.get(name, name)
    if name not in ("iso", "retract", "invariants"):
        raise InvalidArgument(f"unknown certification policy {policy!r}")
    return name, bound


def we_certify(f: SimplicialMap, policy="invariants", bound: int | None = None, *,
               retraction=None, budget: int = 20_000) -> WeCert:
    """Strongest certificate the policy allows.

    ``policy`` is ``"iso"``, ``"retract"`` or ``"invariants"`` (the last needs
    ``bound``); ``retraction`` may supply ``(r, homotopy, direction)`` evidence.
    """
    name, pb = _normalize_policy(policy)
    bound = pb if bound is None else bound
    if f.is_iso():
        return WeCert("ISO", f, {"inverse": f.inverse()})
    if name == "iso":
        raise CertificateNotFound("map is not an isomorphism", failing="iso")
    if retraction is not None:
        r, H, direction = retraction
        if _retract_ok(f, r, H, direction):
            return WeCert("RETRACT", f, {"retraction": r, "homotopy": H, "direction": direction})
    try:
        found = _search_retract(f, budget)
    except (BudgetExceeded, InsufficientDimensionBound):
        found = None
    if found is not None:
        r, H, direction = found
        return WeCert("RETRACT", f, {"retraction": r, "homotopy": H, "direction": direction})
    if name == "retract":
        raise CertificateNotFound("no retraction with homotopy found", failing="retract")
    if bound is None:
        raise InvalidArgument("the invariants policy needs a bound")
    ok, info = _invariants(f, bound, budget)
    if not ok:
        raise CertificateNotFound(f"invariant {info['failing']} differs", failing=info)
    info["budget"] = budget
    return WeCert("INVARIANTS", f, info)
