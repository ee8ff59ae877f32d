"""Exhaustive horn and boundary lifting checks."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from ..errors import InvalidArgument
from .maps import SimplicialMap, constant
from .sset import SimplicialSet
from .standard import simplex


@dataclass
class LiftingReport:
    """Outcome of a lifting check.

    ``counterexample`` names the first unfillable shape: its dimension, the
    missing face (``None`` for a full boundary), the target simplex and the
    faces of the horn.
    """
    ok: bool
    up_to: int
    kind: str
    checked: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok

    def summary(self) -> dict:
        return {"ok": self.ok, "up_to": self.up_to, "kind": self.kind,
                "checked": {(f"{n}" if k is None else f"{n},{k}"): c
                            for (n, k), c in self.checked.items()},
                "counterexample": self.counterexample}


def to_point(X: SimplicialSet) -> SimplicialMap:
    return constant(X, simplex(0), 0)


def _shapes(f: SimplicialMap, n: int, missing):
    """Yield ``(y, faces)`` for every compatible family over every ``y`` in level ``n``.

    ``missing`` is the omitted face index, or ``None`` for the full boundary.
    """
    X, Y = f.source, f.target
    positions = [i for i in range(n + 1) if i != missing]
    below = f.level(n - 1)
    ft = X.face_table(n - 1) if n >= 2 else None
    lookups = []
    for t, j in enumerate(positions):
        earlier = [i for i in positions[:t]]
        table = defaultdict(list)
        for x in range(X.size(n - 1)):
            key = (below[x],) + (tuple(ft[x][i] for i in earlier) if ft else ())
            table[key].append(x)
        lookups.append((j, earlier, table))
    yft = Y.face_table(n)
    groups = defaultdict(list)
    for y in range(Y.size(n)):
        groups[yft[y]].append(y)
    for yf, ys in groups.items():
        chosen: dict[int, int] = {}

        def rec(t):
            if t == len(lookups):
                yield tuple(chosen[i] for i in positions)
                return
            j, earlier, table = lookups[t]
            key = (yf[j],) + (tuple(ft[chosen[i]][j - 1] for i in earlier) if ft else ())
            for x in table.get(key, ()):
                chosen[j] = x
                yield from rec(t + 1)
            chosen.pop(j, None)
        for fam in rec(0):
            for y in ys:
                yield y, fam


def _check(f: SimplicialMap, up_to: int, kind: str) -> LiftingReport:
    X, Y = f.source, f.target
    report = LiftingReport(True, up_to, kind)
    if X.is_empty() and Y.is_empty():
        return report
    start = 0 if kind == "boundary" else 1
    for n in range(start, up_to + 1):
        X.require(n)
        Y.require(n)
        level = f.level(n)
        if n == 0:
            hit = set(level)
            report.checked[(0, None)] = Y.size(0)
            for y in range(Y.size(0)):
                if y not in hit:
                    report.ok = False
                    report.counterexample = {"dimension": 0, "horn": None,
                                             "target": Y.simplex_name(0, y), "faces": []}
                    return report
            continue
        ks = [None] if kind == "boundary" else list(range(n + 1))
        for k in ks:
            xft = X.face_table(n)
            fill = {(level[x],) + tuple(xft[x][i] for i in range(n + 1) if i != k)
                    for x in range(X.size(n))}
            count = 0
            for y, fam in _shapes(f, n, k):
                count += 1
                if (y,) + fam not in fill:
                    report.ok = False
                    report.checked[(n, k)] = count
                    report.counterexample = {
                        "dimension": n, "horn": k, "target": Y.simplex_name(n, y),
                        "faces": [X.simplex_name(n - 1, x) for x in fam]}
                    return report
            report.checked[(n, k)] = count
    return report


def check_kan(f, up_to: int) -> LiftingReport:
    """Horn lifting for a map, or for a simplicial set via its map to a point."""
    if up_to < 1:
        raise InvalidArgument("up_to must be at least 1")
    if isinstance(f, SimplicialSet):
        f = to_point(f)
    return _check(f, up_to, "horn")


def check_trivial_fibration(f, up_to: int) -> LiftingReport:
    """Boundary lifting through dimension ``up_to`` (acyclic fibration test)."""
    if isinstance(f, SimplicialSet):
        f = to_point(f)
    return _check(f, up_to, "boundary")


def is_kan(X: SimplicialSet, up_to: int) -> bool:
    return check_kan(X, up_to).ok
