"""H¹ by two routes, Čech cohomology with W̄ⁿA coefficients, and the nerve of a cover."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..bundles.cech import cech_nerve
from ..bundles.twisting import (classifying_map, enumerate_twistings, twisting_classes,
                                TwistingFunction)
from ..core.build import from_levels
from ..core.cells import Cell
from ..core.constructions import subcomplex
from ..core.kan import to_point
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import (CertificateNotFound, CrossCheckMismatch, EmptyInput,
                      IntersectionNotContractible)
from ..groups.finite import FinGroup
from ..groups.simplicial import SimplicialGroup, linear_structure
from ..groups.wbar import wbar, wbar_tower
from ..invariants.certify import we_certify
from ..invariants.mapping import homotopy_classes


@dataclass
class H1Result:
    """Isomorphism classes of twisted bundles matched with classes of maps ``X -> W̄G``.

    ``matching[i]`` is the homotopy class of the classifying map of
    ``representatives[i]``.
    """
    representatives: list[TwistingFunction]
    members: list[list[int]]
    twistings: list[TwistingFunction]
    matching: list[int]
    homotopy: object = None
    stats: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.representatives)

    def __len__(self):
        return self.count


def h1(X: SimplicialSet, G: SimplicialGroup, *, budget: int = 200_000) -> H1Result:
    """``H¹(X; G)`` as twistings up to gauge, checked against ``π0 Maps(X, W̄G)``."""
    taus = enumerate_twistings(X, G, budget=budget)
    classes = twisting_classes(taus, budget=budget)
    W = wbar(G, X.dim + 1)
    hc = homotopy_classes(X, W, budget=max(budget, 2_000_000))
    matching = []
    for members in classes:
        image = {hc.class_of(classifying_map(taus[i], W)) for i in members}
        if len(image) != 1:
            raise CrossCheckMismatch("isomorphic bundles have non-homotopic classifying maps")
        matching.append(image.pop())
    if sorted(matching) != list(range(hc.count)):
        raise CrossCheckMismatch(f"{len(classes)} bundle classes but {hc.count} homotopy classes "
                                 f"(matching {matching})")
    return H1Result([taus[c[0]] for c in classes], classes, taus, matching, hc,
                    {"twistings": len(taus), "maps": hc.stats.get("maps")})


def _prime_exponent(H: FinGroup) -> int | None:
    n = len(H)
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            if m == 1 and all(H.power(a, p) == H.e for a in range(n)) and H.is_abelian():
                return p
            return None
    return None


@dataclass
class CechClasses:
    count: int
    representatives: list
    method: str
    total_counts: list[int]
    stats: dict = field(default_factory=dict)


def hn_cech(f: SimplicialMap, A: SimplicialGroup, n: int, *, budget: int = 2_000_000,
            linear: bool | None = None) -> CechClasses:
    """``π0 Maps(σ_* Č(U), W̄ⁿA)`` with the total truncated at ``n + 1``.

    Elementary abelian coefficients use linear algebra over ``F_p`` unless
    ``linear=False``.
    """
    if n < 1:
        raise EmptyInput("the degree must be at least 1")
    top = n + 1
    _, proj = cech_nerve(f, bound=top)
    T = proj.source
    tower = wbar_tower(A, n, top + 1)
    K = tower[-1]
    target = K.underlying(top + 1)
    p = _prime_exponent(A.group(0)) if A.complete_dim == 0 else None
    lin = None
    if p is not None and linear is not False:
        lin = linear_structure(K, p, top + 1)
        target = lin.space
    hc = homotopy_classes(T, target, budget=budget, linear=lin)
    return CechClasses(hc.count, hc.representatives, hc.method, T.counts(top), hc.stats)


def _members(f: SimplicialMap):
    """Generator sets of ``X`` covered by each member of the cover."""
    got = getattr(f, "members", None)
    if got is not None:
        return got
    from ..invariants.fundamental import pi0
    Y, X = f.source, f.target
    out = []
    for comp in pi0(Y):
        verts = set(comp)
        cells = set()
        for d in range(Y.dim + 1):
            for g in range(Y.num_generators(d)):
                if Y.restrict(d, Y.index(d)[Cell((), d, g)], [0]) in verts:
                    img = X.simplices(d)[f.images[d][g]]
                    if img.nondegenerate:
                        cells.add((d, img.gen))
        out.append(cells)
    return out


def nerve_complex(f: SimplicialMap, *, bound: int | None = None, policy="invariants") -> SimplicialSet:
    """Nerve of the cover: a ``k``-simplex for each ordered ``(k+1)``-set of members
    with nonempty common intersection.

    Every nonempty intersection must certify contractible. Members come from
    :func:`skan.bundles.cech.cover`, or are the connected pieces of the source.
    """
    X = f.target
    members = _members(f)
    if not members:
        raise EmptyInput("a cover needs at least one member")
    bound = X.dim if bound is None else bound
    alive = []
    for k in range(1, len(members) + 1):
        found = False
        for S in combinations(range(len(members)), k):
            common = set.intersection(*(members[i] for i in S))
            if not common:
                continue
            found = True
            alive.append(S)
            sub, _ = subcomplex(X, [Cell((), d, g) for d, g in sorted(common)])
            try:
                we_certify(to_point(sub), policy, bound)
            except CertificateNotFound as e:
                raise IntersectionNotContractible(
                    f"intersection of members {list(S)} is not contractible", members=list(S)
                ) from e
        if not found:
            break
    faces = set(alive)
    top = max(len(S) for S in alive) - 1

    def level(m):
        out = []
        for S in faces:
            if len(S) > m + 1:
                continue
            out.extend(_spread(S, m + 1))
        return sorted(set(out))
    return from_levels(top, level, lambda m, i, t: t[:i] + t[i + 1:],
                       lambda m, j, t: t[:j + 1] + t[j:], complete=True,
                       name_at=lambda m, t: "U" + "".join(str(i) for i in t),
                       label=f"nerve({X.label})", validate=False)


def _spread(S, length):
    """Weakly increasing sequences of the given length using every element of ``S``."""
    if len(S) == 1:
        return [S * length]
    out = []
    for r in range(1, length - len(S) + 2):
        for rest in _spread(S[1:], length - r):
            out.append((S[0],) * r + rest)
    return out
