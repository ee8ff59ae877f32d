"""Components of mapping spaces: homotopy classes of maps into a Kan complex."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from ..core.constructions import UnionFind, cylinder
from ..core.homsets import MapSearch
from ..core.kan import check_kan
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import BudgetExceeded, CombinatorialBlowup, TargetNotKan


@dataclass
class HomotopyClasses:
    """Class representatives, and when enumerated, all maps with their classes."""
    representatives: list[SimplicialMap]
    maps: list[tuple] | None = None
    classes: list[list[int]] | None = None
    method: str = "enumeration"
    stats: dict = field(default_factory=dict)
    total: int | None = None

    def __len__(self):
        return self.count

    @property
    def count(self) -> int:
        return len(self.representatives) if self.total is None else self.total

    def class_of(self, f: SimplicialMap) -> int:
        """Index of the class containing ``f`` (enumerated results only)."""
        if self.maps is None:
            raise ValueError("class lookup needs enumerated maps")
        i = self.maps.index(f.images)
        for t, members in enumerate(self.classes):
            if i in members:
                return t
        raise ValueError("map not found")


def _end_pins(end: SimplicialMap, images) -> dict:
    fixed = {}
    for d, row in enumerate(end.images):
        for g, v in enumerate(row):
            fixed[(d, v)] = images[d][g]
    return fixed


def _restrict(H, end: SimplicialMap, A: SimplicialSet) -> tuple:
    out = []
    P = end.target
    for d, row in enumerate(end.images):
        vals = []
        for v in row:
            c = P.simplices(d)[v]
            x = H[c.dim][c.gen]
            vals.append(A.apply_word_index(c.dim, x, c.word) if c.word else x)
        out.append(tuple(vals))
    return tuple(out)


def homotopic_pairs(X: SimplicialSet, A: SimplicialSet, budget: int | None = None):
    """All pairs ``(f, g)`` joined by a single homotopy ``X × Δ[1] -> A``."""
    P, i0, i1, _ = cylinder(X)
    pairs = set()
    for H in MapSearch(P, A, budget=budget).assignments():
        pairs.add((_restrict(H, i0, A), _restrict(H, i1, A)))
    return pairs


def homotopy_classes(X: SimplicialSet, A: SimplicialSet, bound: int | None = None, *,
                     budget: int = 2_000_000, linear=None, check: bool = True) -> HomotopyClasses:
    """``π0 Maps(X, A)`` for a Kan target ``A``.

    Homotopies are maps ``X × Δ[1] -> A``. Because ``A`` is Kan the relation
    is an equivalence, so one representative per class is expanded. ``linear``
    may describe ``A`` as a simplicial vector space over a prime field; the
    count then comes from linear algebra instead of enumeration.
    """
    need = X.dim + 1 if bound is None else max(bound, X.dim + 1)
    if check:
        rep = check_kan(A, need)
        if not rep.ok:
            raise TargetNotKan(f"target fails the horn check: {rep.counterexample}")
    if linear is not None:
        return _linear_classes(X, A, linear)
    try:
        maps = list(MapSearch(X, A, budget=budget).assignments())
    except BudgetExceeded:
        raise CombinatorialBlowup("too many maps to enumerate", estimate=_estimate(X, A)) from None
    index = {m: t for t, m in enumerate(maps)}
    uf = UnionFind(len(maps))
    P, i0, i1, _ = cylinder(X)
    expanded = set()
    nodes = 0
    for t, m in enumerate(maps):
        if uf.find(t) in expanded:
            continue
        search = MapSearch(P, A, fixed=_end_pins(i0, m), budget=budget)
        try:
            for H in search.assignments():
                uf.union(t, index[_restrict(H, i1, A)])
        except BudgetExceeded:
            raise CombinatorialBlowup("too many homotopies to enumerate",
                                      estimate=_estimate(P, A)) from None
        nodes += search.nodes
        expanded.add(uf.find(t))
    groups: dict[int, list[int]] = {}
    for t in range(len(maps)):
        groups.setdefault(uf.find(t), []).append(t)
    classes = sorted(groups.values())
    reps = [SimplicialMap(X, A, maps[c[0]], validate=False) for c in classes]
    return HomotopyClasses(reps, maps, classes, "enumeration",
                           {"maps": len(maps), "homotopy_nodes": nodes})


def _estimate(K: SimplicialSet, A: SimplicialSet) -> int:
    est = 1
    for d in range(K.dim + 1):
        est *= max(1, A.size(d)) ** K.num_generators(d)
    return est


# -- linear targets ---------------------------------------------------------------------
#
# Constraint rows are sparse ``{column: coefficient}`` dicts. Over F_2 rows are
# packed into integers and reduced by XOR.


class _Echelon:
    """Incremental row reduction over ``F_p`` keyed by leading column."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, object] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row):
        p = self.p
        if p == 2:
            while row:
                lead = row.bit_length() - 1
                piv = self.rows.get(lead)
                if piv is None:
                    return row
                row ^= piv
            return row
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            lead = max(row)
            piv = self.rows.get(lead)
            if piv is None:
                return row
            f = row[lead]
            for c, v in piv.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row) -> bool:
        """Insert a row; report whether it raised the rank."""
        row = self.reduce(self._pack(row))
        if not row:
            return False
        if self.p == 2:
            self.rows[row.bit_length() - 1] = row
        else:
            lead = max(row)
            inv = pow(row[lead], self.p - 2, self.p)
            self.rows[lead] = {c: (v * inv) % self.p for c, v in row.items()}
        return True

    def _pack(self, row):
        if self.p != 2 or isinstance(row, int):
            return row
        out = 0
        for c, v in row.items():
            if v % 2:
                out ^= 1 << c
        return out

    def nullspace(self, ncols: int) -> list[dict]:
        """Basis of the solutions of the stored rows, as sparse vectors."""
        p = self.p
        full: dict[int, dict] = {}
        for lead in sorted(self.rows):
            row = self.rows[lead]
            full[lead] = _unpack(row) if p == 2 else dict(row)
        # back-substitute so each pivot row has no other pivot columns
        for lead in sorted(full):
            row = full[lead]
            for c in [c for c in row if c != lead and c in full and c < lead]:
                f = row.get(c, 0)
                if not f:
                    continue
                for cc, vv in full[c].items():
                    nv = (row.get(cc, 0) - f * vv) % p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        basis = []
        for fc in range(ncols):
            if fc in full:
                continue
            v = {fc: 1}
            for lead, row in full.items():
                a = row.get(fc, 0)
                if a:
                    v[lead] = (-a) % p
            basis.append(v)
        return basis


def _unpack(x: int) -> dict:
    out = {}
    c = 0
    while x:
        if x & 1:
            out[c] = 1
        x >>= 1
        c += 1
    return out


def _layout(K: SimplicialSet, lin):
    offsets = {}
    n = 0
    for d in range(K.dim + 1):
        for g in range(K.num_generators(d)):
            offsets[(d, g)] = n
            n += lin.dim(d)
    return offsets, n


def _constraint_rows(K: SimplicialSet, A: SimplicialSet, lin, offsets):
    """Rows saying that the assigned generator images commute with faces."""
    p = lin.p
    op_cache = {}

    def matrix(d, fn):
        # cols[k] is the image of basis vector k under a homomorphism A_d -> A_e
        cols = []
        for k in range(lin.dim(d)):
            e = [0] * lin.dim(d)
            e[k] = 1
            cols.append(lin.vec(*fn(lin.index(d, e))))
        return cols

    for d in range(1, K.dim + 1):
        if not lin.dim(d - 1):
            continue
        for g in range(K.num_generators(d)):
            og = offsets[(d, g)]
            for i, c in enumerate(K.faces[d][g]):
                key = ("d", d, i)
                if key not in op_cache:
                    op_cache[key] = matrix(d, lambda x, d=d, i=i: (d - 1, A.face_table(d)[x][i]))
                F = op_cache[key]
                skey = ("s", c.dim, c.word)
                if skey not in op_cache:
                    op_cache[skey] = matrix(
                        c.dim, lambda x, c=c: (c.dim + len(c.word),
                                               A.apply_word_index(c.dim, x, c.word)))
                S = op_cache[skey]
                oh = offsets[(c.dim, c.gen)]
                for r in range(lin.dim(d - 1)):
                    row: dict[int, int] = {}
                    for k in range(lin.dim(d)):
                        if F[k][r]:
                            row[og + k] = (row.get(og + k, 0) + F[k][r]) % p
                    for k in range(lin.dim(c.dim)):
                        if S[k][r]:
                            row[oh + k] = (row.get(oh + k, 0) - S[k][r]) % p
                    row = {a: v for a, v in row.items() if v}
                    if row:
                        yield row


def _linear_classes(X: SimplicialSet, A: SimplicialSet, lin, *,
                    representatives: bool = False) -> HomotopyClasses:
    """Count classes as ``p^(dim hom(X, A) - rank D)`` where ``D`` sends a
    homotopy to the difference of its ends; only ranks are needed."""
    p = lin.p
    offx, nx = _layout(X, lin)
    ex = _Echelon(p)
    for row in _constraint_rows(X, A, lin, offx):
        ex.add(row)
    hom_dim = nx - len(ex)
    P, i0, i1, _ = cylinder(X)
    offp, npp = _layout(P, lin)
    ep = _Echelon(p)
    for row in _constraint_rows(P, A, lin, offp):
        ep.add(row)
    rank_cp = len(ep)
    ends = []
    for (d, g), o in offx.items():
        a, b = offp[(d, i0.images[d][g])], offp[(d, i1.images[d][g])]
        for k in range(lin.dim(d)):
            ends.append({a + k: 1, b + k: p - 1} if p > 2 or a != b else {})
    for row in ends:
        if row:
            ep.add(row)
    rank_d = len(ep) - rank_cp
    exponent = hom_dim - rank_d
    stats = {"hom_dim": hom_dim, "homotopy_rank": rank_d, "prime": p,
             "columns": [nx, npp]}
    reps = None
    if representatives:
        reps = _linear_representatives(X, A, lin, ex, offx, nx, P, i0, i1, offp, npp, exponent)
    return HomotopyClasses(reps or [], None, None, "linear", stats, total=p ** exponent)


def _linear_representatives(X, A, lin, ex, offx, nx, P, i0, i1, offp, npp, exponent):
    p = lin.p
    homs = ex.nullspace(nx)
    ep = _Echelon(p)
    for row in _constraint_rows(P, A, lin, offp):
        ep.add(row)
    image = _Echelon(p)
    for H in ep.nullspace(npp):
        v = {}
        for (d, g), o in offx.items():
            a, b = offp[(d, i0.images[d][g])], offp[(d, i1.images[d][g])]
            for k in range(lin.dim(d)):
                val = (H.get(a + k, 0) - H.get(b + k, 0)) % p
                if val:
                    v[o + k] = val
        if v:
            image.add(v)
    complement = [h for h in homs if image.add(h)]
    if len(complement) != exponent:
        raise ValueError("linear class count and complement disagree")
    reps = []
    for coeffs in cartesian(range(p), repeat=len(complement)):
        vec = [0] * nx
        for c, v in zip(coeffs, complement):
            for col, val in v.items():
                vec[col] = (vec[col] + c * val) % p
        images = [[lin.index(d, vec[offx[(d, g)]:offx[(d, g)] + lin.dim(d)])
                   for g in range(X.num_generators(d))] for d in range(X.dim + 1)]
        reps.append(SimplicialMap(X, A, images))
    return reps
