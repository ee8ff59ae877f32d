"""Dold-Kan: simplicial abelian groups from finite chain complexes."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product as cartesian

from ..errors import InvalidArgument, NotAbelian
from .finite import FinGroup
from .simplicial import SimplicialGroup


@lru_cache(maxsize=None)
def surjections(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Monotone surjections ``[m] -> [k]`` as value sequences, lexicographic."""
    if k > m:
        return ()
    out = []
    for jumps in combinations(range(1, m + 1), k):
        seq, v = [], 0
        for i in range(m + 1):
            if i in jumps:
                v += 1
            seq.append(v)
        out.append(tuple(seq))
    return tuple(sorted(out))


def face_map(m: int, i: int) -> tuple[int, ...]:
    """The coface ``[m-1] -> [m]`` skipping ``i``."""
    return tuple(v for v in range(m + 1) if v != i)


def degen_map(m: int, j: int) -> tuple[int, ...]:
    """The codegeneracy ``[m+1] -> [m]`` hitting ``j`` twice."""
    return tuple(range(j + 1)) + tuple(range(j, m + 1))


def _factor(eta, theta):
    # epi-mono factorization of eta∘theta: (image set, surjection onto its rank)
    comp = [eta[t] for t in theta]
    image = sorted(set(comp))
    rank = {v: r for r, v in enumerate(image)}
    return image, tuple(rank[v] for v in comp)


class FinChainComplex:
    """Finite abelian groups ``C_k = ⊕ Z/m`` for ``k = 0..top`` with boundaries.

    ``moduli[k]`` lists the cyclic factors of ``C_k``; ``boundary[k]`` is an
    integer matrix (rows index ``C_{k-1}`` coordinates) for ``k >= 1``.
    """

    def __init__(self, moduli, boundary=None):
        self.moduli = [tuple(int(m) for m in mods) for mods in moduli]
        self.top = len(self.moduli) - 1
        self.boundary = {int(k): [list(r) for r in mat] for k, mat in (boundary or {}).items()}
        for k in range(1, self.top + 1):
            self.boundary.setdefault(k, [[0] * len(self.moduli[k]) for _ in self.moduli[k - 1]])
        self.validate()

    def validate(self) -> None:
        for k in range(1, self.top + 1):
            mat = self.boundary[k]
            src, tgt = self.moduli[k], self.moduli[k - 1]
            if len(mat) != len(tgt) or any(len(r) != len(src) for r in mat):
                raise InvalidArgument(f"boundary {k} has the wrong shape")
            for c, m in enumerate(src):
                if any((m * mat[r][c]) % tgt[r] for r in range(len(tgt))):
                    raise InvalidArgument(f"boundary {k} is not well defined on Z/{m}")
            if k >= 2:
                for c in range(len(src)):
                    e = [0] * len(src)
                    e[c] = 1
                    if any(self.apply(k - 1, self.apply(k, e))):
                        raise InvalidArgument("boundary squares to a nonzero map")

    def apply(self, k: int, v) -> list[int]:
        mat, tgt = self.boundary[k], self.moduli[k - 1]
        return [sum(a * b for a, b in zip(row, v)) % m for row, m in zip(mat, tgt)]

    def elements(self, k: int):
        return list(cartesian(*[range(m) for m in self.moduli[k]]))

    def add(self, k: int, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli[k]))

    def zero(self, k: int):
        return tuple(0 for _ in self.moduli[k])

    @classmethod
    def concentrated(cls, moduli, n: int) -> "FinChainComplex":
        return cls([() for _ in range(n)] + [tuple(moduli)])


def dold_kan(C: FinChainComplex, bound: int) -> SimplicialGroup:
    """``Γ(C)_m = ⊕_{η: [m] ->> [k]} C_k`` with the usual operators.

    A summand indexed by ``η`` maps under ``θ`` to the summand of the
    surjective part of ``ηθ`` when ``ηθ`` is onto, through ``∂`` when it
    misses only vertex 0, and to zero otherwise.
    """
    def summands(m):
        return [(k, eta) for k in range(min(m, C.top) + 1) for eta in surjections(m, k)]

    def level(m):
        parts = summands(m)
        keys = list(cartesian(*[C.elements(k) for k, _ in parts]))

        def op(a, b):
            return tuple(C.add(k, x, y) for (k, _), x, y in zip(parts, a, b))
        names = ["(" + ",".join(_vec_name(x) for x in key) + ")" for key in keys]
        return FinGroup(keys, op, tuple(C.zero(k) for k, _ in parts), names=names,
                        label=f"Gamma_{m}", abelian=True, check=False)

    def act(m, mp, theta, key):
        target = summands(mp)
        pos = {s: i for i, s in enumerate(target)}
        out = [C.zero(k) for k, _ in target]
        for (k, eta), c in zip(summands(m), key):
            image, eta2 = _factor(eta, theta)
            j = len(image) - 1
            if j == k:
                t = pos[(k, eta2)]
                out[t] = C.add(k, out[t], c)
            elif j == k - 1 and image == list(range(1, k + 1)):
                t = pos[(k - 1, eta2)]
                out[t] = C.add(k - 1, out[t], tuple(C.apply(k, c)))
        return tuple(out)
    return SimplicialGroup(level, lambda m, i, key: act(m, m - 1, face_map(m, i), key),
                           lambda m, j, key: act(m, m + 1, degen_map(m, j), key),
                           bound=bound, label="Gamma(C)")


def _vec_name(v) -> str:
    return "".join(str(x) for x in v) if v else "0"


def dold_kan_em(pi: FinGroup, n: int, bound: int) -> SimplicialGroup:
    """``K(π, n)`` as the Dold-Kan image of ``π`` concentrated in degree ``n``.

    Level ``m`` is ``π`` to the power of the surjections ``[m] ->> [n]``;
    ``θ`` sends the ``η`` coordinate to the ``ηθ`` coordinate when that is
    still onto and drops it otherwise.
    """
    if not pi.is_abelian():
        raise NotAbelian(f"{pi.label} is not abelian")
    if bound < n:
        raise InvalidArgument("the bound must be at least the degree")

    def level(m):
        etas = surjections(m, n)
        keys = list(cartesian(range(len(pi)), repeat=len(etas)))

        def op(a, b):
            return tuple(pi.mul(x, y) for x, y in zip(a, b))
        names = ["(" + ",".join(pi.names[x] for x in key) + ")" for key in keys]
        return FinGroup(keys, op, (pi.e,) * len(etas), names=names,
                        label=f"K({pi.label},{n})_{m}", abelian=True, check=False)

    def act(m, mp, theta, key):
        target = surjections(mp, n)
        pos = {eta: i for i, eta in enumerate(target)}
        out = [pi.e] * len(target)
        for eta, c in zip(surjections(m, n), key):
            comp = tuple(eta[t] for t in theta)
            t = pos.get(comp)
            if t is not None:
                out[t] = pi.mul(out[t], c)
        return tuple(out)
    return SimplicialGroup(level, lambda m, i, key: act(m, m - 1, face_map(m, i), key),
                           lambda m, j, key: act(m, m + 1, degen_map(m, j), key),
                           bound=bound, complete_dim=0 if n == 0 else None,
                           label=f"K({pi.label},{n})")
