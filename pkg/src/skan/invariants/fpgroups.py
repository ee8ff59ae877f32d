"""Finitely presented groups: words, abelianization and coset enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BudgetExceeded, InvalidArgument
from .snf import invariant_factors

# A word is a tuple of nonzero ints: ``i + 1`` is generator ``i``, ``-(i + 1)`` its inverse.


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert(word) -> tuple[int, ...]:
    return tuple(-a for a in reversed(word))


def cyclic_reduce(word) -> tuple[int, ...]:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


@dataclass
class FPGroup:
    generators: list[str]
    relators: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.generators)
        rels = []
        for r in self.relators:
            if any(a == 0 or abs(a) > n for a in r):
                raise InvalidArgument(f"relator {r} references a missing generator")
            r = cyclic_reduce(r)
            if r:
                rels.append(r)
        self.relators = rels

    def abelianization(self) -> tuple[int, list[int]]:
        """``(free rank, torsion invariant factors > 1)``."""
        n = len(self.generators)
        rows = []
        for r in self.relators:
            row = [0] * n
            for a in r:
                row[abs(a) - 1] += 1 if a > 0 else -1
            rows.append(row)
        factors = invariant_factors(rows, n)
        return n - len(factors), [d for d in factors if d > 1]

    def abelianization_str(self) -> str:
        rank, tors = self.abelianization()
        return abelian_str(rank, tors)

    def order(self, budget: int = 100_000) -> int:
        """Group order by coset enumeration over the trivial subgroup."""
        return CosetEnumeration(self, budget).run()

    def is_trivial(self, budget: int = 100_000) -> bool:
        return self.order(budget) == 1

    def word_str(self, word) -> str:
        if not word:
            return "1"
        return "*".join(self.generators[abs(a) - 1] + ("" if a > 0 else "^-1") for a in word)

    def to_dict(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [self.word_str(r) for r in self.relators]}


def abelian_str(rank: int, torsion) -> str:
    parts = [f"Z/{d}" for d in torsion]
    if rank:
        parts = (["Z"] if rank == 1 else [f"Z^{rank}"]) + parts
    return " + ".join(parts) if parts else "0"


class CosetEnumeration:
    """Todd-Coxeter enumeration (relator-based strategy with coincidences)."""

    def __init__(self, group: FPGroup, budget: int, subgroup=()):
        self.group = group
        self.budget = budget
        self.ncols = 2 * len(group.generators)
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.subgroup = [self._cols(w) for w in subgroup]
        self.relators = [self._cols(r) for r in group.relators]

    @staticmethod
    def _cols(word):
        return [2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in word]

    def _rep(self, c):
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def _define(self, c, x):
        if len(self.table) >= self.budget:
            raise BudgetExceeded(f"coset enumeration exceeded {self.budget} cosets")
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def _merge(self, k, l, queue):
        k, l = self._rep(k), self._rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def _coincidence(self, a, b):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        T = self.table
        while i < len(queue):
            l = queue[i]
            i += 1
            for x in range(self.ncols):
                d = T[l][x]
                if d is None:
                    continue
                if T[d][x ^ 1] == l:
                    T[d][x ^ 1] = None
                k1, d1 = self._rep(l), self._rep(d)
                if T[k1][x] is not None:
                    self._merge(d1, T[k1][x], queue)
                elif T[d1][x ^ 1] is not None:
                    self._merge(k1, T[d1][x ^ 1], queue)
                else:
                    T[k1][x] = d1
                    T[d1][x ^ 1] = k1

    def _scan_and_fill(self, c, word):
        T = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and T[f][word[i]] is not None:
                f = T[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and T[b][word[j] ^ 1] is not None:
                b = T[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                T[f][word[i]] = b
                T[b][word[i] ^ 1] = f
                return
            self._define(f, word[i])

    def _live(self, c):
        return self.parent[c] == c

    def run(self) -> int:
        for w in self.subgroup:
            self._scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in self.relators:
                if not self._live(c):
                    break
                self._scan_and_fill(c, r)
            if self._live(c):
                for x in range(self.ncols):
                    if self.table[c][x] is None:
                        self._define(c, x)
            c += 1
        return sum(1 for c in range(len(self.table)) if self._live(c))
