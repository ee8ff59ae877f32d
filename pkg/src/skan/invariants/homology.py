"""Integral homology of the normalized chain complex."""
from __future__ import annotations

from dataclasses import dataclass

from ..core.sset import SimplicialSet
from .fpgroups import abelian_str
from .snf import invariant_factors


@dataclass(frozen=True)
class HomologyProfile:
    """``groups[n] = (free rank, torsion invariant factors)`` for ``n`` in range."""
    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def __getitem__(self, n):
        return self.groups[n]

    def __len__(self):
        return len(self.groups)

    def strings(self) -> list[str]:
        return [abelian_str(r, t) for r, t in self.groups]

    def __str__(self):
        return "(" + ", ".join(self.strings()) + ")"

    def truncate(self, r: int) -> "HomologyProfile":
        return HomologyProfile(self.groups[:r + 1])

    @classmethod
    def parse(cls, items) -> "HomologyProfile":
        """From strings such as ``"Z"``, ``"Z/2"``, ``"Z^2 + Z/3"`` or ``"0"``."""
        groups = []
        for s in items:
            rank, tors = 0, []
            for part in str(s).replace(" ", "").split("+"):
                if part in ("0", ""):
                    continue
                if part.startswith("Z/"):
                    tors.append(int(part[2:]))
                elif part == "Z":
                    rank += 1
                elif part.startswith("Z^"):
                    rank += int(part[2:])
                else:
                    raise ValueError(f"cannot read abelian group {s!r}")
            groups.append((rank, tuple(sorted(tors))))
        return cls(tuple(groups))


def boundary_rows(X: SimplicialSet, n: int) -> list[dict[int, int]]:
    """Rows (indexed by ``(n-1)``-generators) of the normalized boundary ``∂_n``."""
    rows: list[dict[int, int]] = [dict() for _ in range(X.num_generators(n - 1))]
    for g in range(X.num_generators(n)):
        for i, c in enumerate(X.faces[n][g]):
            if c.word:
                continue  # degenerate faces vanish in the normalized complex
            row = rows[c.gen]
            v = row.get(g, 0) + (-1 if i % 2 else 1)
            if v:
                row[g] = v
            else:
                del row[g]
    return rows


def homology(X: SimplicialSet, upto: int) -> HomologyProfile:
    """``H_0 .. H_upto`` over the integers."""
    X.require(upto + 1)
    factors = {}
    for n in range(1, upto + 2):
        if n <= X.dim and X.num_generators(n) and X.num_generators(n - 1):
            factors[n] = invariant_factors(boundary_rows(X, n))
        else:
            factors[n] = []
    groups = []
    for n in range(upto + 1):
        cn = X.num_generators(n) if n <= X.dim else 0
        rank_out = len(factors[n]) if n >= 1 else 0
        incoming = factors[n + 1]
        free = cn - rank_out - len(incoming)
        groups.append((free, tuple(d for d in incoming if d > 1)))
    return HomologyProfile(tuple(groups))
