"""Finite simplicial sets in Eilenberg-Zilber normal form."""
from __future__ import annotations

from typing import Hashable, Sequence

from ..errors import (DanglingFace, InsufficientDimensionBound, InvalidArgument,
                      SimplicialIdentityViolation)
from .cells import Cell, degenerate, face_of, surjection_word, words


def compact(key) -> str:
    """Whitespace-free name for a construction key."""
    if isinstance(key, tuple):
        return "(" + ",".join(compact(k) for k in key) + ")"
    return str(key)


class SimplicialSet:
    """A simplicial set given by nondegenerate generators and their faces.

    ``bound`` is ``None`` for a complete finite object. Otherwise the data is
    exact only through level ``bound`` and reading a higher level raises
    :class:`InsufficientDimensionBound`. ``coskeletal_above`` records that
    the object is the ``n``-coskeleton of its ``n``-skeleton, so it can be
    extended on demand (see :func:`skan.core.constructions.extend_coskeletal`).
    """

    def __init__(self, names: Sequence[Sequence[str]], faces, *, bound: int | None = None,
                 coskeletal_above: int | None = None, label: str = "", validate: bool = True):
        names = [tuple(level) for level in names]
        faces = [tuple(tuple(f) for f in level) for level in faces]
        while names and not names[-1]:
            names.pop()
            faces.pop()
        self.names: tuple[tuple[str, ...], ...] = tuple(names)
        self.faces: tuple = tuple(faces)
        self.bound = bound
        self.coskeletal_above = coskeletal_above
        self.label = label
        self._levels: dict[int, tuple[Cell, ...]] = {}
        self._index: dict[int, dict[Cell, int]] = {}
        self._face_tables: dict[int, list[tuple[int, ...]]] = {}
        self._degen_tables: dict[int, list[tuple[int, ...]]] = {}
        self._name_index: dict[int, dict[str, int]] = {}
        self._keys: dict[int, list[Hashable]] = {}
        self._key_index: dict[int, dict[Hashable, int]] = {}
        self._key_ops = None
        if validate:
            self.validate()

    # -- structure -----------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.names) - 1

    @property
    def top(self) -> int:
        """Highest level that carries exact information about generators."""
        return self.dim if self.bound is None else self.bound

    def is_empty(self) -> bool:
        return not self.names or not self.names[0]

    def num_generators(self, d: int) -> int:
        return len(self.names[d]) if 0 <= d < len(self.names) else 0

    def generator(self, d: int, name: str) -> Cell:
        if d not in self._name_index:
            self._name_index[d] = {n: i for i, n in enumerate(self.names[d])} if d <= self.dim else {}
        try:
            return Cell((), d, self._name_index[d][name])
        except KeyError:
            raise KeyError(f"no generator {name!r} in dimension {d}") from None

    def generators(self):
        for d, level in enumerate(self.names):
            for g in range(len(level)):
                yield Cell((), d, g)

    def vertices(self) -> tuple[Cell, ...]:
        return tuple(Cell((), 0, g) for g in range(self.num_generators(0)))

    def validate(self) -> None:
        if self.bound is not None and self.dim > self.bound:
            raise InvalidArgument(f"generators in dimension {self.dim} exceed bound {self.bound}")
        if self.faces and any(self.faces[0][g] for g in range(len(self.names[0]))):
            raise DanglingFace("vertices carry no faces")
        for d, level in enumerate(self.names):
            if len(set(level)) != len(level):
                raise InvalidArgument(f"duplicate generator names in dimension {d}")
            if len(self.faces[d]) != len(level):
                raise InvalidArgument(f"face data missing in dimension {d}")
            if d == 0:
                continue
            for g, fs in enumerate(self.faces[d]):
                if len(fs) != d + 1:
                    raise DanglingFace(f"generator {level[g]!r} needs {d + 1} faces")
                for i, c in enumerate(fs):
                    self._check_cell(c, d - 1, f"d{i} {level[g]}")
        for d in range(2, len(self.names)):
            for g in range(len(self.names[d])):
                fs = self.faces[d][g]
                for j in range(d + 1):
                    for i in range(j):
                        lhs = face_of(fs[j], i, self.faces)
                        rhs = face_of(fs[i], j - 1, self.faces)
                        if lhs != rhs:
                            name = self.names[d][g]
                            raise SimplicialIdentityViolation(
                                f"d{i} d{j} {name} = {self.cell_str(lhs)} but "
                                f"d{j - 1} d{i} {name} = {self.cell_str(rhs)}",
                                generator=name, identity=f"d{i}d{j}=d{j - 1}d{i}")

    def _check_cell(self, c: Cell, degree: int, where: str) -> None:
        if not isinstance(c, Cell) or c.degree != degree:
            raise DanglingFace(f"{where}: face must be a cell of degree {degree}")
        if c.dim > self.dim or c.gen >= len(self.names[c.dim]) or c.gen < 0:
            raise DanglingFace(f"{where}: references a missing generator")
        w = c.word
        if any(w[k] <= w[k + 1] for k in range(len(w) - 1)) or (w and w[-1] < 0):
            raise DanglingFace(f"{where}: degeneracy word not in normal form")
        for t, j in enumerate(w):
            if j > degree - 1 - t:
                raise DanglingFace(f"{where}: degeneracy index out of range")

    # -- levels ----------------------------------------------------------------------
    def available(self, n: int) -> bool:
        return self.bound is None or n <= self.bound

    def require(self, n: int) -> None:
        if not self.available(n):
            raise InsufficientDimensionBound(
                f"level {n} requested from {self.label or 'a simplicial set'} "
                f"exact only through level {self.bound}")

    def simplices(self, n: int) -> tuple[Cell, ...]:
        if n < 0:
            return ()
        cached = self._levels.get(n)
        if cached is not None:
            return cached
        self.require(n)
        cells = []
        for m in range(min(n, self.dim), -1, -1):
            count = len(self.names[m])
            for w in words(n, n - m):
                cells.extend(Cell(w, m, g) for g in range(count))
        level = tuple(cells)
        self._levels[n] = level
        return level

    def size(self, n: int) -> int:
        return len(self.simplices(n))

    def index(self, n: int) -> dict[Cell, int]:
        idx = self._index.get(n)
        if idx is None:
            idx = {c: i for i, c in enumerate(self.simplices(n))}
            self._index[n] = idx
        return idx

    def face(self, cell: Cell, i: int) -> Cell:
        return face_of(cell, i, self.faces)

    def degeneracy(self, cell: Cell, j: int) -> Cell:
        return degenerate(cell, j)

    def face_table(self, n: int) -> list[tuple[int, ...]]:
        """``table[x][i]`` is the index of ``d_i x`` in level ``n - 1``."""
        table = self._face_tables.get(n)
        if table is None:
            below = self.index(n - 1)
            table = [tuple(below[face_of(c, i, self.faces)] for i in range(n + 1))
                     for c in self.simplices(n)]
            self._face_tables[n] = table
        return table

    def degen_table(self, n: int) -> list[tuple[int, ...]]:
        """``table[x][j]`` is the index of ``s_j x`` in level ``n + 1``."""
        table = self._degen_tables.get(n)
        if table is None:
            above = self.index(n + 1)
            table = [tuple(above[degenerate(c, j)] for j in range(n + 1))
                     for c in self.simplices(n)]
            self._degen_tables[n] = table
        return table

    def apply_word_index(self, n: int, idx: int, word: Sequence[int]) -> int:
        """Index of ``s_word x`` where ``x`` is simplex ``idx`` of level ``n``."""
        for j in reversed(word):
            idx = self.degen_table(n)[idx][j]
            n += 1
        return idx

    def restrict(self, n: int, idx: int, verts) -> int:
        """Index of the face of simplex ``idx`` spanned by the vertex positions ``verts``."""
        keep = set(verts)
        for i in range(n, -1, -1):
            if i not in keep:
                idx = self.face_table(n)[idx][i]
                n -= 1
        return idx

    def act(self, n: int, idx: int, theta: Sequence[int]) -> int:
        """Index of ``X(theta)(x)`` for a monotone ``theta: [m] -> [n]``."""
        idx = self.restrict(n, idx, theta)
        word = surjection_word(theta)
        return self.apply_word_index(len(set(theta)) - 1, idx, word) if word else idx

    # -- names ---------------------------------------------------------------------
    def cell_str(self, cell: Cell) -> str:
        base = self.names[cell.dim][cell.gen]
        return " ".join([f"s{j}" for j in cell.word] + [base])

    def simplex_name(self, n: int, idx: int) -> str:
        return self.cell_str(self.simplices(n)[idx])

    def token(self, n: int, idx: int) -> str:
        """Whitespace-free name of a simplex, used when naming derived keys."""
        c = self.simplices(n)[idx]
        return ".".join([f"s{j}" for j in c.word] + [self.names[c.dim][c.gen]])

    # -- construction keys ---------------------------------------------------------
    def key(self, n: int, idx: int):
        keys = self._keys.get(n)
        if keys is not None:
            return keys[idx]
        c = self.simplices(n)[idx]
        if self._key_ops is None or c.dim not in self._keys:
            raise InsufficientDimensionBound(f"no construction keys stored for level {n}")
        face, degen = self._key_ops
        k, m = self._keys[c.dim][c.gen], c.dim
        for j in reversed(c.word):
            k = degen(m, j, k)
            m += 1
        return k

    def keys(self, n: int) -> list:
        if n not in self._keys:
            if self._key_ops is None or not self._keys:
                raise InsufficientDimensionBound(f"no construction keys stored for level {n}")
            return [self.key(n, i) for i in range(self.size(n))]
        return self._keys[n]

    def locate(self, n: int, key) -> int:
        table = self._key_index.get(n)
        if table is not None:
            return table[key]
        if self._key_ops is None:
            raise InsufficientDimensionBound(f"no construction keys stored for level {n}")
        face, degen = self._key_ops
        for i in range(n - 1, -1, -1):
            y = face(n, i, key)
            if degen(n - 1, i, y) == key:
                return self.degen_table(n - 1)[self.locate(n - 1, y)][i]
        raise KeyError(f"{key!r} is not a simplex of level {n}")

    def has_keys(self, n: int) -> bool:
        return n in self._keys

    def attach_keys(self, n: int, keys: list) -> None:
        self._keys[n] = keys
        self._key_index[n] = {k: i for i, k in enumerate(keys)}

    def attach_key_ops(self, face, degen) -> None:
        """Key-level operators, used to name simplices above the stored levels."""
        self._key_ops = (face, degen)

    # -- comparisons -----------------------------------------------------------------
    def _signature(self):
        return (self.names, self.faces, self.bound, self.coskeletal_above)

    def __eq__(self, other):
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def counts(self, upto: int | None = None) -> list[int]:
        top = self.top if upto is None else upto
        return [self.size(n) for n in range(top + 1)]

    def generator_counts(self) -> list[int]:
        return [len(level) for level in self.names]

    def __repr__(self):
        b = "" if self.bound is None else f", bound={self.bound}"
        lab = f"{self.label!r}, " if self.label else ""
        return f"SimplicialSet({lab}generators={self.generator_counts()}{b})"
