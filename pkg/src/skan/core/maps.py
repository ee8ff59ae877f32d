"""Simplicial maps stored by the images of generators."""
from __future__ import annotations

from typing import Callable

from ..errors import InvalidMap
from .cells import Cell
from .sset import SimplicialSet


class SimplicialMap:
    """A map determined by where each nondegenerate simplex goes.

    ``images[d][g]`` is the index, in ``target.simplices(d)``, of the image of
    generator ``g`` of dimension ``d``. Images of degenerate simplices follow
    from the degeneracy word.
    """

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images,
                 *, validate: bool = True, label: str = ""):
        self.source = source
        self.target = target
        self.label = label
        imgs = []
        for d, level in enumerate(images):
            row = []
            for v in level:
                if isinstance(v, Cell):
                    if v.degree != d:
                        raise InvalidMap(f"image of a {d}-simplex has degree {v.degree}")
                    v = target.index(d)[v]
                row.append(int(v))
            imgs.append(tuple(row))
        while len(imgs) < len(source.names):
            imgs.append(())
        self.images: tuple[tuple[int, ...], ...] = tuple(imgs)
        self._levels: dict[int, list[int]] = {}
        if validate:
            self.validate()

    @classmethod
    def from_keys(cls, source: SimplicialSet, target: SimplicialSet,
                  fn: Callable[[int, object], object], **kw) -> "SimplicialMap":
        """Build from a function on construction keys of generators."""
        images = []
        for d in range(source.dim + 1):
            images.append([target.locate(d, fn(d, source.key(d, g)))
                           for g in range(source.num_generators(d))])
        return cls(source, target, images, **kw)

    @classmethod
    def from_indices(cls, source: SimplicialSet, target: SimplicialSet,
                     fn: Callable[[int, int], int], **kw) -> "SimplicialMap":
        """Build from a function on simplex indices (only generators are queried)."""
        images = [[fn(d, g) for g in range(source.num_generators(d))]
                  for d in range(source.dim + 1)]
        return cls(source, target, images, **kw)

    def validate(self) -> None:
        src, tgt = self.source, self.target
        for d, level in enumerate(self.images):
            if len(level) != src.num_generators(d):
                raise InvalidMap(f"wrong number of images in dimension {d}")
            if level:
                tgt.require(d)
                size = tgt.size(d)
                if any(not 0 <= v < size for v in level):
                    raise InvalidMap(f"image index out of range in dimension {d}")
        for d in range(1, len(self.images)):
            if not self.images[d]:
                continue
            below = self.level(d - 1)
            ft = tgt.face_table(d)
            sft = src.face_table(d)
            for g, v in enumerate(self.images[d]):
                for i in range(d + 1):
                    if ft[v][i] != below[sft[g][i]]:
                        raise InvalidMap(
                            f"d{i} does not commute with the map on generator "
                            f"{src.names[d][g]!r}")

    def level(self, n: int) -> list[int]:
        """Image indices for every simplex of ``source`` at level ``n``."""
        cached = self._levels.get(n)
        if cached is not None:
            return cached
        self.target.require(n)
        tgt = self.target
        out = []
        for c in self.source.simplices(n):
            v = self.images[c.dim][c.gen]
            out.append(tgt.apply_word_index(c.dim, v, c.word) if c.word else v)
        self._levels[n] = out
        return out

    def __call__(self, cell: Cell) -> Cell:
        n = cell.degree
        return self.target.simplices(n)[self.level(n)[self.source.index(n)[cell]]]

    def image_cell(self, d: int, g: int) -> Cell:
        return self.target.simplices(d)[self.images[d][g]]

    def after(self, other: "SimplicialMap") -> "SimplicialMap":
        """The composite ``self ∘ other``."""
        if other.target is not self.source and other.target != self.source:
            raise InvalidMap("maps are not composable")
        images = [[self.level(d)[v] for v in level] for d, level in enumerate(other.images)]
        return SimplicialMap(other.source, self.target, images, validate=False)

    def is_iso(self) -> bool:
        src, tgt = self.source, self.target
        if src.generator_counts() != tgt.generator_counts() or src.bound != tgt.bound:
            return False
        for d, level in enumerate(self.images):
            if sorted(level) != list(range(tgt.num_generators(d))):
                return False
        return True

    def inverse(self) -> "SimplicialMap":
        if not self.is_iso():
            raise InvalidMap("map is not an isomorphism")
        images = []
        for level in self.images:
            inv = [0] * len(level)
            for g, v in enumerate(level):
                inv[v] = g
            images.append(inv)
        return SimplicialMap(self.target, self.source, images, validate=False)

    def injective(self, upto: int) -> bool:
        return all(len(set(self.level(n))) == self.source.size(n) for n in range(upto + 1))

    def surjective(self, upto: int) -> bool:
        return all(len(set(self.level(n))) == self.target.size(n) for n in range(upto + 1))

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.images == other.images and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        lab = f" {self.label!r}" if self.label else ""
        return f"SimplicialMap{lab}({self.source!r} -> {self.target!r})"


def identity(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, [list(range(X.num_generators(d))) for d in range(X.dim + 1)],
                         validate=False, label="id")


def constant(X: SimplicialSet, Y: SimplicialSet, vertex: int) -> SimplicialMap:
    """The map collapsing ``X`` onto a vertex of ``Y``."""
    images = []
    for d in range(X.dim + 1):
        v = Y.apply_word_index(0, vertex, tuple(range(d - 1, -1, -1)))
        images.append([v] * X.num_generators(d))
    return SimplicialMap(X, Y, images, validate=False)


def agree(f: SimplicialMap, g: SimplicialMap, upto: int) -> bool:
    return all(f.level(n) == g.level(n) for n in range(upto + 1))

