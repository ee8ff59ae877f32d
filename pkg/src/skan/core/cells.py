"""Eilenberg-Zilber cells and the degeneracy-word calculus.

A cell ``s_{j1} s_{j2} ... s_{jk} b`` is stored with its word read outermost
first and strictly decreasing (``j1 > j2 > ... > jk``); every simplex of a
simplicial set has exactly one such representation.
"""
from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Sequence


class Cell(NamedTuple):
    word: tuple[int, ...]
    dim: int  # dimension of the base generator
    gen: int  # index of the base generator within its dimension

    @property
    def degree(self) -> int:
        return self.dim + len(self.word)

    @property
    def nondegenerate(self) -> bool:
        return not self.word


def push_degeneracy(j: int, word: Sequence[int]) -> tuple[int, ...]:
    """Normal form of ``s_j`` applied on the outside of a normal word."""
    out = []
    for k, w in enumerate(word):
        if j > w:
            return tuple(out) + (j,) + tuple(word[k:])
        # s_j s_w = s_{w+1} s_j for j <= w
        out.append(w + 1)
    return tuple(out) + (j,)


def apply_word(prefix: Sequence[int], word: Sequence[int]) -> tuple[int, ...]:
    """Normal form of ``s_prefix s_word`` (both read outermost first)."""
    w = tuple(word)
    for j in reversed(prefix):
        w = push_degeneracy(j, w)
    return w


def normal_word(word: Sequence[int]) -> tuple[int, ...]:
    """Normalize an arbitrary degeneracy word (outermost first)."""
    return apply_word(word, ())


def degenerate(cell: Cell, j: int) -> Cell:
    if not 0 <= j <= cell.degree:
        raise ValueError(f"s_{j} undefined in degree {cell.degree}")
    return Cell(push_degeneracy(j, cell.word), cell.dim, cell.gen)


def face_of(cell: Cell, i: int, faces) -> Cell:
    """``d_i`` of a cell; ``faces[dim][gen]`` lists the faces of generators."""
    if not 0 <= i <= cell.degree or cell.degree == 0:
        raise ValueError(f"d_{i} undefined in degree {cell.degree}")
    prefix: list[int] = []
    word = cell.word
    for k, j in enumerate(word):
        if i < j:
            prefix.append(j - 1)
        elif i == j or i == j + 1:
            return Cell(apply_word(prefix, word[k + 1:]), cell.dim, cell.gen)
        else:
            prefix.append(j)
            i -= 1
    base = faces[cell.dim][cell.gen][i]
    return Cell(apply_word(prefix, base.word), base.dim, base.gen)


def words(n: int, k: int):
    """All normal degeneracy words of length ``k`` landing in degree ``n``."""
    for combo in combinations(range(n - 1, -1, -1), k):
        yield combo


def surjection_word(seq: Sequence[int]) -> tuple[int, ...]:
    """Degeneracy word of the surjective part of a monotone sequence."""
    return tuple(sorted((j for j in range(len(seq) - 1) if seq[j] == seq[j + 1]),
                        reverse=True))

