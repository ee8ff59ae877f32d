"""Finite groups given by elements and a multiplication rule."""
from __future__ import annotations

from itertools import permutations, product as cartesian
from typing import Callable, Hashable, Sequence

from ..errors import InvalidGroup

FULL_CHECK_LIMIT = 64  # groups up to this order get a complete axiom check


class FinGroup:
    """A finite group on hashable element keys.

    Products are computed by ``op`` on keys and memoized as indices. Index 0
    is not special; ``e`` is the identity index.
    """

    def __init__(self, keys: Sequence[Hashable], op: Callable, identity: Hashable,
                 *, names: Sequence[str] | None = None, label: str = "",
                 abelian: bool | None = None, check: bool = True):
        self.keys = list(keys)
        self._index = {k: i for i, k in enumerate(self.keys)}
        if len(self._index) != len(self.keys):
            raise InvalidGroup("duplicate group elements")
        if identity not in self._index:
            raise InvalidGroup("identity is not an element")
        self._op = op
        self.e = self._index[identity]
        self.names = list(names) if names is not None else [_name(k) for k in self.keys]
        self.label = label
        self._abelian = abelian
        self._mul: dict[tuple[int, int], int] = {}
        self._inv: dict[int, int] = {}
        if check:
            self.check()

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], *, names=None, label="", check=True):
        n = len(table)
        e = next((i for i in range(n) if list(table[i]) == list(range(n))), None)
        if e is None:
            raise InvalidGroup("table has no identity row")
        return cls(range(n), lambda a, b: table[a][b], e, names=names, label=label, check=check)

    def __len__(self):
        return len(self.keys)

    @property
    def order(self) -> int:
        return len(self.keys)

    def index(self, key) -> int:
        try:
            return self._index[key]
        except KeyError:
            raise InvalidGroup(f"{key!r} is not an element of {self.label or 'the group'}") from None

    def key(self, i: int):
        return self.keys[i]

    def mul(self, a: int, b: int) -> int:
        got = self._mul.get((a, b))
        if got is None:
            k = self._op(self.keys[a], self.keys[b])
            if k not in self._index:
                raise InvalidGroup(f"product {k!r} is not an element")
            got = self._index[k]
            self._mul[(a, b)] = got
        return got

    def inv(self, a: int) -> int:
        got = self._inv.get(a)
        if got is None:
            got = next((b for b in range(len(self)) if self.mul(a, b) == self.e), None)
            if got is None:
                raise InvalidGroup(f"{self.names[a]} has no inverse")
            self._inv[a] = got
            self._inv[got] = a
        return got

    def mul_keys(self, a, b):
        return self._op(a, b)

    def power(self, a: int, k: int) -> int:
        out = self.e
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def is_abelian(self) -> bool:
        if self._abelian is None:
            n = len(self)
            self._abelian = all(self.mul(a, b) == self.mul(b, a)
                                for a in range(n) for b in range(a + 1, n))
        return self._abelian

    def conjugacy_classes(self) -> list[list[int]]:
        seen = set()
        out = []
        for a in range(len(self)):
            if a in seen:
                continue
            cls = sorted({self.mul(self.mul(g, a), self.inv(g)) for g in range(len(self))})
            seen.update(cls)
            out.append(cls)
        return out

    def check(self) -> None:
        """Group axioms: complete for small groups, otherwise closure and identity
        on all elements with associativity on a deterministic sample."""
        n = len(self)
        for a in range(n):
            if self.mul(self.e, a) != a or self.mul(a, self.e) != a:
                raise InvalidGroup("identity law fails")
            self.inv(a)
        if n <= FULL_CHECK_LIMIT:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            step = max(1, n // 16)
            sample = range(0, n, step)
            triples = ((a, b, c) for a in sample for b in sample for c in sample)
        for a, b, c in triples:
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise InvalidGroup("multiplication is not associative")

    def table(self) -> list[list[int]]:
        n = len(self)
        return [[self.mul(a, b) for b in range(n)] for a in range(n)]

    def __repr__(self):
        return f"FinGroup({self.label or '?'}, order={len(self)})"


def _name(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(_name(x) for x in k) + ")"
    return str(k)


def cyclic(n: int) -> FinGroup:
    if n < 1:
        raise InvalidGroup("cyclic groups need positive order")
    return FinGroup(range(n), lambda a, b: (a + b) % n, 0, label=f"Z/{n}", abelian=True)


def trivial_group() -> FinGroup:
    return cyclic(1)


def symmetric(n: int) -> FinGroup:
    """Permutations of ``0..n-1`` as tuples; ``(p*q)(i) = p(q(i))``."""
    perms = sorted(permutations(range(n)))
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return FinGroup(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), tuple(range(n)),
                    names=names, label=f"S{n}")


def direct_product(groups: Sequence[FinGroup], label: str = "") -> FinGroup:
    """Product on tuples of element indices."""
    groups = list(groups)
    keys = list(cartesian(*[range(len(g)) for g in groups]))

    def op(a, b):
        return tuple(g.mul(x, y) for g, x, y in zip(groups, a, b))
    names = ["(" + ",".join(g.names[x] for g, x in zip(groups, k)) + ")" for k in keys]
    abelian = all(g.is_abelian() for g in groups) if len(keys) <= 4096 else None
    return FinGroup(keys, op, tuple(g.e for g in groups), names=names,
                    label=label or "x".join(g.label for g in groups), abelian=abelian,
                    check=False)


def named_group(text: str) -> FinGroup:
    """``"Z/n"``, ``"S3"`` or ``"trivial"``."""
    t = text.strip().replace(" ", "")
    if t in ("1", "trivial"):
        return trivial_group()
    if t.startswith("Z/"):
        return cyclic(int(t[2:]))
    if t.startswith("S") and t[1:].isdigit():
        return symmetric(int(t[1:]))
    raise InvalidGroup(f"unknown group {text!r}")
