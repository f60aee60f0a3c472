"""Finite posets stored as dense bitmask adjacency.

Element ``i`` is the ``i``-th identifier in input order; ``down[i]`` has bit
``j`` set iff ``j <= i`` and ``up[i]`` has bit ``j`` set iff ``i <= j``.
"""

from __future__ import annotations

import graphlib
import heapq
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleError,
    DuplicateElementError,
    NotAPosetError,
    UnknownElementError,
)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _index_elements(elements: Iterable[str]) -> tuple[tuple[str, ...], dict[str, int]]:
    elements = tuple(str(e) for e in elements)
    index: dict[str, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElementError(f"duplicate element identifier {e!r}")
        index[e] = i
    return elements, index


def _resolve_pairs(pairs, index, context) -> list[tuple[int, int]]:
    out = []
    for k, pair in enumerate(pairs):
        if len(pair) != 2:
            raise ValueError(f"{context} #{k}: expected a pair, got {pair!r}")
        x, y = pair
        for e in (x, y):
            if e not in index:
                raise UnknownElementError(e, f"{context} #{k}")
        out.append((index[x], index[y]))
    return out


class Poset:
    """An immutable finite poset over string identifiers."""

    __slots__ = ("elements", "index", "down", "up", "_linext")

    def __init__(self, elements: Sequence[str], down: Sequence[int]):
        # Trusted constructor: callers guarantee ``down`` is a partial order.
        self.elements, self.index = _index_elements(elements)
        n = len(self.elements)
        self.down = tuple(down)
        up = [0] * n
        for y in range(n):
            for x in bits(self.down[y]):
                up[x] |= 1 << y
        self.up = tuple(up)
        self._linext: tuple[int, ...] | None = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_covers(cls, elements: Iterable[str], pairs: Iterable[Sequence[str]]) -> Poset:
        """Reflexive-transitive closure of an acyclic relation.

        ``pairs`` need not be a transitive reduction; redundant pairs are
        absorbed by the closure.
        """
        elements, index = _index_elements(elements)
        edges = _resolve_pairs(pairs, index, "pair")
        preds: dict[int, set[int]] = {i: set() for i in range(len(elements))}
        for x, y in edges:
            if x == y:
                raise CycleError([elements[x], elements[x]])
            preds[y].add(x)
        sorter = graphlib.TopologicalSorter(preds)
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            # graphlib reports the cycle with predecessors first; flip to read as x < y.
            raise CycleError([elements[i] for i in reversed(exc.args[1])]) from None
        down = [1 << i for i in range(len(elements))]
        for y in order:
            for x in preds[y]:
                down[y] |= down[x]
        return cls(elements, down)

    @classmethod
    def from_leq(cls, elements: Iterable[str], pairs: Iterable[Sequence[str]]) -> Poset:
        """Build from an explicit order relation, validating every poset law.

        Reflexive pairs are added if absent; the relation is *not* closed, so
        a non-transitive or non-antisymmetric input raises NotAPosetError.
        """
        elements, index = _index_elements(elements)
        n = len(elements)
        down = [1 << i for i in range(n)]
        for x, y in _resolve_pairs(pairs, index, "pair"):
            down[y] |= 1 << x
        validate_order(elements, down)
        return cls(elements, down)

    # queries --------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.down == other.down

    def __hash__(self):
        return hash((self.elements, self.down))

    def __repr__(self):
        covers = ", ".join(f"{x}<{y}" for x, y in self.covers())
        return f"Poset([{', '.join(self.elements)}]; {covers})"

    def __getstate__(self):
        return (self.elements, self.down)

    def __setstate__(self, state):
        self.__init__(*state)

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElementError(x) from None

    def names(self, mask: int) -> list[str]:
        return [self.elements[i] for i in bits(mask)]

    def mask(self, xs: Iterable[str]) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.idx(x)
        return m

    def leq(self, x: str, y: str) -> bool:
        return bool(self.down[self.idx(y)] >> self.idx(x) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    @property
    def relation(self) -> frozenset[tuple[str, str]]:
        """The full order relation as a set of ``(x, y)`` pairs with ``x <= y``."""
        els = self.elements
        return frozenset((els[x], els[y]) for y in range(len(els)) for x in bits(self.down[y]))

    def strict_pairs(self) -> list[tuple[int, int]]:
        """Index pairs ``(x, y)`` with ``x < y``, sorted by linear-extension position."""
        pos = self.positions()
        out = [(x, y) for y in range(len(self)) for x in bits(self.down[y]) if x != y]
        out.sort(key=lambda p: (pos[p[0]], pos[p[1]]))
        return out

    def cover_indices(self) -> list[tuple[int, int]]:
        pos = self.positions()
        out = []
        for y in range(len(self)):
            for x in bits(self.down[y]):
                if x != y and self.down[y] & self.up[x] == (1 << x) | (1 << y):
                    out.append((x, y))
        out.sort(key=lambda p: (pos[p[0]], pos[p[1]]))
        return out

    def covers(self) -> list[tuple[str, str]]:
        """Transitive reduction of the strict order, in linear-extension order."""
        els = self.elements
        return [(els[x], els[y]) for x, y in self.cover_indices()]

    def down_set(self, x: str) -> frozenset[str]:
        return frozenset(self.names(self.down[self.idx(x)]))

    def up_set(self, x: str) -> frozenset[str]:
        return frozenset(self.names(self.up[self.idx(x)]))

    def meet_index(self, x: int, y: int) -> int | None:
        lower = self.down[x] & self.down[y]
        for m in bits(lower):
            if self.down[m] == lower:
                return m
        return None

    def meet(self, x: str, y: str) -> str | None:
        """Greatest lower bound of ``x`` and ``y``, or None when it does not exist."""
        m = self.meet_index(self.idx(x), self.idx(y))
        return None if m is None else self.elements[m]

    def top_index(self) -> int | None:
        full = (1 << len(self)) - 1
        for i, d in enumerate(self.down):
            if d == full:
                return i
        return None

    def minimal_indices(self) -> list[int]:
        return [i for i, d in enumerate(self.down) if d == 1 << i]

    def linear_extension_indices(self) -> tuple[int, ...]:
        if self._linext is None:
            n = len(self)
            indeg = [bin(self.down[i]).count("1") - 1 for i in range(n)]
            heap = [i for i in range(n) if indeg[i] == 0]
            heapq.heapify(heap)
            order = []
            while heap:
                x = heapq.heappop(heap)
                order.append(x)
                for y in bits(self.up[x] & ~(1 << x)):
                    indeg[y] -= 1
                    if indeg[y] == 0:
                        heapq.heappush(heap, y)
            self._linext = tuple(order)
        return self._linext

    def positions(self) -> list[int]:
        pos = [0] * len(self)
        for k, i in enumerate(self.linear_extension_indices()):
            pos[i] = k
        return pos

    def linear_extension(self) -> list[str]:
        """Topological order of the elements; ties go to the smaller input index."""
        return [self.elements[i] for i in self.linear_extension_indices()]

    def is_antichain(self) -> bool:
        return all(d == 1 << i for i, d in enumerate(self.down))


def validate_order(elements: Sequence[str], down: Sequence[int]) -> None:
    """Raise NotAPosetError unless ``down`` encodes a reflexive, antisymmetric, transitive relation."""
    n = len(elements)
    for y in range(n):
        if not down[y] >> y & 1:
            raise NotAPosetError("reflexive", (elements[y], elements[y]))
    for y in range(n):
        for x in bits(down[y]):
            if x != y and down[x] >> y & 1:
                raise NotAPosetError("antisymmetric", (elements[x], elements[y]))
            # z <= x <= y must give z <= y
            stray = down[x] & ~down[y]
            if stray:
                z = next(bits(stray))
                raise NotAPosetError("transitive", (elements[z], elements[x], elements[y]))


def check_poset(p: Poset) -> None:
    """Re-validate the poset laws of an already built poset."""
    validate_order(p.elements, p.down)
