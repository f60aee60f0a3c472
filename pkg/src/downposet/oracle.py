"""Brute-force oracles and generators for cross-checking the solver.

The oracles deliberately avoid the bitmask machinery: they test the axioms
on the explicit relation set, one pair at a time.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .actions import SemilatticeTable, SetModel, intersection_semilattice
from .downmaps import EndoMap
from .errors import SizeBoundError
from .poset import Poset

ORACLE_MAX_N = 8
ALL_POSETS_MAX_N = 5


def _naive_is_down(rel, els, f) -> bool:
    for c in els:
        if (f[c], c) not in rel:
            return False
    for c in els:
        for d in els:
            if (c, d) in rel and (f[c], f[d]) not in rel:
                return False
            if (c, f[d]) in rel and f[c] != c:
                return False
    return True


def oracle_down_functions(p: Poset) -> set[EndoMap]:
    """Every down-function of ``p`` by exhaustive filtering.

    Candidates are all endomaps with ``f(x) <= x`` (the decreasing filter
    applied coordinate-wise), then the remaining axioms are tested directly.
    """
    n = len(p)
    if n > ORACLE_MAX_N:
        raise SizeBoundError(f"oracle is limited to {ORACLE_MAX_N} elements, got {n}")
    els = p.elements
    rel = p.relation
    below = [[y for y in els if (y, x) in rel] for x in els]
    out = set()
    for values in itertools.product(*below):
        f = dict(zip(els, values))
        if _naive_is_down(rel, els, f):
            out.add(EndoMap.from_dict(p, f))
    return out


def oracle_recognize(p: Poset) -> bool:
    """True iff every strict pair ``c < d`` has some down-function sending ``d`` to ``c``."""
    maps = oracle_down_functions(p)
    reached = {(f(d), d) for f in maps for d in p.elements}
    return all(pair in reached for pair in p.relation)


def all_posets(n: int) -> Iterator[Poset]:
    """Every labelled poset on elements ``"0" .. str(n-1)``, each exactly once.

    Each unordered pair is assigned one of: incomparable, ``i < j``, ``j < i``.
    A triple is checked for transitivity as soon as its last pair is decided.
    """
    if n > ALL_POSETS_MAX_N:
        raise SizeBoundError(f"all_posets is limited to n <= {ALL_POSETS_MAX_N}")
    if n < 0:
        raise SizeBoundError("n must be non-negative")
    els = [str(i) for i in range(n)]
    pairs = list(itertools.combinations(range(n), 2))
    lt = [[False] * n for _ in range(n)]

    def triple_ok(a, b, c):
        for x, y, z in itertools.permutations((a, b, c)):
            if lt[x][y] and lt[y][z] and not lt[x][z]:
                return False
        return True

    def rec(k):
        if k == len(pairs):
            down = [1 << y for y in range(n)]
            for x in range(n):
                for y in range(n):
                    if lt[x][y]:
                        down[y] |= 1 << x
            yield Poset(els, down)
            return
        i, j = pairs[k]
        for choice in (0, 1, 2):
            lt[i][j] = choice == 1
            lt[j][i] = choice == 2
            # with lexicographic pair order, (i, j) completes exactly the triples {m, i, j}, m < i
            if all(triple_ok(m, i, j) for m in range(i)):
                yield from rec(k + 1)
        lt[i][j] = lt[j][i] = False

    yield from rec(0)


def random_poset(n: int, density: float, seed: int) -> Poset:
    """Random DAG on the order 0 < 1 < ... with edge probability ``density``, closed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    els = [str(i) for i in range(n)]
    edges = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Poset.from_covers(els, edges)


def _random_subsets(rng, ground, count):
    # iterate in a fixed order: set order of str depends on the hash seed
    members = sorted(ground, key=int)
    return [frozenset(x for x in members if rng.random() < 0.5) for _ in range(count)]


def _intersection_closure(family, ground):
    closed = {ground}
    frontier = set(family) - closed
    closed |= frontier
    while frontier:
        new = {a & b for a in frontier for b in closed} - closed
        closed |= new
        frontier = new
    return closed


def _order_subsets(subsets):
    return sorted(subsets, key=lambda s: (-len(s), sorted(int(x) for x in s)))


def random_set_model(n_sets: int, ground_size: int, seed: int) -> SetModel:
    """Random intersection model: acts are an intersection-closed family with the ground set,
    states are random subsets closed under intersection with every act."""
    if n_sets < 1 or ground_size < 1:
        raise ValueError("sizes must be at least 1")
    rng = random.Random(seed)
    ground = frozenset(str(i) for i in range(ground_size))
    acts = _intersection_closure(_random_subsets(rng, ground, n_sets), ground)
    seeds = _random_subsets(rng, ground, n_sets)
    # acts are closed under intersection, so one round closes the states
    states = {x & a for x in seeds for a in acts}
    return SetModel(
        ground,
        {f"c{k}": s for k, s in enumerate(_order_subsets(states))},
        {f"s{k}": s for k, s in enumerate(_order_subsets(acts))},
    )


def random_semilattice(n_sets: int, ground_size: int, seed: int) -> SemilatticeTable:
    """Intersection-closure of random subsets plus the ground set, as a table."""
    rng = random.Random(seed)
    ground = frozenset(str(i) for i in range(ground_size))
    acts = _intersection_closure(_random_subsets(rng, ground, n_sets), ground)
    return intersection_semilattice(
        {f"s{k}": s for k, s in enumerate(_order_subsets(acts))}, ground
    )
