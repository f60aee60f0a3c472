"""Complete backtracking search for down-functions pinned at one point.

One variable ``f(x)`` per element with initial domain ``down_set(x)``, so the
decreasing axiom holds by construction. The other two axioms are pruning
rules run to fixpoint after every assignment:

* fix-below-image: once ``D(y) = {w}``, every ``x <= w`` is forced to ``x``;
  conversely once ``x`` leaves ``D(x)``, nothing may map to anything above ``x``.
* monotone arc consistency over every comparable pair ``x < y``:
  ``monotone-up`` trims ``D(y)`` to values above some candidate of ``D(x)``,
  ``monotone-down`` trims ``D(x)`` to values below some candidate of ``D(y)``.

Fix-below-image events always drain before the next arc is revised, and arcs
are revised lowest-first in linear-extension order, so the root-level trace
reads as a forward argument.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

from .downmaps import EndoMap, is_down_image
from .errors import CapExceededError, PreconditionError
from .poset import Poset, bits

DEFAULT_ENUM_CAP = 100_000

RULES = ("seed", "fix-below-image", "monotone-up", "monotone-down", "branch", "conflict")


@dataclass(frozen=True)
class Step:
    rule: str
    element: str
    before: tuple[str, ...]
    after: tuple[str, ...]
    # what triggered the step: (y, w) for "f(y)=w", (x,) for "f(x)!=x", (x, y) for an arc
    cause: tuple[str, ...] = ()

    def as_dict(self):
        return {
            "rule": self.rule,
            "element": self.element,
            "before": list(self.before),
            "after": list(self.after),
            "cause": list(self.cause),
        }


@dataclass(frozen=True)
class Conflict:
    rule: str
    pair: tuple[str, str] | None
    detail: str

    def as_dict(self):
        return {"rule": self.rule, "pair": None if self.pair is None else list(self.pair), "detail": self.detail}


@dataclass(frozen=True)
class ConflictTrace:
    """Root-level forced steps followed by the terminal conflict."""

    steps: tuple[Step, ...]
    conflict: Conflict
    backtracks: int = 0

    def forced(self) -> dict[str, str]:
        """Elements whose domain a step left as a singleton, mapped to that value."""
        out = {}
        for s in self.steps:
            if s.rule != "conflict" and len(s.after) == 1:
                out[s.element] = s.after[0]
        return out

    def replay(self, p: Poset) -> bool:
        """Re-apply every step from the initial down-set domains, checking each recorded ``before``."""
        doms = {x: tuple(p.names(p.down[p.idx(x)])) for x in p.elements}
        for s in self.steps:
            if doms.get(s.element) != s.before:
                return False
            doms[s.element] = s.after
        return True

    def as_dict(self):
        return {
            "steps": [s.as_dict() for s in self.steps],
            "conflict": self.conflict.as_dict(),
            "backtracks": self.backtracks,
        }


@dataclass
class SearchStats:
    branches: int = 0
    backtracks: int = 0
    revisions: int = 0

    def as_dict(self):
        return {"branches": self.branches, "backtracks": self.backtracks, "revisions": self.revisions}


@dataclass(frozen=True)
class SolveOutcome:
    """Either a witness map (sat) or a refutation trace (unsat)."""

    pin: tuple[str, str]  # (d, c): looking for f(d) = c
    map: EndoMap | None
    trace: ConflictTrace | None
    stats: SearchStats = field(default_factory=SearchStats, compare=False)

    @property
    def sat(self) -> bool:
        return self.map is not None


class _Wipeout(Exception):
    def __init__(self, conflict: Conflict, step: Step | None):
        self.conflict = conflict
        self.step = step


class _Engine:
    def __init__(self, p: Poset):
        self.p = p
        self.n = len(p)
        self.down = p.down
        self.up = p.up
        self.pos = p.positions()
        self.arcs = p.strict_pairs()
        self.arcs_of: list[list[int]] = [[] for _ in range(self.n)]
        for k, (x, y) in enumerate(self.arcs):
            self.arcs_of[x].append(k)
            self.arcs_of[y].append(k)
        self.stats = SearchStats()

    # helpers ---------------------------------------------------------------

    def _names(self, mask):
        return tuple(self.p.names(mask))

    def _down_closure(self, mask):
        r = 0
        for w in bits(mask):
            r |= self.down[w]
        return r

    def _up_closure(self, mask):
        r = 0
        for w in bits(mask):
            r |= self.up[w]
        return r

    # propagation -----------------------------------------------------------

    def propagate(self, doms: list[int], state: list[int], changed, log: list | None):
        """Run all rules to fixpoint, mutating ``doms`` in place.

        ``state`` is ``[fixed, p2_done, p3_done]`` bitmasks carried across calls.
        Raises _Wipeout on an empty domain.
        """
        els = self.p.elements
        down, up = self.down, self.up
        fixq: deque[int] = deque()
        heap: list[int] = []
        dirty = [False] * len(self.arcs)
        names = self._names

        def touch(z):
            d = doms[z]
            if d & (d - 1) == 0 and not state[1] >> z & 1:
                fixq.append(z)
            elif not d >> z & 1 and not state[2] >> z & 1:
                fixq.append(z)
            for k in self.arcs_of[z]:
                if not dirty[k]:
                    dirty[k] = True
                    heapq.heappush(heap, k)

        def assign(z, new, rule, cause, pair):
            old = doms[z]
            if new == 0:
                step = None
                if log is not None:
                    step = Step("conflict", els[z], names(old), (), cause)
                raise _Wipeout(
                    Conflict(rule, pair, f"no candidate left for f({els[z]}) under {rule}"), step
                )
            if log is not None:
                log.append(Step(rule, els[z], names(old), names(new), cause))
            doms[z] = new
            touch(z)

        for z in changed:
            touch(z)

        while True:
            if fixq:
                z = fixq.popleft()
                d = doms[z]
                if d & (d - 1) == 0 and not state[1] >> z & 1:
                    state[1] |= 1 << z
                    w = d.bit_length() - 1
                    cause = (els[z], els[w])
                    for x in bits(down[w] & ~state[0]):
                        state[0] |= 1 << x
                        if doms[x] >> x & 1:
                            if doms[x] != 1 << x:
                                assign(x, 1 << x, "fix-below-image", cause, (els[x], els[z]))
                            elif log is not None:
                                log.append(Step("fix-below-image", els[x], (els[x],), (els[x],), cause))
                        else:
                            assign(x, 0, "fix-below-image", cause, (els[x], els[z]))
                    d = doms[z]
                if not d >> z & 1 and not state[2] >> z & 1:
                    state[2] |= 1 << z
                    above = up[z]
                    for y in range(self.n):
                        if doms[y] & above:
                            assign(y, doms[y] & ~above, "fix-below-image", (els[z],), (els[z], els[y]))
                continue
            if not heap:
                return
            k = heapq.heappop(heap)
            dirty[k] = False
            x, y = self.arcs[k]
            self.stats.revisions += 1
            new_y = doms[y] & self._up_closure(doms[x])
            if new_y != doms[y]:
                assign(y, new_y, "monotone-up", (els[x], els[y]), (els[x], els[y]))
                if fixq:
                    # let fix-below-image drain first; the arc is re-queued by touch()
                    continue
            new_x = doms[x] & self._down_closure(doms[y])
            if new_x != doms[x]:
                assign(x, new_x, "monotone-down", (els[x], els[y]), (els[x], els[y]))

    # search ----------------------------------------------------------------

    def _choose(self, doms):
        best = None
        for x in self.p.linear_extension_indices():
            d = doms[x]
            if d & (d - 1):
                size = bin(d).count("1")
                if best is None or size < best[0]:
                    best = (size, x)
        return None if best is None else best[1]

    def _values(self, x, dom):
        rest = sorted((v for v in bits(dom) if v != x), key=lambda v: -self.pos[v])
        return ([x] if dom >> x & 1 else []) + rest

    def _image(self, doms):
        img = tuple(d.bit_length() - 1 for d in doms)
        if not is_down_image(self.p, img):
            raise AssertionError(f"search produced a non-down-function {img}")
        return img

    def search(self, doms, state, on_solution):
        """Depth-first search below a propagated node; ``on_solution`` returns True to stop."""
        x = self._choose(doms)
        if x is None:
            return on_solution(self._image(doms))
        self.stats.branches += 1
        for v in self._values(x, doms[x]):
            child = list(doms)
            cstate = list(state)
            child[x] = 1 << v
            try:
                self.propagate(child, cstate, [x], None)
            except _Wipeout:
                self.stats.backtracks += 1
                continue
            if self.search(child, cstate, on_solution):
                return True
            self.stats.backtracks += 1
        return False

    def root(self, pin: tuple[int, int] | None, log):
        doms = list(self.down)
        # a minimal element's own singleton fixes nothing but itself
        minimal = 0
        for i in self.p.minimal_indices():
            minimal |= 1 << i
        state = [0, minimal, 0]
        changed = []
        if pin is not None:
            d, c = pin
            if log is not None:
                log.append(
                    Step("seed", self.p.elements[d], self._names(doms[d]), (self.p.elements[c],),
                         (self.p.elements[d], self.p.elements[c]))
                )
            doms[d] = 1 << c
            changed.append(d)
        changed.extend(i for i in self.p.linear_extension_indices() if i not in changed)
        self.propagate(doms, state, changed, log)
        return doms, state


def solve_pinned(p: Poset, d: str, c: str) -> SolveOutcome:
    """Find a down-function with ``f(d) = c``, or prove that none exists.

    Requires ``c <= d``.
    """
    di, ci = p.idx(d), p.idx(c)
    if not p.down[di] >> ci & 1:
        raise PreconditionError(f"pin requires {c!r} <= {d!r}")
    eng = _Engine(p)
    log: list[Step] = []
    try:
        doms, state = eng.root((di, ci), log)
    except _Wipeout as w:
        if w.step is not None:
            log.append(w.step)
        trace = ConflictTrace(tuple(log), w.conflict, 0)
        return SolveOutcome((d, c), None, trace, eng.stats)
    found = []

    def keep(img):
        found.append(img)
        return True

    if eng.search(doms, state, keep):
        return SolveOutcome((d, c), EndoMap(p.elements, found[0]), None, eng.stats)
    x = eng._choose(doms)
    conflict = Conflict(
        "exhausted",
        None,
        f"root propagation left choices; every branch on f({p.elements[x]}) failed "
        f"after {eng.stats.backtracks} backtracks",
    )
    return SolveOutcome((d, c), None, ConflictTrace(tuple(log), conflict, eng.stats.backtracks), eng.stats)


def enumerate_down_functions(p: Poset, cap: int = DEFAULT_ENUM_CAP) -> list[EndoMap]:
    """All down-functions of ``p``, in deterministic search order."""
    eng = _Engine(p)
    doms, state = eng.root(None, None)  # identity always survives, so no wipeout here
    out: list[EndoMap] = []

    def collect(img):
        if len(out) >= cap:
            raise CapExceededError(cap, len(out))
        out.append(EndoMap(p.elements, img))
        return False

    eng.search(doms, state, collect)
    return out
