"""Semilattice-with-identity tables, their actions, and set-intersection models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .downmaps import CheckReport, Violation, closure_under_composition, fix_mask, DEFAULT_CLOSURE_CAP
from .errors import ActionError
from .poset import Poset, bits


@dataclass(frozen=True)
class SemilatticeTable:
    elements: tuple[str, ...]
    op: Mapping[tuple[str, str], str]
    identity: str

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise ActionError("duplicate semilattice element")
        if self.identity not in known:
            raise ActionError(f"identity {self.identity!r} is not an element")
        for s in self.elements:
            for t in self.elements:
                v = self.op.get((s, t))
                if v is None:
                    raise ActionError(f"product table has no entry for ({s}, {t})", (s, t))
                if v not in known:
                    raise ActionError(f"product ({s}, {t}) = {v!r} is not an element", (s, t))

    def __call__(self, s: str, t: str) -> str:
        return self.op[s, t]


@dataclass(frozen=True)
class ActionTable:
    """A right action ``C x S -> C``; ``act[c, s]`` is written ``cs``."""

    states: tuple[str, ...]
    semilattice: SemilatticeTable
    act: Mapping[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        known = set(self.states)
        if len(known) != len(self.states):
            raise ActionError("duplicate state")
        for c in self.states:
            for s in self.semilattice.elements:
                v = self.act.get((c, s))
                if v is None:
                    raise ActionError(f"action table has no entry for ({c}, {s})", (c, s))
                if v not in known:
                    raise ActionError(f"action ({c}, {s}) = {v!r} is not a state", (c, s))

    def __call__(self, c: str, s: str) -> str:
        return self.act[c, s]


@dataclass(frozen=True)
class SetModel:
    ground: frozenset
    states: Mapping[str, frozenset]
    acts: Mapping[str, frozenset]

    def validate(self) -> None:
        """Raise ActionError naming the first broken closure condition."""
        for name, sub in list(self.states.items()) + list(self.acts.items()):
            if not sub <= self.ground:
                raise ActionError(f"{name!r} is not a subset of the ground set", (name,))
        by_state = {}
        for name, sub in self.states.items():
            if sub in by_state:
                raise ActionError(f"states {by_state[sub]!r} and {name!r} are the same subset",
                                  (by_state[sub], name))
            by_state[sub] = name
        act_sets = set(self.acts.values())
        if self.ground not in act_sets:
            raise ActionError("acts do not contain the ground set")
        for a, sa in self.acts.items():
            for b, sb in self.acts.items():
                if sa & sb not in act_sets:
                    raise ActionError(f"acts {a!r} and {b!r} do not intersect to an act", (a, b))
        for x, sx in self.states.items():
            for a, sa in self.acts.items():
                if sx & sa not in by_state:
                    raise ActionError(f"state {x!r} meet act {a!r} is not a state", (x, a))


def validate_semilattice(t: SemilatticeTable) -> CheckReport:
    els, op = t.elements, t.op
    out = []
    for s in els:
        if op[s, s] != s:
            out.append(Violation("idempotent", (s,)))
        if op[t.identity, s] != s:
            out.append(Violation("identity", (s,)))
    for i, s in enumerate(els):
        for u in els[i + 1:]:
            if op[s, u] != op[u, s]:
                out.append(Violation("commutative", (s, u)))
    for s in els:
        for u in els:
            su = op[s, u]
            for v in els:
                if op[su, v] != op[s, op[u, v]]:
                    out.append(Violation("associative", (s, u, v)))
    return CheckReport(tuple(out))


def validate_action(a: ActionTable) -> CheckReport:
    sl = a.semilattice
    out = list(validate_semilattice(sl).violations)
    for c in a.states:
        if a.act[c, sl.identity] != c:
            out.append(Violation("action-identity", (c,)))
        for s in sl.elements:
            cs = a.act[c, s]
            for t in sl.elements:
                if a.act[c, sl.op[s, t]] != a.act[cs, t]:
                    out.append(Violation("action-compatible", (c, s, t)))
    return CheckReport(tuple(out))


def induced_order(a: ActionTable) -> Poset:
    """``c <= d`` iff ``ds = c`` for some act ``s``."""
    report = validate_action(a)
    if not report:
        raise ActionError(f"invalid action: {report.violations[:3]}")
    pairs = [(a.act[d, s], d) for d in a.states for s in a.semilattice.elements]
    return Poset.from_leq(a.states, pairs)


def semilattice_self_action(t: SemilatticeTable) -> ActionTable:
    return ActionTable(t.elements, t, dict(t.op))


def set_model_to_action(m: SetModel) -> ActionTable:
    m.validate()
    act_names = list(m.acts)
    act_by_set = {}
    for name in act_names:
        act_by_set.setdefault(m.acts[name], name)
    state_by_set = {sub: name for name, sub in m.states.items()}
    op = {(s, t): act_by_set[m.acts[s] & m.acts[t]] for s in act_names for t in act_names}
    table = SemilatticeTable(tuple(act_names), op, act_by_set[m.ground])
    act = {(x, s): state_by_set[m.states[x] & m.acts[s]] for x in m.states for s in act_names}
    return ActionTable(tuple(m.states), table, act)


def intersection_semilattice(acts: Mapping[str, frozenset], ground: frozenset) -> SemilatticeTable:
    """The semilattice of named subsets under intersection; must already be closed and contain ``ground``."""
    by_set = {}
    for name, sub in acts.items():
        by_set.setdefault(sub, name)
    if ground not in by_set:
        raise ActionError("acts do not contain the ground set")
    names = list(acts)
    op = {}
    for s in names:
        for t in names:
            meet = acts[s] & acts[t]
            if meet not in by_set:
                raise ActionError(f"{s!r} and {t!r} do not intersect to an act", (s, t))
            op[s, t] = by_set[meet]
    return SemilatticeTable(tuple(names), op, by_set[ground])


def _act_name(mask: int, width: int) -> str:
    return "A" + format(mask, f"0{width}b")[::-1]


def set_representation(p: Poset, cert, cap: int = DEFAULT_CLOSURE_CAP) -> SetModel:
    """Realise a certified down-poset as states and acts under intersection.

    Ground set is the element list; state ``x`` is ``down_set(x)``; the acts
    are the fix-sets of the compositions of the certificate maps. Since
    ``down_set(x) & fix(f) == down_set(f(x))`` for every down-function ``f``,
    the induced order of the model is the original order.
    """
    from .analysis import verify_certificate

    check = verify_certificate(p, cert)
    if not check:
        raise ActionError("certificate does not verify: " + "; ".join(check.reasons[:3]))
    maps = closure_under_composition(p, (e.map for e in cert.entries), cap)
    masks = sorted({fix_mask(f) for f in maps}, key=lambda m: (-bin(m).count("1"), [-b for b in bits(m)]))
    n = len(p)
    ground = frozenset(p.elements)
    states = {x: frozenset(p.names(p.down[i])) for i, x in enumerate(p.elements)}
    acts = {_act_name(m, n): frozenset(p.names(m)) for m in masks}
    return SetModel(ground, states, acts)
