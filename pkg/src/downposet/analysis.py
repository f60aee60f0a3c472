"""Recognising down-posets, certificates, and the canonical down-suborder."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .downmaps import EndoMap, check_down_function
from .poset import Poset, bits, check_poset
from .solver import DEFAULT_ENUM_CAP, ConflictTrace, SearchStats, SolveOutcome, enumerate_down_functions, solve_pinned

MODES = ("covers", "all-pairs")


@dataclass(frozen=True)
class CertificateEntry:
    pair: tuple[str, str]  # (c, d) with c below d
    map: EndoMap


@dataclass(frozen=True)
class Certificate:
    entries: tuple[CertificateEntry, ...]

    def maps(self) -> list[EndoMap]:
        out = []
        for e in self.entries:
            if e.map not in out:
                out.append(e.map)
        return out

    def as_list(self):
        return [{"pair": list(e.pair), "map": e.map.as_dict()} for e in self.entries]

    @classmethod
    def from_list(cls, p: Poset, items) -> Certificate:
        return cls(tuple(
            CertificateEntry((str(it["pair"][0]), str(it["pair"][1])), EndoMap.from_dict(p, it["map"]))
            for it in items
        ))


@dataclass(frozen=True)
class Refutation:
    pair: tuple[str, str]
    trace: ConflictTrace


@dataclass(frozen=True)
class Decision:
    is_down_poset: bool
    mode: str
    certificate: Certificate | None = None
    refutations: tuple[Refutation, ...] = ()
    stats: tuple[tuple[tuple[str, str], SearchStats], ...] = field(default=(), compare=False)

    @property
    def failing_pair(self) -> tuple[str, str] | None:
        return self.refutations[0].pair if self.refutations else None

    @property
    def trace(self) -> ConflictTrace | None:
        return self.refutations[0].trace if self.refutations else None

    def as_dict(self):
        doc = {"is_down_poset": self.is_down_poset, "mode": self.mode}
        if self.is_down_poset:
            doc["certificate"] = self.certificate.as_list()
        else:
            doc["failing_pair"] = list(self.failing_pair)
            doc["trace"] = self.trace.as_dict()
            if len(self.refutations) > 1:
                doc["all_failing"] = [
                    {"pair": list(r.pair), "trace": r.trace.as_dict()} for r in self.refutations
                ]
        return doc


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _pairs(p: Poset, mode: str) -> list[tuple[str, str]]:
    els = p.elements
    if mode == "covers":
        idx = p.cover_indices()
    elif mode == "all-pairs":
        idx = p.strict_pairs()
    else:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    return [(els[c], els[d]) for c, d in idx]


def _solve(args) -> SolveOutcome:
    p, c, d = args
    return solve_pinned(p, d, c)


def _solve_all(p: Poset, pairs, jobs: int, stop_on_failure: bool):
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map() preserves input order, so the result is schedule-independent
            return list(pool.map(_solve, [(p, c, d) for c, d in pairs], chunksize=8))
    out = []
    for c, d in pairs:
        o = solve_pinned(p, d, c)
        out.append(o)
        if stop_on_failure and not o.sat:
            break
    return out


def recognize(p: Poset, mode: str = "covers", exhaustive: bool = False, jobs: int = 1) -> Decision:
    """Decide whether ``p`` is a down-poset.

    Every cover pair (or every strict pair in ``all-pairs`` mode) must admit a
    down-function sending the upper element to the lower one. A NO answer
    names the first failing pair in linear-extension order, or every failing
    pair when ``exhaustive`` is set.
    """
    pairs = _pairs(p, mode)
    outcomes = _solve_all(p, pairs, jobs, stop_on_failure=not exhaustive)
    stats = tuple((pair, o.stats) for pair, o in zip(pairs, outcomes))
    refutations = tuple(Refutation(pair, o.trace) for pair, o in zip(pairs, outcomes) if not o.sat)
    if refutations:
        if not exhaustive:
            refutations = refutations[:1]
        return Decision(False, mode, None, refutations, stats)
    entries = tuple(CertificateEntry(pair, o.map) for pair, o in zip(pairs, outcomes))
    return Decision(True, mode, Certificate(entries), (), stats)


def verify_certificate(p: Poset, cert: Certificate) -> CertificateCheck:
    """Check a certificate against ``p`` without any search."""
    reasons = []
    needed = p.covers()
    seen: dict[tuple[str, str], int] = {}
    for k, e in enumerate(cert.entries):
        seen[e.pair] = seen.get(e.pair, 0) + 1
        c, d = e.pair
        if c not in p.index or d not in p.index:
            reasons.append(f"entry {k}: unknown element in pair {e.pair}")
            continue
        if e.map.elements != p.elements:
            reasons.append(f"entry {k}: map is over a different element list")
            continue
        if e.map(d) != c:
            reasons.append(f"entry {k}: map sends {d} to {e.map(d)}, not {c}")
        report = check_down_function(p, e.map)
        for v in report.violations:
            reasons.append(f"entry {k}: {v.tag} fails at {v.witness}")
    for pair in needed:
        if pair not in seen:
            reasons.append(f"cover pair {pair} has no witness")
    for pair, count in seen.items():
        if pair not in needed:
            reasons.append(f"{pair} is not a cover pair")
        elif count > 1:
            reasons.append(f"cover pair {pair} appears {count} times")
    return CertificateCheck(not reasons, tuple(reasons))


def canonical_suborder(p: Poset, jobs: int = 1) -> Poset:
    """Pairs ``c <= d`` admitting a down-function with ``d -> c``.

    The result is rebuilt through the validating constructor, so a
    transitivity failure would surface as NotAPosetError.
    """
    pairs = _pairs(p, "all-pairs")
    outcomes = _solve_all(p, pairs, jobs, stop_on_failure=False)
    kept = [pair for pair, o in zip(pairs, outcomes) if o.sat]
    q = Poset.from_leq(p.elements, kept)
    check_poset(q)
    return q


@dataclass(frozen=True)
class CanonicalComparison:
    original: tuple[EndoMap, ...]
    canonical: tuple[EndoMap, ...]
    contained: bool
    extra: tuple[EndoMap, ...]  # down-functions of the suborder that are not down-functions of p


def compare_canonical_down_functions(p: Poset, cap: int = DEFAULT_ENUM_CAP) -> CanonicalComparison:
    q = canonical_suborder(p)
    mine = enumerate_down_functions(p, cap)
    theirs = enumerate_down_functions(q, cap)
    theirs_set = set(theirs)
    mine_set = set(mine)
    return CanonicalComparison(
        tuple(mine),
        tuple(theirs),
        mine_set <= theirs_set,
        tuple(f for f in theirs if f not in mine_set),
    )


def is_down_poset(p: Poset) -> bool:
    return recognize(p).is_down_poset


def larger_down_suborders(p: Poset, q: Poset, limit: int = 1) -> list[Poset]:
    """Down-poset orders strictly between ``q`` and ``p`` (``q`` a suborder of ``p``).

    Brute force over subsets of the pairs in ``p`` but not ``q``; meant for tiny inputs.
    """
    n = len(p)
    extra = [(x, y) for y in range(n) for x in bits(p.down[y] & ~q.down[y])]
    found = []
    for mask in range(1, 1 << len(extra)):
        down = list(q.down)
        for k, (x, y) in enumerate(extra):
            if mask >> k & 1:
                down[y] |= 1 << x
        if not _transitive(down):
            continue
        r = Poset(p.elements, down)
        if is_down_poset(r):
            found.append(r)
            if len(found) >= limit:
                break
    return found


def _transitive(down) -> bool:
    for y, d in enumerate(down):
        for x in bits(d):
            if down[x] & ~d:
                return False
    return True
