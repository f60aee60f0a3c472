"""Down-functions: checking the axioms and the composition algebra.

A down-function on a poset is an endomap ``f`` that is

* decreasing: ``f(c) <= c``
* monotone: ``c <= d`` implies ``f(c) <= f(d)``
* below-image-fixing: ``c <= f(d)`` implies ``f(c) == c``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CapExceededError, MapError, NotADownFunctionError, NotALatticeError
from .poset import Poset, bits

DEFAULT_CLOSURE_CAP = 10_000


@dataclass(frozen=True)
class EndoMap:
    """A total self-map of a poset's elements.

    ``image[i]`` is the index of the image of ``elements[i]``.
    """

    elements: tuple[str, ...]
    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.image) != n:
            raise MapError(f"map has {len(self.image)} images for {n} elements")
        for v in self.image:
            if not 0 <= v < n:
                raise MapError(f"image index {v} out of range")

    @classmethod
    def from_dict(cls, p: Poset, mapping: Mapping[str, str]) -> EndoMap:
        extra = [k for k in mapping if k not in p.index]
        if extra:
            raise MapError(f"map mentions unknown element {extra[0]!r}")
        image = []
        for x in p.elements:
            if x not in mapping:
                raise MapError(f"map is not total: no image for {x!r}")
            v = mapping[x]
            if v not in p.index:
                raise MapError(f"image of {x!r} is unknown element {v!r}")
            image.append(p.index[v])
        return cls(p.elements, tuple(image))

    def __call__(self, x: str) -> str:
        return self.elements[self.image[self.elements.index(x)]]

    def as_dict(self) -> dict[str, str]:
        return {x: self.elements[v] for x, v in zip(self.elements, self.image)}

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in self.as_dict().items())
        return f"EndoMap({{{body}}})"


@dataclass(frozen=True)
class Violation:
    tag: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class CheckReport:
    violations: tuple[Violation, ...] = ()

    @property
    def verdict(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.verdict

    def tags(self) -> set[str]:
        return {v.tag for v in self.violations}


def _require_same(p: Poset, f: EndoMap) -> None:
    if f.elements != p.elements:
        raise MapError("map is defined over a different element list than the poset")


def is_down_image(p: Poset, image: Sequence[int]) -> bool:
    """Fast yes/no axiom check on a raw index image; stops at the first failure."""
    down = p.down
    n = len(image)
    for c in range(n):
        if not down[c] >> image[c] & 1:
            return False
    for d in range(n):
        fd = image[d]
        for c in bits(down[d]):
            if not down[fd] >> image[c] & 1:
                return False
        for c in bits(down[fd]):
            if image[c] != c:
                return False
    return True


def check_down_function(p: Poset, f: EndoMap) -> CheckReport:
    """Check all three axioms for every element pair and list every failure."""
    _require_same(p, f)
    els, down, img = p.elements, p.down, f.image
    n = len(els)
    out = []
    for c in range(n):
        if not down[c] >> img[c] & 1:
            out.append(Violation("decreasing", (els[c],)))
    for d in range(n):
        for c in bits(down[d]):
            if not down[img[d]] >> img[c] & 1:
                out.append(Violation("monotone", (els[c], els[d])))
    for d in range(n):
        for c in bits(down[img[d]]):
            if img[c] != c:
                out.append(Violation("below-image-fixing", (els[c], els[d])))
    return CheckReport(tuple(out))


def identity_map(p: Poset) -> EndoMap:
    return EndoMap(p.elements, tuple(range(len(p))))


def constant_map(p: Poset, value: str) -> EndoMap:
    v = p.idx(value)
    return EndoMap(p.elements, (v,) * len(p))


def compose(f: EndoMap, g: EndoMap) -> EndoMap:
    """``x -> f(g(x))``."""
    if f.elements != g.elements:
        raise MapError("cannot compose maps over different element lists")
    fi = f.image
    return EndoMap(f.elements, tuple(fi[v] for v in g.image))


def fix_set(p: Poset, f: EndoMap) -> frozenset[str]:
    _require_same(p, f)
    return frozenset(p.elements[i] for i, v in enumerate(f.image) if v == i)


def fix_mask(f: EndoMap) -> int:
    m = 0
    for i, v in enumerate(f.image):
        if v == i:
            m |= 1 << i
    return m


def _require_down(p: Poset, f: EndoMap) -> None:
    report = check_down_function(p, f)
    if not report:
        raise NotADownFunctionError(report)


def closure_under_composition(
    p: Poset, maps: Iterable[EndoMap], cap: int = DEFAULT_CLOSURE_CAP
) -> list[EndoMap]:
    """The sub-semilattice generated by ``maps`` together with the identity.

    Returned in discovery order, identity first.
    """
    gens = []
    for f in maps:
        _require_down(p, f)
        if f not in gens:
            gens.append(f)
    ident = identity_map(p)
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(g, h)
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(cap, len(seen))
                    seen[k] = None
                    nxt.append(k)
        frontier = nxt
    return list(seen)


def preserves_existing_meets(p: Poset, f: EndoMap) -> CheckReport:
    """Every meet that exists is carried to the meet of the images."""
    _require_down(p, f)
    els, img = p.elements, f.image
    n = len(els)
    out = []
    for x in range(n):
        for y in range(x, n):
            m = p.meet_index(x, y)
            if m is None:
                continue
            if p.meet_index(img[x], img[y]) != img[m]:
                out.append(Violation("meet-preservation", (els[x], els[y])))
    return CheckReport(tuple(out))


def is_interior_operator(p: Poset, f: EndoMap) -> CheckReport:
    """Check the four interior-operator laws; ``p`` must have a top and all binary meets."""
    _require_same(p, f)
    top = p.top_index()
    if top is None:
        raise NotALatticeError("poset has no top element")
    n = len(p)
    meets = {}
    for x in range(n):
        for y in range(x, n):
            m = p.meet_index(x, y)
            if m is None:
                raise NotALatticeError(
                    f"meet of {p.elements[x]!r} and {p.elements[y]!r} does not exist",
                    (p.elements[x], p.elements[y]),
                )
            meets[x, y] = m
    els, img, down = p.elements, f.image, p.down
    out = []
    if img[top] != top:
        out.append(Violation("box-top", (els[top],)))
    for (x, y), m in meets.items():
        a, b = sorted((img[x], img[y]))
        if meets[a, b] != img[m]:
            out.append(Violation("box-meet", (els[x], els[y])))
    for x in range(n):
        if not down[x] >> img[x] & 1:
            out.append(Violation("box-decreasing", (els[x],)))
    for x in range(n):
        if img[img[x]] != img[x]:
            out.append(Violation("box-idempotent", (els[x],)))
    return CheckReport(tuple(out))
