"""Named example posets and set models."""

from __future__ import annotations

import re

from .actions import SetModel
from .errors import DocumentError
from .poset import Poset


def _fs(*xs):
    return frozenset(str(x) for x in xs)


# Five states and four acts over W = {1, 2, 3, 4}; the order is inclusion.
FIG1_STATES = {"c": _fs(), "d": _fs(1), "e": _fs(2), "f": _fs(1, 2, 3), "g": _fs(1, 2, 4)}
FIG1_ACTS = {"s": _fs(), "t": _fs(1), "u": _fs(2), "id": _fs(1, 2, 3, 4)}

# d, e <= h; d, e, g <= f with f the only element of its down-set above both d and e;
# h < i; g < i; g not below h. The common bottom c keeps every other cover pair
# witnessable, so i -> h is the only obstruction.
FIG3_ELEMENTS = ["c", "d", "e", "g", "h", "f", "i"]
FIG3_COVERS = [
    ("c", "d"), ("c", "e"), ("c", "g"),
    ("d", "f"), ("e", "f"), ("g", "f"),
    ("d", "h"), ("e", "h"), ("h", "i"), ("g", "i"),
]

METADATA = {
    "fig1": {"source": "five subsets of {1,2,3,4} under inclusion", "reconstructed": False},
    "fig2_v": {"source": "two minimal elements below one top", "reconstructed": False},
    "fig3": {
        "source": "rebuilt from the refutation argument for i -> h (diagram unavailable)",
        "reconstructed": True,
    },
    "bool_2": {"source": "subsets of {1,2} under inclusion", "reconstructed": False},
    "diamond": {"source": "bottom, two incomparable middles, top", "reconstructed": False},
}


def fig1_model() -> SetModel:
    return SetModel(_fs(1, 2, 3, 4), dict(FIG1_STATES), dict(FIG1_ACTS))


def fig1() -> Poset:
    names = list(FIG1_STATES)
    leq = [(x, y) for x in names for y in names if FIG1_STATES[x] <= FIG1_STATES[y]]
    return Poset.from_leq(names, leq)


def fig2_v() -> Poset:
    return Poset.from_covers(["c", "d", "e"], [("c", "e"), ("d", "e")])


def fig3() -> Poset:
    return Poset.from_covers(FIG3_ELEMENTS, FIG3_COVERS)


def chain(k: int) -> Poset:
    els = [str(i) for i in range(k)]
    return Poset.from_covers(els, list(zip(els, els[1:])))


def antichain(k: int) -> Poset:
    return Poset.from_covers([str(i) for i in range(k)], [])


def bool_2() -> Poset:
    return Poset.from_covers(
        ["{}", "{1}", "{2}", "{1,2}"],
        [("{}", "{1}"), ("{}", "{2}"), ("{1}", "{1,2}"), ("{2}", "{1,2}")],
    )


def diamond() -> Poset:
    return Poset.from_covers(
        ["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")]
    )


_SIMPLE = {"fig1": fig1, "fig2_v": fig2_v, "fig3": fig3, "bool_2": bool_2, "diamond": diamond}
FIXTURE_NAMES = tuple(_SIMPLE) + ("chain_<k>", "antichain_<k>")


def fixture(name: str) -> Poset:
    """Look up a fixture by name; ``chain_<k>`` and ``antichain_<k>`` take a size."""
    if name in _SIMPLE:
        return _SIMPLE[name]()
    m = re.fullmatch(r"(chain|antichain)_(\d+)", name)
    if m and int(m.group(2)) >= 1:
        k = int(m.group(2))
        return chain(k) if m.group(1) == "chain" else antichain(k)
    raise DocumentError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
