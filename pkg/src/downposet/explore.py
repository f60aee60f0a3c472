"""Bounded search for witnesses about the canonical down-suborder.

Two questions, both report-only:

* non-maximal: a down-poset order strictly between the canonical suborder
  and the original order;
* extra function: a down-function of the canonical suborder that is not a
  down-function of the original order.
"""

from __future__ import annotations

from .analysis import canonical_suborder, compare_canonical_down_functions, is_down_poset, larger_down_suborders
from .oracle import all_posets, random_poset
from .poset import Poset


def _doc(p: Poset):
    return {"elements": list(p.elements), "covers": [list(c) for c in p.covers()]}


def _candidates(max_n: int, samples: int, sample_n: int, seed: int):
    for n in range(1, min(max_n, 5) + 1):
        for p in all_posets(n):
            yield "exhaustive", p
    for k in range(samples):
        density = (k % 9 + 1) / 10
        yield "sampled", random_poset(sample_n, density, seed + k)


def explore_canonical(max_n: int = 5, samples: int = 200, sample_n: int = 6, seed: int = 0) -> dict:
    """Search all posets up to ``min(max_n, 5)`` elements plus seeded samples of size ``sample_n``."""
    examined = {"exhaustive": 0, "sampled": 0}
    counts = {"non_maximal": 0, "extra_function": 0, "not_down_poset": 0}
    first_non_maximal = None
    first_extra = None
    for origin, p in _candidates(max_n, samples, sample_n, seed):
        examined[origin] += 1
        if is_down_poset(p):
            continue  # canonical suborder is p itself; nothing to find
        counts["not_down_poset"] += 1
        q = canonical_suborder(p)
        bigger = larger_down_suborders(p, q, limit=1)
        if bigger:
            counts["non_maximal"] += 1
            if first_non_maximal is None:
                first_non_maximal = {
                    "poset": _doc(p), "canonical": _doc(q), "larger_down_suborder": _doc(bigger[0]),
                }
        cmp = compare_canonical_down_functions(p)
        if not cmp.contained:
            raise AssertionError(f"containment failed on {p!r}")
        if cmp.extra:
            counts["extra_function"] += 1
            if first_extra is None:
                first_extra = {"poset": _doc(p), "canonical": _doc(q), "map": cmp.extra[0].as_dict()}
    return {
        "bounds": {"exhaustive_max_n": min(max_n, 5), "sample_n": sample_n, "samples": samples, "seed": seed},
        "examined": examined,
        "counts": counts,
        "non_maximal_witness": first_non_maximal,
        "extra_function_witness": first_extra,
    }
