"""JSON documents for posets, actions, set models, and DOT rendering."""

from __future__ import annotations

import json

from .actions import ActionTable, SemilatticeTable, SetModel
from .errors import DocumentError
from .poset import Poset


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def _str_list(doc, key):
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"field {key!r} must be a list of strings")
    return value


def _pair_list(doc, key):
    value = doc.get(key)
    if not isinstance(value, list):
        raise DocumentError(f"field {key!r} must be a list of pairs")
    for k, pair in enumerate(value):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise DocumentError(f"field {key!r} entry #{k}: expected a 2-element list of strings")
    return value


def poset_from_doc(doc: dict) -> Poset:
    elements = _str_list(doc, "elements")
    has_covers, has_leq = "covers" in doc, "leq" in doc
    if has_covers == has_leq:
        raise DocumentError("poset document needs exactly one of 'covers' or 'leq'")
    key = "covers" if has_covers else "leq"
    pairs = _pair_list(doc, key)
    if has_covers:
        return Poset.from_covers(elements, pairs)
    return Poset.from_leq(elements, pairs)


def parse_poset(text: str) -> Poset:
    """Parse ``{"elements": [...], "covers"|"leq": [[x, y], ...]}``."""
    return poset_from_doc(_load(text))


def poset_to_doc(p: Poset) -> dict:
    return {"elements": list(p.elements), "covers": [list(c) for c in p.covers()]}


def _subset(doc, where):
    if not isinstance(doc, list) or not all(isinstance(x, (str, int)) for x in doc):
        raise DocumentError(f"{where}: expected a list of ground-set members")
    return frozenset(str(x) for x in doc)


def _name_map(doc, key):
    value = doc.get(key)
    if not isinstance(value, dict):
        raise DocumentError(f"field {key!r} must map names to subsets")
    return {str(k): _subset(v, f"{key}.{k}") for k, v in value.items()}


def parse_action(text: str) -> ActionTable | SetModel:
    """Parse either a set model or an abstract action-table document."""
    doc = _load(text)
    if "ground_set" in doc:
        ground = _subset(doc["ground_set"], "ground_set")
        return SetModel(ground, _name_map(doc, "states"), _name_map(doc, "acts"))
    for key in ("elements", "table", "identity", "states", "action_table"):
        if key not in doc:
            raise DocumentError(f"action document is missing field {key!r}")
    elements = _str_list(doc, "elements")
    states = _str_list(doc, "states")
    table, act = doc["table"], doc["action_table"]
    if not isinstance(table, dict) or not isinstance(act, dict):
        raise DocumentError("'table' and 'action_table' must be nested objects")
    try:
        op = {(s, t): table[s][t] for s in elements for t in elements}
        action = {(c, s): act[c][s] for c in states for s in elements}
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"incomplete table: missing entry {exc}") from None
    sl = SemilatticeTable(tuple(elements), op, str(doc["identity"]))
    return ActionTable(tuple(states), sl, action)


def _sorted_members(s):
    return sorted(s, key=lambda x: (0, int(x), "") if x.isdigit() else (1, 0, x))


def set_model_to_doc(m: SetModel) -> dict:
    return {
        "ground_set": _sorted_members(m.ground),
        "states": {k: _sorted_members(v) for k, v in m.states.items()},
        "acts": {k: _sorted_members(v) for k, v in m.acts.items()},
    }


def action_to_doc(a: ActionTable) -> dict:
    sl = a.semilattice
    return {
        "elements": list(sl.elements),
        "identity": sl.identity,
        "table": {s: {t: sl.op[s, t] for t in sl.elements} for s in sl.elements},
        "states": list(a.states),
        "action_table": {c: {s: a.act[c, s] for s in sl.elements} for c in a.states},
    }


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(p: Poset, highlight: tuple[str, str] | None = None) -> str:
    """Hasse diagram in DOT, drawn bottom-to-top so larger elements sit higher."""
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=plaintext];"]
    marked = set(highlight or ())
    for x in p.elements:
        attrs = " [fontcolor=red]" if x in marked else ""
        lines.append(f"  {_quote(x)}{attrs};")
    covers = p.covers()
    for x, y in covers:
        attrs = " [color=red]" if highlight == (x, y) else ""
        lines.append(f"  {_quote(x)} -> {_quote(y)}{attrs};")
    if highlight is not None and tuple(highlight) not in covers:
        x, y = highlight
        lines.append(f"  {_quote(x)} -> {_quote(y)} [color=red, style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
