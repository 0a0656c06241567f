"""Named pattern catalog.

Thirty patterns in three groups: variable-elimination patterns (the four
engine rules BTP / ∃subBTP / ∃invsubBTP / ∃snake plus the flat snake and
invsubBTP variants), value-elimination patterns (NS / ∃2triangle /
∃2invsubBTP / ∃2snake), and twenty non-elimination fixtures used to witness
that no further pattern of the respective arity family is sound.

Conventions: the distinguished variable is index 0 with values 0 (and 1 when
it has two); helper variables follow in index order with values 0 (and 1).
Names accept a normalized spelling ("∃" → "exists", parentheses stripped,
case-insensitive), so ``get_pattern("ExistsSnake")`` and
``get_pattern("∃snake")`` resolve to the same entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Pattern, make_pattern

VAR_ELIM = "var-elim"
VAL_ELIM = "val-elim"
NON_ELIM = "non-elim-fixture"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pattern: Pattern
    kind: str


def _edges(true_pairs, false_pairs):
    edges = {}
    for (v, a, w, b) in true_pairs:
        edges[((v, a), (w, b))] = True
    for (v, a, w, b) in false_pairs:
        edges[((v, a), (w, b))] = False
    return edges


def _entry(name, kind, domains, true_pairs, false_pairs,
           dvar=None, evals=(), dval=None) -> CatalogEntry:
    pattern = make_pattern(domains, _edges(true_pairs, false_pairs),
                           dvar, evals, dval)
    return CatalogEntry(name, pattern, kind)


_ENTRIES: list[CatalogEntry] = [
    # -- variable elimination -------------------------------------------------
    _entry(
        "BTP", VAR_ELIM, [(0, 1), (0,), (0,)],
        true_pairs=[(1, 0, 2, 0), (0, 1, 1, 0), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (0, 1, 2, 0)],
        dvar=0,
    ),
    _entry(
        "∃subBTP", VAR_ELIM, [(0, 1), (0,), (0,)],
        true_pairs=[(1, 0, 2, 0), (0, 1, 1, 0)],
        false_pairs=[(0, 0, 1, 0), (0, 1, 2, 0)],
        dvar=0, evals=(0,),
    ),
    _entry(
        "∃invsubBTP", VAR_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(0, 0, 1, 1), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0, evals=(0,),
    ),
    _entry(
        "∃snake", VAR_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(0, 0, 1, 1), (1, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0, evals=(0,),
    ),
    _entry(
        "invsubBTP", VAR_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(0, 0, 1, 1), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0,
    ),
    _entry(
        "snake", VAR_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(0, 0, 1, 1), (1, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0,
    ),
    # -- value elimination ----------------------------------------------------
    _entry(
        "NS", VAL_ELIM, [(0, 1), (0,)],
        true_pairs=[(0, 1, 1, 0)],
        false_pairs=[(0, 0, 1, 0)],
        dvar=0, evals=(0, 1), dval=1,
    ),
    _entry(
        "∃2triangle", VAL_ELIM, [(0, 1), (0,), (0,)],
        true_pairs=[(1, 0, 2, 0), (0, 1, 1, 0), (0, 1, 2, 0)],
        false_pairs=[(0, 0, 1, 0)],
        dvar=0, evals=(0, 1), dval=1,
    ),
    _entry(
        "∃2invsubBTP", VAL_ELIM, [(0, 1), (0, 1), (0,)],
        true_pairs=[(0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0, evals=(0, 1), dval=1,
    ),
    _entry(
        "∃2snake", VAL_ELIM, [(0, 1), (0, 1), (0,)],
        true_pairs=[(0, 1, 1, 0), (0, 0, 1, 1), (1, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0, evals=(0, 1), dval=1,
    ),
    # -- non-elimination fixtures: variable family ----------------------------
    _entry(
        "Pivot(sym)", NON_ELIM, [(0,), (0,), (0,)],
        true_pairs=[],
        false_pairs=[(0, 0, 1, 0), (0, 0, 2, 0)],
        dvar=0,
    ),
    _entry(
        "Pivot(asym)", NON_ELIM, [(0,), (0,), (0,)],
        true_pairs=[],
        false_pairs=[(1, 0, 2, 0), (0, 0, 1, 0)],
        dvar=0,
    ),
    _entry(
        "Cycle(3)", NON_ELIM, [(0, 1), (0, 1), (0, 1)],
        true_pairs=[],
        false_pairs=[(0, 1, 1, 1), (0, 0, 2, 1), (1, 0, 2, 0)],
    ),
    _entry(
        "Kite(sym)", NON_ELIM, [(0,), (0, 1), (0, 1)],
        true_pairs=[(0, 0, 1, 0), (1, 0, 2, 1), (1, 1, 2, 0), (0, 0, 2, 0)],
        false_pairs=[(1, 1, 2, 1)],
        dvar=0,
    ),
    _entry(
        "Kite(asym)", NON_ELIM, [(0, 1), (0, 1), (0,)],
        true_pairs=[(0, 1, 1, 0), (1, 0, 2, 0), (0, 0, 1, 1), (0, 0, 2, 0)],
        false_pairs=[(0, 1, 1, 1)],
        dvar=0,
    ),
    _entry(
        "rotsubBTP", NON_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(1, 0, 2, 0), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0), (1, 1, 2, 0)],
        dvar=0,
    ),
    _entry(
        "V(+−)", NON_ELIM, [(0, 1), (0,)],
        true_pairs=[(0, 0, 1, 0)],
        false_pairs=[(0, 1, 1, 0)],
        dvar=0, evals=(0,),
    ),
    _entry(
        "Triangle(asym)", NON_ELIM, [(0,), (0,), (0,)],
        true_pairs=[(1, 0, 2, 0), (0, 0, 2, 0)],
        false_pairs=[(0, 0, 1, 0)],
        dvar=0, evals=(0,),
    ),
    _entry(
        "Triangle", NON_ELIM, [(0,), (0,), (0,)],
        true_pairs=[(0, 0, 1, 0), (0, 0, 2, 0), (1, 0, 2, 0)],
        false_pairs=[],
    ),
    _entry(
        "Diamond", NON_ELIM, [(0,), (0, 1), (0,)],
        true_pairs=[(1, 0, 2, 0), (1, 1, 2, 0), (0, 0, 1, 0)],
        false_pairs=[(0, 0, 1, 1)],
    ),
    _entry(
        "Z", NON_ELIM, [(0, 1), (0, 1)],
        true_pairs=[(0, 1, 1, 1), (0, 0, 1, 1), (0, 0, 1, 0)],
        false_pairs=[(0, 1, 1, 0)],
    ),
    _entry(
        "XL", NON_ELIM, [(0, 1), (0,), (0, 1)],
        true_pairs=[(0, 1, 2, 0), (0, 0, 2, 1), (1, 0, 2, 0)],
        false_pairs=[(0, 1, 2, 1), (0, 0, 1, 0)],
    ),
    # -- non-elimination fixtures: value family --------------------------------
    _entry(
        "I(−)", NON_ELIM, [(0,), (0,)],
        true_pairs=[],
        false_pairs=[(0, 0, 1, 0)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "L(−)", NON_ELIM, [(0, 1), (0,), (0,)],
        true_pairs=[],
        false_pairs=[(0, 1, 1, 0), (0, 0, 2, 0)],
        dvar=0,
    ),
    _entry(
        "L(+−)", NON_ELIM, [(0,), (0,), (0,)],
        true_pairs=[(0, 0, 1, 0)],
        false_pairs=[(1, 0, 2, 0)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "triangle1", NON_ELIM, [(0, 1), (0,), (0,)],
        true_pairs=[(0, 0, 1, 0), (1, 0, 2, 0), (0, 1, 2, 0)],
        false_pairs=[(0, 1, 1, 0)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "triangle2", NON_ELIM, [(0, 1), (0, 1), (0,)],
        true_pairs=[(0, 1, 1, 1), (0, 0, 1, 0), (1, 1, 2, 0), (0, 1, 2, 0)],
        false_pairs=[(0, 1, 1, 0)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "∃Kite", NON_ELIM, [(0,), (0, 1), (0, 1)],
        true_pairs=[(0, 0, 1, 0), (1, 1, 2, 0), (1, 0, 2, 1), (0, 0, 2, 0)],
        false_pairs=[(1, 1, 2, 1)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "∃Kite(asym)", NON_ELIM, [(0, 1), (0, 1), (0,)],
        true_pairs=[(0, 1, 1, 0), (0, 0, 1, 1), (1, 0, 2, 0), (0, 0, 2, 0)],
        false_pairs=[(0, 1, 1, 1)],
        dvar=0, evals=(0,), dval=0,
    ),
    _entry(
        "∃Kite1", NON_ELIM, [(0, 1), (0, 1), (0, 1)],
        true_pairs=[(0, 0, 1, 0), (1, 0, 2, 1), (1, 1, 2, 0), (0, 1, 2, 0)],
        false_pairs=[(0, 1, 1, 0), (1, 1, 2, 1)],
        dvar=0, evals=(0,), dval=0,
    ),
]


def normalize_name(name: str) -> str:
    s = name.replace("∃", "exists")
    s = s.replace("−", "-")
    s = s.replace("(", "").replace(")", "")
    return s.lower()


_BY_KEY = {normalize_name(e.name): e for e in _ENTRIES}
assert len(_BY_KEY) == len(_ENTRIES), "catalog name normalization collides"

# engine rule identifiers resolve to their defining patterns
RULE_PATTERN_NAMES = {
    "BTP": "BTP",
    "ExistsSubBTP": "∃subBTP",
    "ExistsInvSubBTP": "∃invsubBTP",
    "ExistsSnake": "∃snake",
    "NS": "NS",
    "Exists2Triangle": "∃2triangle",
    "Exists2InvSubBTP": "∃2invsubBTP",
    "Exists2Snake": "∃2snake",
}


def get_pattern(name: str) -> CatalogEntry:
    try:
        return _BY_KEY[normalize_name(name)]
    except KeyError:
        raise KeyError(f"unknown catalog pattern {name!r}") from None


def list_catalog() -> dict[str, list[CatalogEntry]]:
    """Entries grouped by kind; var-elim lists the four engine rules first."""
    out: dict[str, list[CatalogEntry]] = {VAR_ELIM: [], VAL_ELIM: [], NON_ELIM: []}
    for e in _ENTRIES:
        out[e.kind].append(e)
    return out
