"""Pattern algebra: sub-patterns, reductions, equivalence, occurrence.

The reduction operations (value merging and dangling-assignment removal)
shrink a pattern without changing which instances it occurs in.  A pattern
with no performable reduction is irreducible.  Occurrence is a structure
homomorphism: an injective variable map together with per-variable value maps
into active domains that reproduce every defined edge exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
import itertools
from typing import Iterator, Mapping, Optional

from .model import (
    Assignment,
    Instance,
    Pattern,
    PatternError,
    make_pattern,
)


# ---------------------------------------------------------------------------
# sub-pattern and equivalence


def is_sub_pattern(sub: Pattern, sup: Pattern) -> bool:
    """Identity embedding: variable i of ``sub`` is variable i of ``sup``.

    Value sets shrink pointwise, defined edges of ``sub`` must be defined in
    ``sup`` with equal labels, and quantification may be dropped or narrowed
    but never changed: a distinguished variable present in ``sub`` must be
    the distinguished variable of ``sup``, existential values form a subset,
    and a distinguished value present in ``sub`` must equal the one in ``sup``.
    """
    if sub.nvars > sup.nvars:
        return False
    for v in range(sub.nvars):
        if not set(sub.domains[v]) <= set(sup.domains[v]):
            return False
    for key, label in sub.edges.items():
        if sup.edges.get(key) != label:
            return False
    if sub.distinguished_var is not None:
        if sup.distinguished_var != sub.distinguished_var:
            return False
        if not sub.existential <= sup.existential:
            return False
        if sub.distinguished_val is not None:
            if sup.distinguished_val != sub.distinguished_val:
                return False
    return True


def equivalent(p: Pattern, q: Pattern) -> bool:
    """Relabelling isomorphism.

    A variable bijection plus per-variable value bijections carrying defined
    edges to defined edges with equal labels, the distinguished variable to
    the distinguished variable, existential values onto existential values,
    and the distinguished value to the distinguished value.
    """
    if p.nvars != q.nvars:
        return False
    if (p.distinguished_var is None) != (q.distinguished_var is None):
        return False
    if len(p.existential) != len(q.existential):
        return False
    if (p.distinguished_val is None) != (q.distinguished_val is None):
        return False
    if len(p.edges) != len(q.edges):
        return False
    if sorted(p.edges.values()) != sorted(q.edges.values()):
        return False
    if sorted(map(len, p.domains)) != sorted(map(len, q.domains)):
        return False

    k = p.nvars
    pvars = list(range(k))

    def var_bijections() -> Iterator[dict[int, int]]:
        for perm in itertools.permutations(range(k)):
            pi = dict(zip(pvars, perm))
            if p.distinguished_var is not None:
                if pi[p.distinguished_var] != q.distinguished_var:
                    continue
            if any(len(p.domains[v]) != len(q.domains[pi[v]]) for v in pvars):
                continue
            yield pi

    def value_bijections(pi: dict[int, int]) -> Iterator[dict[int, dict[int, int]]]:
        per_var: list[list[dict[int, int]]] = []
        for v in pvars:
            src = p.domains[v]
            options = []
            for perm in itertools.permutations(q.domains[pi[v]]):
                tau = dict(zip(src, perm))
                if v == p.distinguished_var:
                    if {tau[a] for a in p.existential} != set(q.existential):
                        continue
                    if p.distinguished_val is not None:
                        if tau[p.distinguished_val] != q.distinguished_val:
                            continue
                options.append(tau)
            if not options:
                return
            per_var.append(options)
        for combo in itertools.product(*per_var):
            yield dict(zip(pvars, combo))

    for pi in var_bijections():
        for tau in value_bijections(pi):
            ok = True
            for ((v, a), (w, b)), label in p.edges.items():
                img_v, img_w = pi[v], pi[w]
                ia, ib = tau[v][a], tau[w][b]
                if img_v > img_w:
                    img_v, ia, img_w, ib = img_w, ib, img_v, ia
                if q.edges.get(((img_v, ia), (img_w, ib))) != label:
                    ok = False
                    break
            if ok:
                # edge counts match and the relabelling is bijective, so the
                # forward check alone establishes exact correspondence
                return True
    return False


# ---------------------------------------------------------------------------
# reductions


def is_mergeable(p: Pattern, v: int, a: int, b: int) -> bool:
    """Whether value ``a`` of variable ``v`` can be merged into value ``b``.

    Requires that no assignment sees both values with conflicting labels and
    that merging never un-marks an existential value: if ``a`` is existential
    then ``b`` must be too.
    """
    if a == b or a not in p.domains[v] or b not in p.domains[v]:
        return False
    if v == p.distinguished_var and a in p.existential and b not in p.existential:
        return False
    for w in range(p.nvars):
        if w == v:
            continue
        for c in p.domains[w]:
            la = p.edge(w, c, v, a)
            lb = p.edge(w, c, v, b)
            if la is not None and lb is not None and la != lb:
                return False
    return True


def merge_values(p: Pattern, v: int, a: int, b: int) -> Pattern:
    """Merge value ``a`` of variable ``v`` into value ``b``.

    ``b`` inherits the edges of ``a`` wherever it had none of its own; the
    distinguished value follows the merge when it was ``a``.
    """
    if not is_mergeable(p, v, a, b):
        raise PatternError(f"values {a},{b} of variable {v} are not mergeable")
    domains = list(p.domains)
    domains[v] = tuple(x for x in domains[v] if x != a)
    edges = {}
    inherited = {}
    for ((i, c), (j, d)), label in p.edges.items():
        if (i, c) == (v, a):
            inherited[((i, b), (j, d))] = label
        elif (j, d) == (v, a):
            inherited[((i, c), (j, b))] = label
        else:
            edges[((i, c), (j, d))] = label
    for key, label in inherited.items():
        edges.setdefault(key, label)
    existential = set(p.existential) - {a}
    dval = p.distinguished_val
    if dval == a:
        dval = b
    return make_pattern(domains, edges, p.distinguished_var, existential, dval)


def is_dangling(p: Pattern, v: int, a: int) -> bool:
    """At most one defined edge, compatible if present, and not existential."""
    if a not in p.domains[v]:
        return False
    if v == p.distinguished_var and a in p.existential:
        return False
    incident = p.edges_at(v, a)
    if len(incident) > 1:
        return False
    return all(label for (_, label) in incident)


def remove_dangling(p: Pattern, v: int, a: int) -> Pattern:
    """Remove dangling assignment (v, a); the variable must keep a value."""
    if not is_dangling(p, v, a):
        raise PatternError(f"assignment ({v},{a}) is not dangling")
    if len(p.domains[v]) == 1:
        raise PatternError(
            f"removing ({v},{a}) would empty the value set of variable {v}"
        )
    domains = list(p.domains)
    domains[v] = tuple(x for x in domains[v] if x != a)
    edges = {
        key: label
        for key, label in p.edges.items()
        if key[0] != (v, a) and key[1] != (v, a)
    }
    return make_pattern(domains, edges, p.distinguished_var, p.existential,
                        p.distinguished_val)


def reductions(p: Pattern) -> list[Pattern]:
    """All patterns reachable by one performable reduction step."""
    out = []
    for v in range(p.nvars):
        for a in p.domains[v]:
            for b in p.domains[v]:
                if a != b and is_mergeable(p, v, a, b):
                    out.append(merge_values(p, v, a, b))
            if is_dangling(p, v, a) and len(p.domains[v]) > 1:
                out.append(remove_dangling(p, v, a))
    return out


def is_irreducible(p: Pattern) -> bool:
    return not reductions(p)


def reduction_closure(p: Pattern) -> list[Pattern]:
    """Every pattern reachable by reduction steps, deduplicated modulo equivalence."""
    closed: list[Pattern] = [p]
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for r in reductions(q):
                if not any(equivalent(r, seen) for seen in closed):
                    closed.append(r)
                    nxt.append(r)
        frontier = nxt
    return closed


# ---------------------------------------------------------------------------
# occurrence


@dataclass
class OccurrenceWitness:
    """A concrete occurrence: variable map and per-variable value maps."""

    var_map: dict[int, int]
    val_maps: dict[int, dict[int, int]]


def _validated_mapping(pattern: Pattern, instance: Instance, x: int,
                       mapping: Optional[Mapping[int, int]]) -> dict[int, int]:
    m = dict(mapping or {})
    if pattern.distinguished_var is None:
        if m:
            raise ValueError(
                "mapping given for a pattern without a distinguished variable"
            )
        return m
    if set(m) != set(pattern.existential):
        raise ValueError(
            f"mapping keys {sorted(m)} must equal the existential values "
            f"{sorted(pattern.existential)}"
        )
    if len(set(m.values())) != len(m):
        raise ValueError("mapping must be injective")
    for tgt in m.values():
        if not instance.is_value_active(x, tgt):
            raise ValueError(f"mapping target {tgt} not active in variable {x}")
    return m


def occurs_at(pattern: Pattern, instance: Instance, x: int,
              mapping: Optional[Mapping[int, int]] = None,
              ) -> Optional[OccurrenceWitness]:
    """First occurrence of ``pattern`` at variable ``x``, or None.

    Quantified patterns pin the distinguished variable to ``x`` and send
    existential values along ``mapping``; patterns without a distinguished
    variable require ``x`` in the image of the variable map and an empty
    mapping.  The search is deterministic: variable maps are enumerated in
    ascending target order and value slots in ascending (variable, value)
    order with ascending candidate values; the first witness is returned.
    """
    if not instance.is_active(x):
        raise ValueError(f"variable {x} is not active")
    m = _validated_mapping(pattern, instance, x, mapping)
    k = pattern.nvars
    avars = instance.active_vars()
    if k > len(avars):
        return None

    dvar = pattern.distinguished_var
    touched: list[set[int]] = [set() for _ in range(k)]
    for ((i, a), (j, b)) in pattern.edges:
        touched[i].add(a)
        touched[j].add(b)
    # slots: pattern values the search must place; pinned existential values
    # and edge-free values are filled outside the search
    slots: list[Assignment] = []
    for v in range(k):
        for a in pattern.domains[v]:
            if v == dvar and a in m:
                continue
            if a in touched[v]:
                slots.append((v, a))
    slot_index = {s: i for i, s in enumerate(slots)}
    fixed: dict[Assignment, int] = {}
    if dvar is not None:
        for a in pattern.domains[dvar]:
            if a in m:
                fixed[(dvar, a)] = m[a]

    def search_values(phi: dict[int, int]) -> Optional[OccurrenceWitness]:
        # value maps are total, so every mapped domain must be non-empty
        if any(not instance.domain(phi[v]) for v in range(k)):
            return None
        for ((i, a), (j, b)), label in pattern.edges.items():
            fa, fb = fixed.get((i, a)), fixed.get((j, b))
            if fa is not None and fb is not None:
                if instance.cpt(phi[i], fa, phi[j], fb) != label:
                    return None
        chosen: list[Optional[int]] = [None] * len(slots)

        def consistent(i: int, val: int) -> bool:
            v, a = slots[i]
            for ((ei, ea), (ej, eb)), label in pattern.edges.items():
                if (ei, ea) == (v, a):
                    ov, ob = ej, eb
                elif (ej, eb) == (v, a):
                    ov, ob = ei, ea
                else:
                    continue
                if (ov, ob) in fixed:
                    other_val = fixed[(ov, ob)]
                else:
                    si = slot_index[(ov, ob)]
                    if si >= i:
                        continue
                    other_val = chosen[si]
                if instance.cpt(phi[v], val, phi[ov], other_val) != label:
                    return False
            return True

        def place(i: int) -> bool:
            if i == len(slots):
                return True
            tv = phi[slots[i][0]]
            for val in instance.domain(tv):
                if consistent(i, val):
                    chosen[i] = val
                    if place(i + 1):
                        return True
                    chosen[i] = None
            return False

        if not place(0):
            return None
        val_maps: dict[int, dict[int, int]] = {v: {} for v in range(k)}
        for (v, a), tgt in fixed.items():
            val_maps[v][a] = tgt
        for (v, a), val in zip(slots, chosen):
            val_maps[v][a] = val
        for v in range(k):
            least = instance.domain(phi[v])[0]
            for a in pattern.domains[v]:
                val_maps[v].setdefault(a, least)
        return OccurrenceWitness(dict(phi), val_maps)

    if dvar is not None:
        others = [v for v in range(k) if v != dvar]
        candidates = [w for w in avars if w != x]
        for perm in itertools.permutations(candidates, len(others)):
            phi = {dvar: x}
            phi.update(zip(others, perm))
            witness = search_values(phi)
            if witness is not None:
                return witness
        return None

    for perm in itertools.permutations(avars, k):
        if x not in perm:
            continue
        witness = search_values(dict(enumerate(perm)))
        if witness is not None:
            return witness
    return None


def occurs_anywhere(pattern: Pattern, instance: Instance) -> Optional[OccurrenceWitness]:
    """Occurrence of a non-quantified pattern with no anchoring requirement."""
    if pattern.distinguished_var is not None:
        raise ValueError(
            "occurs_anywhere is for patterns without a distinguished variable"
        )
    for x in instance.active_vars():
        witness = occurs_at(pattern, instance, x, {})
        if witness is not None:
            return witness
    return None


# ---------------------------------------------------------------------------
# pattern-in-pattern occurrence


def _iter_sub_patterns(q: Pattern, want: set) -> Iterator[Pattern]:
    """Reindexed sub-structures of ``q`` matching a (nvars, nedges) signature."""
    k = q.nvars
    var_counts = {n for (n, _) in want}
    for r in range(1, k + 1):
        if r not in var_counts:
            continue
        for var_subset in itertools.combinations(range(k), r):
            index = {v: i for i, v in enumerate(var_subset)}
            value_choices = []
            for v in var_subset:
                dom = q.domains[v]
                subsets = []
                for size in range(1, len(dom) + 1):
                    subsets.extend(itertools.combinations(dom, size))
                value_choices.append(subsets)
            for values in itertools.product(*value_choices):
                kept = {v: set(vals) for v, vals in zip(var_subset, values)}
                pool = [
                    (key, label)
                    for key, label in q.edges.items()
                    if key[0][0] in kept and key[1][0] in kept
                    and key[0][1] in kept[key[0][0]]
                    and key[1][1] in kept[key[1][0]]
                ]
                for esize in range(len(pool) + 1):
                    if (r, esize) not in want:
                        continue
                    for edge_subset in itertools.combinations(pool, esize):
                        edges = {
                            ((index[i], a), (index[j], b)): label
                            for (((i, a), (j, b)), label) in edge_subset
                        }
                        domains = [sorted(kept[v]) for v in var_subset]
                        yield make_pattern(domains, edges)
                        if q.distinguished_var in kept:
                            dv = index[q.distinguished_var]
                            evals_pool = sorted(
                                set(q.existential) & kept[q.distinguished_var]
                            )
                            for es in range(len(evals_pool) + 1):
                                for evals in itertools.combinations(evals_pool, es):
                                    dval_options = [None]
                                    if q.distinguished_val in evals:
                                        dval_options.append(q.distinguished_val)
                                    for dval in dval_options:
                                        yield make_pattern(
                                            domains, edges, dv, evals, dval
                                        )


def occurs_generic(p: Pattern, q: Pattern) -> bool:
    """Whether some reduction of ``p`` matches a sub-structure of ``q``.

    Computes the reduction closure of ``p`` and tests each member for
    equivalence with a sub-pattern of ``q`` (variable subset, value subsets,
    edge subset, possibly narrowed quantification).
    """
    if len(q.assignments()) > 16:
        raise ValueError("target pattern too large for sub-structure enumeration")
    closure = reduction_closure(p)
    want = {(r.nvars, len(r.edges)) for r in closure}
    for sub in _iter_sub_patterns(q, want):
        for r in closure:
            if equivalent(r, sub):
                return True
    return False
