"""Brute-force reference algorithms.

Chronological backtracking search (variables and values in ascending order,
new assignments checked against all earlier ones) and a naive
enumerate-and-check occurrence test.  These are the independent baselines the
engine and the pattern machinery are validated against; they share no code
with the fast paths.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterator, Mapping, Optional

from .model import Instance, Pattern, Solution

DEFAULT_NODE_LIMIT = 20_000_000


class SearchSpaceError(RuntimeError):
    """Search space exceeds the configured node limit."""


def node_limit(override: Optional[int] = None) -> int:
    """Effective node limit: explicit override, else CSPPRUNE_NODE_LIMIT, else default."""
    if override is not None:
        return override
    env = os.environ.get("CSPPRUNE_NODE_LIMIT")
    if env:
        return int(env)
    return DEFAULT_NODE_LIMIT


def _guard(instance: Instance, limit: int) -> None:
    size = 1
    for v in instance.active_vars():
        size *= len(instance.domain(v))
        if size > limit:
            raise SearchSpaceError(
                f"assignment space exceeds node limit {limit}"
            )


def _search(instance: Instance) -> Iterator[Solution]:
    """Yield every solution in lexicographic (variable, value) order."""
    avars = instance.active_vars()
    if any(not instance.domain(v) for v in avars):
        return
    adjacency = {v: [w for w in instance.neighbors(v)] for v in avars}
    assigned: Solution = {}

    def extend(i: int) -> Iterator[Solution]:
        if i == len(avars):
            yield dict(assigned)
            return
        v = avars[i]
        for a in instance.domain(v):
            ok = True
            for w in adjacency[v]:
                if w in assigned and not instance.cpt(v, a, w, assigned[w]):
                    ok = False
                    break
            if ok:
                assigned[v] = a
                yield from extend(i + 1)
                del assigned[v]

    yield from extend(0)


def solve(instance: Instance, limit: Optional[int] = None) -> Optional[Solution]:
    """Lexicographically least solution, or None when unsatisfiable."""
    _guard(instance, node_limit(limit))
    return next(_search(instance), None)


def count_solutions(instance: Instance, limit: Optional[int] = None) -> int:
    _guard(instance, node_limit(limit))
    return sum(1 for _ in _search(instance))


def enumerate_solutions(instance: Instance, limit: Optional[int] = None) -> list[Solution]:
    _guard(instance, node_limit(limit))
    return list(_search(instance))


def _check_mapping(pattern: Pattern, instance: Instance, x: int,
                   mapping: Optional[Mapping[int, int]]) -> dict[int, int]:
    m = dict(mapping or {})
    if pattern.distinguished_var is None:
        if m:
            raise ValueError("mapping given for a pattern without a distinguished variable")
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


def brute_occurs(pattern: Pattern, instance: Instance, x: int,
                 mapping: Optional[Mapping[int, int]] = None) -> bool:
    """Naive occurrence test at variable ``x``.

    Enumerates injective variable maps (the distinguished pattern variable
    pinned to ``x`` when the pattern is quantified, ``x`` required in the
    image otherwise) and, per variable map, all value maps into active
    domains with the existential values sent along ``mapping``; succeeds when
    some candidate reproduces every defined edge exactly.  Pattern values not
    pinned and not touched by any defined edge are unconstrained beyond
    needing a non-empty target domain, so they are not enumerated.
    """
    if not instance.is_active(x):
        raise ValueError(f"variable {x} is not active")
    m = _check_mapping(pattern, instance, x, mapping)
    k = pattern.nvars
    avars = instance.active_vars()
    if k > len(avars):
        return False

    used: list[set[int]] = [set() for _ in range(k)]
    for ((i, a), (j, b)) in pattern.edges:
        used[i].add(a)
        used[j].add(b)

    dvar = pattern.distinguished_var
    others = [v for v in range(k) if v != dvar]

    def value_maps(phi: dict[int, int]) -> Iterator[dict[int, dict[int, int]]]:
        # slots: (pattern var, pattern value) pairs still to be assigned
        slots = []
        base: dict[int, dict[int, int]] = {v: {} for v in range(k)}
        for v in range(k):
            for a in pattern.domains[v]:
                if v == dvar and a in m:
                    base[v][a] = m[a]
                elif a in used[v]:
                    slots.append((v, a))
        pools = [instance.domain(phi[v]) for (v, _) in slots]
        for choice in itertools.product(*pools):
            psi = {v: dict(vals) for v, vals in base.items()}
            for (v, a), tgt in zip(slots, choice):
                psi[v][a] = tgt
            yield psi

    def matches(phi: dict[int, int], psi) -> bool:
        for ((i, a), (j, b)), label in pattern.edges.items():
            if instance.cpt(phi[i], psi[i][a], phi[j], psi[j][b]) != label:
                return False
        return True

    def try_phi(phi: dict[int, int]) -> bool:
        # value maps are total, so every mapped domain must be non-empty
        if any(not instance.domain(phi[v]) for v in range(k)):
            return False
        for psi in value_maps(phi):
            if matches(phi, psi):
                return True
        return False

    if dvar is not None:
        candidates = [w for w in avars if w != x]
        for perm in itertools.permutations(candidates, len(others)):
            phi = {dvar: x}
            phi.update(zip(others, perm))
            if try_phi(phi):
                return True
        return False

    for perm in itertools.permutations(avars, k):
        if x not in perm:
            continue
        if try_phi(dict(enumerate(perm))):
            return True
    return False
