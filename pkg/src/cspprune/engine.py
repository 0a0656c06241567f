"""Elimination engine.

Canonical policy: enforce arc consistency, then repeat two phases until no
rule fires.  Phase one scans active variables in ascending order and
eliminates the first variable licensed by an enabled variable rule
(restarting the scan after each elimination).  Phase two scans (variable,
value, rule) lexicographically and performs the first licensed value
elimination, then returns to phase one.  Value eliminations are followed by
an arc-consistency pass (recorded in the trace), except NS eliminations
which provably preserve arc consistency and only assert it.

A rule licenses an elimination exactly when its pattern does NOT occur with
some existential mapping: variable rules need one value d of x with no
occurrence (BTP none at all), value rules one value d distinct from the
candidate b.  The least such d is chosen, making runs deterministic.

An explicit script (``val:<x>:<b>[:<rule>]`` / ``var:<x>[:<rule>]``
directives) can force a particular elimination order; every directive is
validated against the current state, and the canonical policy continues
after the script ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import formats
from .ac import enforce_ac, is_arc_consistent
from .catalog import normalize_name
from .detect import VAL_RULE_DETECTORS, VAR_RULE_DETECTORS, occurs_btp_fast
from .model import Instance
from .trace import ElimRecord, EliminationTrace, RULE_IDS, VAL_RULES, VAR_RULES


class EngineError(RuntimeError):
    """Engine misuse: unknown rules, inactive targets, bad directives."""


class DirectiveError(EngineError):
    """A scripted directive is not licensed in the current state."""


_RULE_BY_KEY = {normalize_name(r): r for r in RULE_IDS}


def resolve_rule(name: str) -> str:
    try:
        return _RULE_BY_KEY[normalize_name(name)]
    except KeyError:
        raise EngineError(f"unknown rule {name!r}") from None


@dataclass(frozen=True)
class Directive:
    kind: str
    var: int
    val: Optional[int] = None
    rule: Optional[str] = None


def parse_script(text: str) -> tuple[Directive, ...]:
    """Comma-separated directives: var:<x>[:<rule>] and val:<x>:<b>[:<rule>]."""
    directives = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        kind = parts[0]
        try:
            if kind == "var" and len(parts) in (2, 3):
                rule = resolve_rule(parts[2]) if len(parts) == 3 else None
                directives.append(Directive("var", int(parts[1]), rule=rule))
            elif kind == "val" and len(parts) in (3, 4):
                rule = resolve_rule(parts[3]) if len(parts) == 4 else None
                directives.append(
                    Directive("val", int(parts[1]), val=int(parts[2]), rule=rule)
                )
            else:
                raise EngineError(f"malformed directive {chunk!r}")
        except ValueError:
            raise EngineError(f"malformed directive {chunk!r}") from None
    return tuple(directives)


@dataclass
class EngineConfig:
    rules: tuple[str, ...] = RULE_IDS
    script: tuple[Directive, ...] = ()
    observer: Optional[Callable[[Instance, list[ElimRecord]], None]] = None


def var_eliminable(instance: Instance, x: int, rule: str) -> Optional[dict]:
    """Existential mapping licensing elimination of variable x, or None."""
    if rule not in VAR_RULES:
        raise EngineError(f"{rule!r} is not a variable rule")
    if not instance.is_active(x):
        raise EngineError(f"variable {x} is not active")
    if rule == "BTP":
        return {} if not occurs_btp_fast(instance, x) else None
    detector = VAR_RULE_DETECTORS[rule]
    for d in instance.domain(x):
        if not detector(instance, x, d):
            return {"a": d}
    return None


def val_eliminable(instance: Instance, x: int, b: int, rule: str) -> Optional[dict]:
    """Existential mapping licensing elimination of value b of x, or None."""
    if rule not in VAL_RULES:
        raise EngineError(f"{rule!r} is not a value rule")
    if not instance.is_active(x):
        raise EngineError(f"variable {x} is not active")
    if not instance.is_value_active(x, b):
        raise EngineError(f"value {b} of variable {x} is not active")
    dom = instance.domain(x)
    if len(dom) < 2:
        return None
    detector = VAL_RULE_DETECTORS[rule]
    for d in dom:
        if d == b:
            continue
        if not detector(instance, x, d, b):
            return {"a": d, "b": b}
    return None


def eliminate_variable(instance: Instance, x: int, rule: str, mapping: dict) -> ElimRecord:
    record = ElimRecord("var", x, rule=rule, mapping=dict(mapping))
    instance.remove_variable(x)
    # dropping a variable only drops constraints, so consistency is preserved
    assert is_arc_consistent(instance)
    return record


def eliminate_value(instance: Instance, x: int, b: int, rule: str,
                    mapping: dict) -> list[ElimRecord]:
    records = [ElimRecord("val", x, val=b, rule=rule, mapping=dict(mapping))]
    instance.remove_value(x, b)
    if rule == "NS":
        # every value supported through b is supported through its stand-in
        assert is_arc_consistent(instance)
    else:
        result = enforce_ac(instance)
        records.extend(ElimRecord("ac", v, val=a) for (v, a) in result.removed)
    return records


class _VerdictCache:
    """Caches 'rule does not license x' verdicts during phase one.

    Removals only destroy occurrences, never create them, so a cached
    negative verdict (an occurrence exists for every candidate mapping) can
    only be flipped by a removal whose variable takes part in some witness,
    and every witness variable lies within two hops of x in the constraint
    graph.  Invalidation therefore clears the 2-hop neighborhood of each
    removal; the static graph over-approximates the active one, which is safe.
    """

    def __init__(self, instance: Instance):
        n = instance.nvars
        adj: list[set[int]] = [set() for _ in range(n)]
        for (i, j) in instance.constraints:
            adj[i].add(j)
            adj[j].add(i)
        self._two_hop: list[tuple[int, ...]] = []
        for v in range(n):
            reach = {v} | adj[v]
            for w in adj[v]:
                reach |= adj[w]
            self._two_hop.append(tuple(reach))
        self._blocked: dict[int, set[str]] = {}

    def blocked(self, x: int, rule: str) -> bool:
        return rule in self._blocked.get(x, ())

    def block(self, x: int, rule: str) -> None:
        self._blocked.setdefault(x, set()).add(rule)

    def invalidate(self, v: int) -> None:
        for u in self._two_hop[v]:
            self._blocked.pop(u, None)


def preprocess(instance: Instance, config: Optional[EngineConfig] = None,
               ) -> tuple[Instance, EliminationTrace]:
    """Run the engine on a copy of ``instance``; return (reduced, trace)."""
    cfg = config or EngineConfig()
    for rule in cfg.rules:
        if rule not in RULE_IDS:
            raise EngineError(f"unknown rule {rule!r}")
    work = instance.copy()
    fingerprint = formats.instance_fingerprint(instance)
    records: list[ElimRecord] = []

    def emit(step: list[ElimRecord]) -> None:
        records.extend(step)
        if cfg.observer is not None:
            cfg.observer(work, step)

    def finish() -> tuple[Instance, EliminationTrace]:
        return work, EliminationTrace(records, fingerprint)

    result = enforce_ac(work)
    if result.removed:
        emit([ElimRecord("ac", v, val=a) for (v, a) in result.removed])
    if result.wipeout is not None:
        return finish()

    var_rules = [r for r in cfg.rules if r in VAR_RULES]
    val_rules = [r for r in cfg.rules if r in VAL_RULES]

    for directive in cfg.script:
        if directive.kind == "var":
            candidates = [directive.rule] if directive.rule else var_rules
            if not candidates:
                raise DirectiveError("no variable rules enabled for directive")
            mapping = None
            for rule in candidates:
                mapping = var_eliminable(work, directive.var, rule)
                if mapping is not None:
                    break
            if mapping is None:
                raise DirectiveError(
                    f"variable {directive.var} is not eliminable as directed"
                )
            emit([eliminate_variable(work, directive.var, rule, mapping)])
        elif directive.kind == "val":
            candidates = [directive.rule] if directive.rule else val_rules
            if not candidates:
                raise DirectiveError("no value rules enabled for directive")
            mapping = None
            for rule in candidates:
                mapping = val_eliminable(work, directive.var, directive.val, rule)
                if mapping is not None:
                    break
            if mapping is None:
                raise DirectiveError(
                    f"value {directive.val} of variable {directive.var} "
                    f"is not eliminable as directed"
                )
            emit(eliminate_value(work, directive.var, directive.val, rule, mapping))
            if work.has_wipeout():
                return finish()
        else:
            raise DirectiveError(f"unknown directive kind {directive.kind!r}")

    cache = _VerdictCache(work) if var_rules else None

    while True:
        if var_rules:
            progress = True
            while progress:
                progress = False
                for x in work.active_vars():
                    chosen = None
                    for rule in var_rules:
                        if cache.blocked(x, rule):
                            continue
                        mapping = var_eliminable(work, x, rule)
                        if mapping is None:
                            cache.block(x, rule)
                        else:
                            chosen = (rule, mapping)
                            break
                    if chosen is not None:
                        rule, mapping = chosen
                        emit([eliminate_variable(work, x, rule, mapping)])
                        cache.invalidate(x)
                        progress = True
                        break
        if not val_rules:
            break
        found = None
        for x in work.active_vars():
            dom = work.domain(x)
            if len(dom) < 2:
                continue
            for b in dom:
                for rule in val_rules:
                    mapping = val_eliminable(work, x, b, rule)
                    if mapping is not None:
                        found = (x, b, rule, mapping)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        x, b, rule, mapping = found
        step = eliminate_value(work, x, b, rule, mapping)
        if cache is not None:
            for rec in step:
                cache.invalidate(rec.var)
        emit(step)
        if work.has_wipeout():
            break
    return finish()
