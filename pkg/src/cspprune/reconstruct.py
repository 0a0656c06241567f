"""Solution reconstruction from elimination traces.

Replaying a trace forward on the original instance reproduces the reduced
instance; walking it backward undoes each record (tombstones are flag flips,
so restoration is exact).  At each variable-elimination record the solution
in hand is extended over the restored variable: BTP and ∃subBTP eliminations
always admit a compatible value directly, while ∃invsubBTP and ∃snake
eliminations fix the recorded existential value and may move incompatible
already-assigned variables to their least compatible support.  Value and
arc-consistency records never change the solution.

recover_all additionally rebuilds complete solution sets, which is only
sound for traces free of the repair-based rules: those traces grow solution
sets monotonically (variable records extend by every compatible value, NS
and ∃2triangle value records re-emit the removed value where it fits).
"""

from __future__ import annotations

from typing import Iterable

from . import formats
from .model import Instance, InstanceError, Solution, is_solution
from .trace import EliminationTrace, REPAIR_RULES


class ReconstructionError(RuntimeError):
    """Trace and instance disagree, or reconstruction is unsupported."""


def _check_fingerprint(instance: Instance, trace: EliminationTrace) -> None:
    if trace.fingerprint and formats.instance_fingerprint(instance) != trace.fingerprint:
        raise ReconstructionError("trace fingerprint does not match the instance")


def replay_forward(instance: Instance, trace: EliminationTrace) -> Instance:
    """Apply every trace record to a copy of ``instance``."""
    _check_fingerprint(instance, trace)
    work = instance.copy()
    try:
        for rec in trace:
            if rec.kind == "var":
                work.remove_variable(rec.var)
            else:
                work.remove_value(rec.var, rec.val)
    except InstanceError as exc:
        raise ReconstructionError(f"trace does not replay: {exc}") from exc
    return work


def extend_by_trial(instance: Instance, x: int, solution: Solution) -> Solution:
    """Extend by the least value of x compatible with the solution."""
    assigned_neighbors = [w for w in instance.neighbors(x) if w in solution]
    for d in instance.domain(x):
        if all(instance.cpt(x, d, w, solution[w]) for w in assigned_neighbors):
            return {**solution, x: d}
    raise ReconstructionError(f"no compatible value extends variable {x}")


def extend_with_repair(instance: Instance, x: int, solution: Solution,
                       d: int) -> Solution:
    """Extend by the recorded value d, repairing incompatible assignments.

    Variables compatible with (x, d) keep their values; each other variable
    moves to its least active value compatible with (x, d), which exists by
    arc consistency of the state the variable was eliminated in.
    """
    if not instance.is_value_active(x, d):
        raise ReconstructionError(f"recorded value {d} of variable {x} is not active")
    out: Solution = {x: d}
    for v, val in solution.items():
        if instance.cpt(v, val, x, d):
            out[v] = val
            continue
        for t in instance.domain(v):
            if instance.cpt(v, t, x, d):
                out[v] = t
                break
        else:
            raise ReconstructionError(
                f"variable {v} has no support for ({x},{d}); "
                f"the eliminated state was not arc consistent"
            )
    return out


def recover_one(instance: Instance, trace: EliminationTrace,
                solution: Solution) -> Solution:
    """Turn a solution of the reduced instance into one of the original."""
    work = replay_forward(instance, trace)
    s = dict(solution)
    if not is_solution(work, s):
        raise ReconstructionError("input does not solve the reduced instance")
    for rec in reversed(trace.records):
        if rec.kind == "var":
            work.restore_variable(rec.var)
            if rec.rule in ("BTP", "ExistsSubBTP"):
                s = extend_by_trial(work, rec.var, s)
            else:
                s = extend_with_repair(work, rec.var, s, rec.mapping["a"])
        else:
            work.restore_value(rec.var, rec.val)
    return s


def recover_all(instance: Instance, trace: EliminationTrace,
                solutions: Iterable[Solution]) -> list[Solution]:
    """Turn the full solution set of the reduced instance into the original's.

    Rejects traces containing repair-based rules (∃invsubBTP, ∃snake,
    ∃2invsubBTP, ∃2snake): their eliminations do not preserve solution
    counts, so no completion procedure can exist for them.
    """
    for rec in trace:
        if rec.rule in REPAIR_RULES:
            raise ReconstructionError(
                f"trace contains rule {rec.rule}; full-set recovery is "
                f"only supported for count-preserving rules"
            )
    work = replay_forward(instance, trace)
    sols = [dict(s) for s in solutions]
    for s in sols:
        if not is_solution(work, s):
            raise ReconstructionError("input does not solve the reduced instance")
    for rec in reversed(trace.records):
        if rec.kind == "var":
            work.restore_variable(rec.var)
            x = rec.var
            neighbors = work.neighbors(x)
            extended = []
            for s in sols:
                assigned = [w for w in neighbors if w in s]
                for d in work.domain(x):
                    if all(work.cpt(x, d, w, s[w]) for w in assigned):
                        extended.append({**s, x: d})
            sols = extended
        elif rec.kind == "val":
            work.restore_value(rec.var, rec.val)
            x, b = rec.var, rec.val
            d = rec.mapping["a"]
            neighbors = work.neighbors(x)
            variants = []
            for s in sols:
                if s.get(x) != d:
                    continue
                if all(work.cpt(x, b, w, s[w]) for w in neighbors if w in s):
                    variants.append({**s, x: b})
            sols = sols + variants
        else:
            work.restore_value(rec.var, rec.val)
    return sorted(sols, key=lambda s: tuple(sorted(s.items())))


def greedy_solve(instance: Instance, trace: EliminationTrace) -> Solution | None:
    """Solve via reconstruction when preprocessing made the residual trivial.

    None when the trace ends in a wipeout; rejects residual instances that
    still have two or more active variables.
    """
    work = replay_forward(instance, trace)
    if work.has_wipeout():
        return None
    avars = work.active_vars()
    if len(avars) > 1:
        raise ReconstructionError(
            f"residual instance still has {len(avars)} active variables"
        )
    start: Solution = {v: work.domain(v)[0] for v in avars}
    return recover_one(instance, trace, start)
