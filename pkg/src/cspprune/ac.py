"""Arc consistency with a deterministic removal order.

Pass-based: sweep active (variable, value) pairs in ascending order, remove
values without support on some constraint neighbor, repeat until a full pass
removes nothing.  Removals take effect immediately, so later checks within
the same pass see them.  Stops at the first emptied domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Assignment, Instance


@dataclass
class ACResult:
    removed: list[Assignment]
    wipeout: Optional[int]


def has_support(instance: Instance, v: int, a: int, w: int) -> bool:
    """Some active value of ``w`` compatible with (v, a)."""
    return any(instance.cpt(v, a, w, b) for b in instance.domain(w))


def is_arc_consistent(instance: Instance) -> bool:
    for v in instance.active_vars():
        dom = instance.domain(v)
        if not dom:
            return False
        for w in instance.neighbors(v):
            for a in dom:
                if not has_support(instance, v, a, w):
                    return False
    return True


def enforce_ac(instance: Instance) -> ACResult:
    """Remove unsupported values in place until stable or wiped out."""
    removed: list[Assignment] = []
    for v in instance.active_vars():
        if not instance.domain(v):
            return ACResult(removed, v)
    changed = True
    while changed:
        changed = False
        for v in instance.active_vars():
            neighbors = instance.neighbors(v)
            for a in list(instance.domain(v)):
                if all(has_support(instance, v, a, w) for w in neighbors):
                    continue
                instance.remove_value(v, a)
                removed.append((v, a))
                changed = True
                if not instance.domain(v):
                    return ACResult(removed, v)
    return ACResult(removed, None)
