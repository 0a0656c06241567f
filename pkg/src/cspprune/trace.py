"""Elimination trace records.

A trace is the replayable log of one preprocessing run: variable
eliminations, value eliminations, and the arc-consistency removals they
trigger, in order, tied to the source instance by a fingerprint of its
canonical serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

VAR_RULES = ("BTP", "ExistsSubBTP", "ExistsInvSubBTP", "ExistsSnake")
# canonical application order for value rules; NS first, then the three
# three-variable rules
VAL_RULES = ("NS", "Exists2Triangle", "Exists2Snake", "Exists2InvSubBTP")
RULE_IDS = VAR_RULES + VAL_RULES

# rules whose reconstruction step may move already-assigned variables; traces
# containing them support single-solution recovery only
REPAIR_RULES = ("ExistsInvSubBTP", "ExistsSnake", "Exists2InvSubBTP", "Exists2Snake")


@dataclass
class ElimRecord:
    """One trace entry.

    kind "var": variable ``var`` eliminated by ``rule`` with existential
    mapping ``mapping`` (keys "a"/"b" name the pattern's existential values).
    kind "val": value ``val`` of ``var`` eliminated by ``rule``.
    kind "ac": value ``val`` of ``var`` removed by arc consistency.
    """

    kind: str
    var: int
    val: Optional[int] = None
    rule: Optional[str] = None
    mapping: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("var", "val", "ac"):
            raise ValueError(f"unknown record kind {self.kind!r}")
        if self.kind == "var":
            if self.val is not None or self.rule not in VAR_RULES:
                raise ValueError("malformed variable-elimination record")
        elif self.kind == "val":
            if self.val is None or self.rule not in VAL_RULES:
                raise ValueError("malformed value-elimination record")
        else:
            if self.val is None or self.rule is not None or self.mapping:
                raise ValueError("malformed arc-consistency record")


@dataclass
class EliminationTrace:
    records: list[ElimRecord]
    fingerprint: str

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)
