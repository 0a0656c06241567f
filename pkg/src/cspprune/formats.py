"""Line-oriented file formats for instances, patterns, and traces.

Instance format::

    bcsp 1
    vars <n>
    dom <i> : <v0> <v1> ...
    con <i> <j>
    <a> <b>
    ...
    end

``#`` starts a comment anywhere on a line.  Variable pairs without a ``con``
block are completely compatible; constraints are serialized only when some
active pair is forbidden.  A variable without a ``dom`` line is an
eliminated variable (the count in ``vars`` always covers them).

Pattern format::

    pattern 1
    vars <n>
    dom <i> : <v0> ...
    edge + <i> <a> <j> <b>
    edge - <i> <a> <j> <b>
    evar <i>
    eval <i> <a>
    dval <i> <a>

Trace format::

    bcsp-trace 1 <fingerprint>
    var <x> rule=<R> m=a:<d>
    val <x> <b> rule=<R> m=a:<d>,b:<b>
    ac <x> <v>
"""

from __future__ import annotations

import hashlib
from typing import Optional

from .model import Instance, Pattern, InstanceError, PatternError, make_instance, make_pattern
from .trace import ElimRecord, EliminationTrace, RULE_IDS


class FormatError(ValueError):
    """Parse or serialization failure, with a 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _logical_lines(text: str):
    """(line number, tokens) for non-empty lines, comments stripped."""
    for idx, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield idx, body.split()


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", line) from None


# ---------------------------------------------------------------------------
# instances


def serialize_instance(instance: Instance) -> str:
    lines = ["bcsp 1", f"vars {instance.nvars}"]
    active = instance.active_vars()
    for v in active:
        vals = " ".join(str(a) for a in instance.domain(v))
        lines.append(f"dom {v} : {vals}")
    for (i, j) in sorted(instance.constraints):
        if not (instance.is_active(i) and instance.is_active(j)):
            continue
        if not instance.constraint_is_nontrivial(i, j):
            continue
        lines.append(f"con {i} {j}")
        di, dj = instance.domain(i), instance.domain(j)
        for a in di:
            for b in dj:
                if instance.cpt(i, a, j, b):
                    lines.append(f"{a} {b}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    lines = list(_logical_lines(text))
    if not lines:
        raise FormatError("empty input")
    pos = 0

    line, tokens = lines[pos]
    if tokens != ["bcsp", "1"]:
        raise FormatError(f"expected header 'bcsp 1', got {' '.join(tokens)!r}", line)
    pos += 1

    if pos >= len(lines) or lines[pos][1][0] != "vars":
        raise FormatError("expected 'vars <n>' after header", line)
    line, tokens = lines[pos]
    if len(tokens) != 2:
        raise FormatError("expected 'vars <n>'", line)
    nvars = _int(tokens[1], line)
    if nvars < 0:
        raise FormatError("variable count must be non-negative", line)
    pos += 1

    domains: dict[int, list[int]] = {}
    while pos < len(lines) and lines[pos][1][0] == "dom":
        line, tokens = lines[pos]
        if len(tokens) < 3 or tokens[2] != ":":
            raise FormatError("expected 'dom <i> : <values>'", line)
        v = _int(tokens[1], line)
        if not 0 <= v < nvars:
            raise FormatError(f"domain for unknown variable {v}", line)
        if v in domains:
            raise FormatError(f"duplicate domain for variable {v}", line)
        vals = [_int(t, line) for t in tokens[3:]]
        if not vals:
            raise FormatError(f"variable {v} has an empty domain", line)
        if len(set(vals)) != len(vals):
            raise FormatError(f"variable {v} repeats a domain value", line)
        domains[v] = vals
        pos += 1

    constraints = []
    seen_pairs = set()
    while pos < len(lines):
        line, tokens = lines[pos]
        if tokens[0] != "con":
            raise FormatError(f"expected 'con <i> <j>', got {tokens[0]!r}", line)
        if len(tokens) != 3:
            raise FormatError("expected 'con <i> <j>'", line)
        i, j = _int(tokens[1], line), _int(tokens[2], line)
        for v in (i, j):
            if not 0 <= v < nvars:
                raise FormatError(f"constraint references unknown variable {v}", line)
            if v not in domains:
                raise FormatError(
                    f"constraint references eliminated variable {v}", line
                )
        if i == j:
            raise FormatError(f"constraint on a single variable {i}", line)
        key = (i, j) if i < j else (j, i)
        if key in seen_pairs:
            raise FormatError(f"duplicate constraint on pair {key}", line)
        seen_pairs.add(key)
        pos += 1
        allowed = []
        closed = False
        while pos < len(lines):
            line2, tokens2 = lines[pos]
            if tokens2 == ["end"]:
                closed = True
                pos += 1
                break
            if tokens2[0] in ("con", "dom"):
                break
            if len(tokens2) != 2:
                raise FormatError("expected '<a> <b>' tuple or 'end'", line2)
            a, b = _int(tokens2[0], line2), _int(tokens2[1], line2)
            if a not in domains[i]:
                raise FormatError(f"value {a} outside domain of variable {i}", line2)
            if b not in domains[j]:
                raise FormatError(f"value {b} outside domain of variable {j}", line2)
            allowed.append((a, b))
            pos += 1
        if not closed:
            raise FormatError(f"constraint ({i},{j}) not closed with 'end'", line)
        constraints.append((i, j, allowed))

    full_domains = []
    for v in range(nvars):
        # vars without a dom line are eliminated; a placeholder domain keeps
        # indexing dense and is never observable
        full_domains.append(domains.get(v, [0]))
    try:
        instance = make_instance(nvars, full_domains, constraints)
    except InstanceError as exc:
        raise FormatError(str(exc)) from exc
    for v in range(nvars):
        if v not in domains:
            instance.remove_variable(v)
    return instance


def instance_fingerprint(instance: Instance) -> str:
    digest = hashlib.sha256(serialize_instance(instance).encode("utf-8"))
    return digest.hexdigest()[:12]


# ---------------------------------------------------------------------------
# patterns


def serialize_pattern(pattern: Pattern) -> str:
    lines = ["pattern 1", f"vars {pattern.nvars}"]
    for v in range(pattern.nvars):
        vals = " ".join(str(a) for a in pattern.domains[v])
        lines.append(f"dom {v} : {vals}")
    for ((i, a), (j, b)), label in sorted(pattern.edges.items()):
        sign = "+" if label else "-"
        lines.append(f"edge {sign} {i} {a} {j} {b}")
    if pattern.distinguished_var is not None:
        lines.append(f"evar {pattern.distinguished_var}")
        for a in sorted(pattern.existential):
            lines.append(f"eval {pattern.distinguished_var} {a}")
        if pattern.distinguished_val is not None:
            lines.append(f"dval {pattern.distinguished_var} {pattern.distinguished_val}")
    return "\n".join(lines) + "\n"


def parse_pattern(text: str) -> Pattern:
    lines = list(_logical_lines(text))
    if not lines:
        raise FormatError("empty input")
    pos = 0
    line, tokens = lines[pos]
    if tokens != ["pattern", "1"]:
        raise FormatError(f"expected header 'pattern 1', got {' '.join(tokens)!r}", line)
    pos += 1
    if pos >= len(lines) or lines[pos][1][0] != "vars":
        raise FormatError("expected 'vars <n>' after header", line)
    line, tokens = lines[pos]
    if len(tokens) != 2:
        raise FormatError("expected 'vars <n>'", line)
    nvars = _int(tokens[1], line)
    if nvars <= 0:
        raise FormatError("pattern needs at least one variable", line)
    pos += 1

    domains: dict[int, list[int]] = {}
    edges: dict = {}
    evar: Optional[int] = None
    evals: list[int] = []
    dval: Optional[int] = None

    for line, tokens in lines[pos:]:
        head = tokens[0]
        if head == "dom":
            if len(tokens) < 3 or tokens[2] != ":":
                raise FormatError("expected 'dom <i> : <values>'", line)
            v = _int(tokens[1], line)
            if not 0 <= v < nvars:
                raise FormatError(f"domain for unknown variable {v}", line)
            if v in domains:
                raise FormatError(f"duplicate domain for variable {v}", line)
            vals = [_int(t, line) for t in tokens[3:]]
            if not vals:
                raise FormatError(f"variable {v} has an empty value set", line)
            if len(set(vals)) != len(vals):
                raise FormatError(f"variable {v} repeats a value", line)
            domains[v] = vals
        elif head == "edge":
            if len(tokens) != 6 or tokens[1] not in ("+", "-"):
                raise FormatError("expected 'edge +|- <i> <a> <j> <b>'", line)
            i, a, j, b = (_int(t, line) for t in tokens[2:])
            for v, val in ((i, a), (j, b)):
                if v not in domains:
                    raise FormatError(f"edge references variable {v} before its dom line", line)
                if val not in domains[v]:
                    raise FormatError(f"edge value {val} outside domain of variable {v}", line)
            if i == j:
                raise FormatError("edge endpoints must be distinct variables", line)
            key = ((i, a), (j, b)) if i < j else ((j, b), (i, a))
            if key in edges:
                raise FormatError(f"duplicate edge for {key}", line)
            edges[key] = tokens[1] == "+"
        elif head == "evar":
            if len(tokens) != 2:
                raise FormatError("expected 'evar <i>'", line)
            if evar is not None:
                raise FormatError("duplicate evar line", line)
            evar = _int(tokens[1], line)
            if evar not in domains:
                raise FormatError(f"evar references unknown variable {evar}", line)
        elif head == "eval":
            if len(tokens) != 3:
                raise FormatError("expected 'eval <i> <a>'", line)
            v, a = _int(tokens[1], line), _int(tokens[2], line)
            if evar is None or v != evar:
                raise FormatError(
                    "existential value marker on a non-distinguished variable", line
                )
            if a not in domains[v]:
                raise FormatError(f"existential value {a} outside domain", line)
            if a in evals:
                raise FormatError(f"duplicate existential value {a}", line)
            evals.append(a)
        elif head == "dval":
            if len(tokens) != 3:
                raise FormatError("expected 'dval <i> <a>'", line)
            v, a = _int(tokens[1], line), _int(tokens[2], line)
            if evar is None or v != evar:
                raise FormatError(
                    "distinguished value marker on a non-distinguished variable", line
                )
            if dval is not None:
                raise FormatError("duplicate dval line", line)
            dval = a
        else:
            raise FormatError(f"unknown directive {head!r}", line)

    for v in range(nvars):
        if v not in domains:
            raise FormatError(f"missing domain for variable {v}")
    ordered = [domains[v] for v in range(nvars)]
    try:
        return make_pattern(ordered, edges, evar, evals, dval)
    except PatternError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# traces


def _serialize_mapping(mapping: dict) -> str:
    return ",".join(f"{k}:{mapping[k]}" for k in sorted(mapping))


def serialize_trace(trace: EliminationTrace) -> str:
    lines = [f"bcsp-trace 1 {trace.fingerprint}"]
    for rec in trace.records:
        if rec.kind == "var":
            parts = [f"var {rec.var} rule={rec.rule}"]
            if rec.mapping:
                parts.append(f"m={_serialize_mapping(rec.mapping)}")
            lines.append(" ".join(parts))
        elif rec.kind == "val":
            lines.append(
                f"val {rec.var} {rec.val} rule={rec.rule} "
                f"m={_serialize_mapping(rec.mapping)}"
            )
        else:
            lines.append(f"ac {rec.var} {rec.val}")
    return "\n".join(lines) + "\n"


def _parse_mapping(token: str, line: int) -> dict:
    if not token.startswith("m="):
        raise FormatError(f"expected 'm=...', got {token!r}", line)
    mapping = {}
    for part in token[2:].split(","):
        if ":" not in part:
            raise FormatError(f"malformed mapping entry {part!r}", line)
        key, _, val = part.partition(":")
        if key not in ("a", "b"):
            raise FormatError(f"unknown mapping key {key!r}", line)
        if key in mapping:
            raise FormatError(f"duplicate mapping key {key!r}", line)
        mapping[key] = _int(val, line)
    return mapping


def parse_trace(text: str) -> EliminationTrace:
    lines = list(_logical_lines(text))
    if not lines:
        raise FormatError("empty input")
    line, tokens = lines[0]
    if len(tokens) != 3 or tokens[0] != "bcsp-trace" or tokens[1] != "1":
        raise FormatError("expected header 'bcsp-trace 1 <fingerprint>'", line)
    fingerprint = tokens[2]
    records = []
    for line, tokens in lines[1:]:
        head = tokens[0]
        try:
            if head == "var":
                if len(tokens) not in (3, 4) or not tokens[2].startswith("rule="):
                    raise FormatError("expected 'var <x> rule=<R> [m=...]'", line)
                rule = tokens[2][len("rule="):]
                if rule not in RULE_IDS:
                    raise FormatError(f"unknown rule {rule!r}", line)
                mapping = _parse_mapping(tokens[3], line) if len(tokens) == 4 else {}
                records.append(
                    ElimRecord("var", _int(tokens[1], line), rule=rule, mapping=mapping)
                )
            elif head == "val":
                if len(tokens) != 5 or not tokens[3].startswith("rule="):
                    raise FormatError("expected 'val <x> <b> rule=<R> m=...'", line)
                rule = tokens[3][len("rule="):]
                if rule not in RULE_IDS:
                    raise FormatError(f"unknown rule {rule!r}", line)
                records.append(
                    ElimRecord(
                        "val",
                        _int(tokens[1], line),
                        val=_int(tokens[2], line),
                        rule=rule,
                        mapping=_parse_mapping(tokens[4], line),
                    )
                )
            elif head == "ac":
                if len(tokens) != 3:
                    raise FormatError("expected 'ac <x> <v>'", line)
                records.append(
                    ElimRecord("ac", _int(tokens[1], line), val=_int(tokens[2], line))
                )
            else:
                raise FormatError(f"unknown record kind {head!r}", line)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(str(exc), line) from exc
    return EliminationTrace(records, fingerprint)
