"""Core data model: binary CSP instances and partial compatibility patterns.

An :class:`Instance` is a binary constraint network over variables
``0..nvars-1`` with finite integer domains.  Each unordered variable pair
carries at most one stored relation (the set of allowed value pairs); pairs
without a stored relation are completely compatible.  Reductions never
rewrite relations: removing a value tombstones it and removing a variable
deactivates it, so the original structure stays available for trace replay
and solution reconstruction.

A :class:`Pattern` is the partial analogue used by the occurrence checks: a
small set of variables, a value set per variable, and a partial edge
labelling (compatible / incompatible) over cross assignments.  A pattern may
distinguish one variable, mark some of its values as existential, and single
out one existential value for value-elimination checks.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence


class InstanceError(ValueError):
    """Raised when an instance is constructed or mutated inconsistently."""


class PatternError(ValueError):
    """Raised when a pattern violates its structural invariants."""


Assignment = tuple[int, int]
Solution = dict[int, int]


def _norm_pair(v: int, a: int, w: int, b: int) -> tuple[int, int, int, int]:
    if v == w:
        raise InstanceError(f"assignment pair on a single variable {v}")
    if v < w:
        return (v, a, w, b)
    return (w, b, v, a)


class Instance:
    """Binary CSP with tombstone-based value and variable removal."""

    def __init__(
        self,
        domains: Sequence[Sequence[int]],
        constraints: Mapping[tuple[int, int], frozenset],
    ):
        self._domains = tuple(tuple(d) for d in domains)
        self._constraints = dict(constraints)
        self._removed: list[set[int]] = [set() for _ in self._domains]
        self._var_active: list[bool] = [True] * len(self._domains)
        self._adj: Optional[tuple[tuple[int, ...], ...]] = None

    # -- construction ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self._domains)

    @property
    def constraints(self) -> dict[tuple[int, int], frozenset]:
        return self._constraints

    def copy(self) -> "Instance":
        dup = Instance.__new__(Instance)
        dup._domains = self._domains
        dup._constraints = self._constraints
        dup._removed = [set(r) for r in self._removed]
        dup._var_active = list(self._var_active)
        dup._adj = self._adj
        return dup

    # -- structure queries --------------------------------------------------

    def is_active(self, v: int) -> bool:
        return self._var_active[v]

    def active_vars(self) -> list[int]:
        return [v for v in range(self.nvars) if self._var_active[v]]

    def original_domain(self, v: int) -> tuple[int, ...]:
        return self._domains[v]

    def domain(self, v: int) -> tuple[int, ...]:
        """Active values of ``v``, ascending."""
        removed = self._removed[v]
        return tuple(a for a in self._domains[v] if a not in removed)

    def is_value_active(self, v: int, a: int) -> bool:
        return a in self._domains[v] and a not in self._removed[v]

    def cpt(self, v: int, a: int, w: int, b: int) -> bool:
        """Compatibility of assignments (v,a) and (w,b); absent relation is True."""
        v, a, w, b = _norm_pair(v, a, w, b)
        rel = self._constraints.get((v, w))
        if rel is None:
            return True
        return (a, b) in rel

    def neighbors(self, v: int) -> list[int]:
        """Active variables sharing a stored relation with ``v``, ascending."""
        if self._adj is None:
            adj: list[list[int]] = [[] for _ in range(self.nvars)]
            for (i, j) in self._constraints:
                adj[i].append(j)
                adj[j].append(i)
            self._adj = tuple(tuple(sorted(ws)) for ws in adj)
        return [w for w in self._adj[v] if self._var_active[w]]

    def has_wipeout(self) -> bool:
        return any(
            self._var_active[v] and not self.domain(v) for v in range(self.nvars)
        )

    def constraint_is_nontrivial(self, v: int, w: int) -> bool:
        """True when some active cross pair of (v, w) is incompatible."""
        if v > w:
            v, w = w, v
        rel = self._constraints.get((v, w))
        if rel is None:
            return False
        dv, dw = self.domain(v), self.domain(w)
        return any((a, b) not in rel for a in dv for b in dw)

    def nontrivial_constraint_count(self) -> int:
        count = 0
        for (v, w) in self._constraints:
            if self._var_active[v] and self._var_active[w]:
                if self.constraint_is_nontrivial(v, w):
                    count += 1
        return count

    def max_domain_size(self) -> int:
        sizes = [len(self.domain(v)) for v in self.active_vars()]
        return max(sizes, default=0)

    # -- mutation (tombstones only) ------------------------------------------

    def _check_var(self, v: int) -> None:
        if not 0 <= v < self.nvars:
            raise InstanceError(f"variable {v} does not exist")

    def remove_value(self, v: int, a: int) -> None:
        self._check_var(v)
        if not self._var_active[v]:
            raise InstanceError(f"variable {v} is not active")
        if not self.is_value_active(v, a):
            raise InstanceError(f"value {a} of variable {v} is not active")
        self._removed[v].add(a)

    def restore_value(self, v: int, a: int) -> None:
        self._check_var(v)
        if a not in self._removed[v]:
            raise InstanceError(f"value {a} of variable {v} is not removed")
        self._removed[v].discard(a)

    def remove_variable(self, v: int) -> None:
        self._check_var(v)
        if not self._var_active[v]:
            raise InstanceError(f"variable {v} is already inactive")
        self._var_active[v] = False

    def restore_variable(self, v: int) -> None:
        self._check_var(v)
        if self._var_active[v]:
            raise InstanceError(f"variable {v} is already active")
        self._var_active[v] = True

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        """Equality of the observable active state.

        Same active variables with the same active domains, and the same
        compatibility value on every active cross pair.  Storage details
        (trivial stored relations, tombstone history) do not matter.
        """
        if not isinstance(other, Instance):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.active_vars() != other.active_vars():
            return False
        for v in self.active_vars():
            if self.domain(v) != other.domain(v):
                return False
        pairs = set(self._constraints) | set(other._constraints)
        for (v, w) in pairs:
            if not (self._var_active[v] and self._var_active[w]):
                continue
            for a in self.domain(v):
                for b in self.domain(w):
                    if self.cpt(v, a, w, b) != other.cpt(v, a, w, b):
                        return False
        return True

    def __hash__(self):  # instances are mutable; only identity hashing is safe
        return id(self)

    def __repr__(self) -> str:
        return (
            f"Instance(nvars={self.nvars}, active={len(self.active_vars())}, "
            f"constraints={len(self._constraints)})"
        )

    def to_pattern(self) -> "Pattern":
        """Active structure as a pattern with a total edge labelling.

        Active variables are reindexed densely in ascending order; values keep
        their identity.  Every cross pair of active assignments becomes a
        defined edge, so the result is a total (complete) pattern.
        """
        avars = self.active_vars()
        index = {v: i for i, v in enumerate(avars)}
        domains = [self.domain(v) for v in avars]
        edges = {}
        for vi, v in enumerate(avars):
            for w in avars[vi + 1 :]:
                for a in self.domain(v):
                    for b in self.domain(w):
                        edges[((index[v], a), (index[w], b))] = self.cpt(v, a, w, b)
        return make_pattern(domains, edges)


def make_instance(
    var_count: int,
    domains: Sequence[Sequence[int]],
    constraints: Iterable[tuple[int, int, Iterable[tuple[int, int]]]] = (),
) -> Instance:
    """Validated constructor.

    ``constraints`` is an iterable of (i, j, allowed_pairs) triples; each
    unordered variable pair may appear at most once.  Allowed pairs are given
    in (value-of-i, value-of-j) order regardless of how i and j compare.
    """
    if var_count < 0:
        raise InstanceError("variable count must be non-negative")
    if len(domains) != var_count:
        raise InstanceError(
            f"expected {var_count} domains, got {len(domains)}"
        )
    norm_domains = []
    for v, dom in enumerate(domains):
        vals = list(dom)
        if not vals:
            raise InstanceError(f"variable {v} has an empty domain")
        if len(set(vals)) != len(vals):
            raise InstanceError(f"variable {v} has duplicate domain values")
        if any(not isinstance(a, int) or isinstance(a, bool) for a in vals):
            raise InstanceError(f"variable {v} has a non-integer domain value")
        norm_domains.append(tuple(sorted(vals)))
    stored: dict[tuple[int, int], frozenset] = {}
    for (i, j, allowed) in constraints:
        if not (0 <= i < var_count and 0 <= j < var_count):
            raise InstanceError(f"constraint ({i},{j}) references an unknown variable")
        if i == j:
            raise InstanceError(f"constraint on a single variable {i}")
        key = (i, j) if i < j else (j, i)
        if key in stored:
            raise InstanceError(f"duplicate constraint on pair {key}")
        pairs = set()
        for (a, b) in allowed:
            if i > j:
                a, b = b, a
            if a not in norm_domains[key[0]] or b not in norm_domains[key[1]]:
                raise InstanceError(
                    f"allowed pair ({a},{b}) outside domains for pair {key}"
                )
            pairs.add((a, b))
        stored[key] = frozenset(pairs)
    return Instance(norm_domains, stored)


def is_partial_solution(instance: Instance, assignment: Mapping[int, int]) -> bool:
    """All assigned variables active, values active, all pairs compatible."""
    for v, a in assignment.items():
        if not (0 <= v < instance.nvars) or not instance.is_active(v):
            return False
        if not instance.is_value_active(v, a):
            return False
    items = sorted(assignment.items())
    for i, (v, a) in enumerate(items):
        for (w, b) in items[i + 1 :]:
            if not instance.cpt(v, a, w, b):
                return False
    return True


def is_solution(instance: Instance, assignment: Mapping[int, int]) -> bool:
    """A partial solution assigning every active variable."""
    if sorted(assignment) != instance.active_vars():
        return False
    return is_partial_solution(instance, assignment)


class Pattern:
    """Partial compatibility structure over dense variables ``0..k-1``.

    ``edges`` maps normalized cross assignments ``((i, a), (j, b))`` with
    ``i < j`` to True (compatible) or False (incompatible); unmapped pairs
    are undefined.  ``distinguished_var`` / ``existential`` /
    ``distinguished_val`` carry the quantification: existential values (and
    the distinguished value, when present) always live on the distinguished
    variable.
    """

    __slots__ = ("domains", "edges", "distinguished_var", "existential",
                 "distinguished_val")

    def __init__(self, domains, edges, distinguished_var, existential,
                 distinguished_val):
        self.domains: tuple[tuple[int, ...], ...] = domains
        self.edges: dict[tuple[Assignment, Assignment], bool] = edges
        self.distinguished_var: Optional[int] = distinguished_var
        self.existential: frozenset[int] = existential
        self.distinguished_val: Optional[int] = distinguished_val

    @property
    def nvars(self) -> int:
        return len(self.domains)

    @property
    def is_quantified(self) -> bool:
        return self.distinguished_var is not None

    @property
    def is_flat(self) -> bool:
        return not self.existential

    def assignments(self) -> list[Assignment]:
        return [(v, a) for v in range(self.nvars) for a in self.domains[v]]

    def edge(self, v: int, a: int, w: int, b: int) -> Optional[bool]:
        """Edge label, or None when undefined."""
        v, a, w, b = _norm_pair(v, a, w, b)
        return self.edges.get(((v, a), (w, b)))

    def edges_at(self, v: int, a: int) -> list[tuple[Assignment, bool]]:
        """Defined edges incident to assignment (v, a) as (other end, label)."""
        out = []
        for ((i, x), (j, y)), label in self.edges.items():
            if (i, x) == (v, a):
                out.append(((j, y), label))
            elif (j, y) == (v, a):
                out.append(((i, x), label))
        out.sort()
        return out

    def key(self):
        """Canonical structural key for hashing and exact equality."""
        return (
            self.domains,
            tuple(sorted(self.edges.items())),
            self.distinguished_var,
            tuple(sorted(self.existential)),
            self.distinguished_val,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self) -> str:
        quant = ""
        if self.is_quantified:
            quant = (
                f", dvar={self.distinguished_var}"
                f", evals={sorted(self.existential)}"
            )
            if self.distinguished_val is not None:
                quant += f", dval={self.distinguished_val}"
        return f"Pattern(nvars={self.nvars}, edges={len(self.edges)}{quant})"


def make_pattern(
    domains: Sequence[Sequence[int]],
    edges: Mapping[tuple[Assignment, Assignment], bool],
    distinguished_var: Optional[int] = None,
    existential: Iterable[int] = (),
    distinguished_val: Optional[int] = None,
) -> Pattern:
    """Validated pattern constructor; normalizes edge keys to i < j order."""
    norm_domains = []
    for v, dom in enumerate(domains):
        vals = sorted(set(dom))
        if not vals:
            raise PatternError(f"pattern variable {v} has an empty value set")
        norm_domains.append(tuple(vals))
    norm_domains = tuple(norm_domains)
    k = len(norm_domains)
    norm_edges: dict[tuple[Assignment, Assignment], bool] = {}
    for ((v, a), (w, b)), label in edges.items():
        if not (0 <= v < k and 0 <= w < k):
            raise PatternError(f"edge references an unknown variable ({v},{w})")
        v, a, w, b = _norm_pair(v, a, w, b)
        if a not in norm_domains[v] or b not in norm_domains[w]:
            raise PatternError(
                f"edge (({v},{a}),({w},{b})) outside declared value sets"
            )
        key = ((v, a), (w, b))
        if key in norm_edges and norm_edges[key] != bool(label):
            raise PatternError(f"conflicting labels for edge {key}")
        norm_edges[key] = bool(label)
    evals = frozenset(existential)
    if distinguished_var is None:
        if evals:
            raise PatternError("existential values require a distinguished variable")
        if distinguished_val is not None:
            raise PatternError("distinguished value requires a distinguished variable")
    else:
        if not (0 <= distinguished_var < k):
            raise PatternError(f"distinguished variable {distinguished_var} out of range")
        bad = evals - set(norm_domains[distinguished_var])
        if bad:
            raise PatternError(
                f"existential values {sorted(bad)} outside the distinguished domain"
            )
        if distinguished_val is not None and distinguished_val not in evals:
            raise PatternError("distinguished value must be an existential value")
    return Pattern(norm_domains, norm_edges, distinguished_var, evals,
                   distinguished_val)
