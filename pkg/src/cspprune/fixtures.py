"""Named instance fixtures and the seeded random generator.

Each fixture carries an ``expected`` record of machine-checkable claims:
satisfiability, counts, known (partial) solutions, pattern absences (the
evidence that a hypothetical stronger elimination rule would be unsound
here), and how removing the pivotal variable or value flips satisfiability.
The test suite verifies every claim with the brute-force oracle and the
occurrence checkers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ac import enforce_ac
from .catalog import normalize_name
from .model import Instance, make_instance


class FixtureError(ValueError):
    pass


@dataclass
class FixtureResult:
    name: str
    instance: Instance
    expected: dict = field(default_factory=dict)


def _pairs(da, db, pred):
    return [(a, b) for a in da for b in db if pred(a, b)]


def _neq(da, db):
    return _pairs(da, db, lambda a, b: a != b)


def _eq(da, db):
    return _pairs(da, db, lambda a, b: a == b)


# ---------------------------------------------------------------------------
# small worked instances


def k3_2col() -> FixtureResult:
    dom = (0, 1)
    inst = make_instance(3, [dom] * 3, [
        (0, 1, _neq(dom, dom)),
        (0, 2, _neq(dom, dom)),
        (1, 2, _neq(dom, dom)),
    ])
    return FixtureResult("K3_2COL", inst, {
        "satisfiable": False,
        "count": 0,
        "absent_anywhere": ["Diamond", "Z", "XL", "Triangle"],
        "sat_after_var_removal": [0, 1, 2],
    })


def k4_colour() -> FixtureResult:
    doms = [(0, 1, 2, 3), (0, 1), (0, 2), (0, 3)]
    cons = [
        (i, j, _neq(doms[i], doms[j]))
        for i in range(4)
        for j in range(i + 1, 4)
    ]
    inst = make_instance(4, doms, cons)
    return FixtureResult("K4_COLOUR", inst, {
        "satisfiable": True,
        "count": 4,
        "solution": {0: 0, 1: 1, 2: 2, 3: 3},
    })


def bool3() -> FixtureResult:
    dom = (0, 1)
    both = [(a, b) for a in dom for b in dom]
    inst = make_instance(3, [dom] * 3, [
        (0, 2, [p for p in both if p != (1, 0)]),
        (1, 2, [p for p in both if p != (0, 0)]),
        (0, 1, [p for p in both if p != (1, 1)]),
    ])
    return FixtureResult("BOOL3", inst, {
        "satisfiable": True,
        "count": 4,
        "solution": {0: 1, 1: 0, 2: 1},
    })


def nonconf() -> FixtureResult:
    dom = (0, 1, 2)
    rel = [(0, 0), (0, 2), (1, 1), (2, 1), (2, 2)]
    inst = make_instance(3, [dom] * 3, [
        (0, 1, [p for p in _pairs(dom, dom, lambda a, b: True) if p != (2, 2)]),
        (0, 2, rel),
        (1, 2, rel),
    ])
    return FixtureResult("NONCONF", inst, {
        "satisfiable": True,
        "solution": {0: 2, 1: 0, 2: 2},
    })


# ---------------------------------------------------------------------------
# variable-elimination unsoundness witnesses


def iexists4() -> FixtureResult:
    triple = (0, 1, 2)
    rel = [(0, 0), (1, 2), (2, 1)]
    xdom = (0, 1, 2, 3)
    cons = [(0, 1, rel), (0, 2, rel), (1, 2, rel)]
    for i in (1, 2, 3):
        cons.append((i - 1, 3, _pairs(triple, xdom, lambda a, v, i=i: a > 0 or v == i)))
    inst = make_instance(4, [triple, triple, triple, xdom], cons)
    return FixtureResult("I∃4", inst, {
        "satisfiable": False,
        "partial_solution": {0: 0, 1: 0, 2: 0},
        "absent_at": [("V(+−)", 3, {0: 0}), ("Triangle(asym)", 3, {0: 0})],
        "sat_after_var_removal": [3],
    })


def i4() -> FixtureResult:
    b = (0, 1)
    xdom = (1, 2, 3)
    cons = [
        (0, 1, [p for p in _pairs(b, b, lambda a, c: True) if p != (0, 0)]),
        (0, 2, [p for p in _pairs(b, b, lambda a, c: True) if p != (0, 0)]),
        (1, 2, [p for p in _pairs(b, b, lambda a, c: True) if p != (0, 0)]),
    ]
    for i in (1, 2, 3):
        cons.append((i - 1, 3, _pairs(b, xdom, lambda a, v, i=i: (a == 1) == (v == i))))
    inst = make_instance(4, [b, b, b, xdom], cons)
    return FixtureResult("I4", inst, {
        "satisfiable": False,
        "absent_at": [("Kite(sym)", 3, {})],
        "sat_after_var_removal": [3],
    })


def izoa4() -> FixtureResult:
    dom = (1, 2, 3)
    cons = [
        (0, 1, _eq(dom, dom)),
        (0, 2, _eq(dom, dom)),
        (1, 2, _eq(dom, dom)),
    ]
    for i in (1, 2, 3):
        cons.append((i - 1, 3, _pairs(dom, dom, lambda a, v, i=i: a == i or v == i)))
    inst = make_instance(4, [dom] * 4, cons)
    return FixtureResult("IZOA4", inst, {
        "satisfiable": False,
        "absent_at": [("Kite(asym)", 3, {})],
        "sat_after_var_removal": [3],
    })


def i7() -> FixtureResult:
    t = (0, 1, 2)
    b = (0, 1)
    rel = [(0, 0), (1, 2), (2, 1)]
    r0 = [(0, 0), (1, 1), (2, 1)]
    r1 = [(0, 1), (1, 0), (2, 0)]
    cons = [
        (0, 1, rel), (0, 2, rel), (1, 2, rel),
        (3, 4, rel), (3, 5, rel), (4, 5, rel),
    ]
    for i in (0, 1, 2):
        cons.append((i, 6, r0))
    for i in (3, 4, 5):
        cons.append((i, 6, r1))
    inst = make_instance(7, [t] * 6 + [b], cons)
    return FixtureResult("I7", inst, {
        "satisfiable": False,
        "absent_at": [("rotsubBTP", 6, {})],
        "sat_after_var_removal": [6],
    })


def isat4() -> FixtureResult:
    b = (0, 1)
    full = _pairs(b, b, lambda a, c: True)
    inst = make_instance(4, [b] * 4, [
        (0, 1, _eq(b, b)),
        (0, 2, _eq(b, b)),
        (1, 2, [p for p in full if p != (0, 0)]),
        (1, 3, [p for p in full if p != (1, 0)]),
        (2, 3, [p for p in full if p != (1, 1)]),
    ])
    return FixtureResult("ISAT4", inst, {
        "satisfiable": False,
        "absent_at": [("Pivot(sym)", 3, {})],
        "sat_after_var_removal": [3],
    })


def isat6() -> FixtureResult:
    b = (0, 1)
    full = _pairs(b, b, lambda a, c: True)

    def clause(forbidden):
        return [p for p in full if p != forbidden]

    inst = make_instance(6, [b] * 6, [
        (0, 1, clause((1, 1))),
        (0, 3, clause((1, 1))),
        (0, 2, clause((0, 1))),
        (0, 4, clause((0, 1))),
        (1, 5, clause((0, 1))),
        (3, 5, clause((0, 0))),
        (2, 5, clause((0, 1))),
        (4, 5, clause((0, 0))),
    ])
    return FixtureResult("ISAT6", inst, {
        "satisfiable": False,
        "absent_at": [("Pivot(asym)", 5, {})],
        "absent_anywhere": ["Cycle(3)"],
        "sat_after_var_removal": [5],
    })


# ---------------------------------------------------------------------------
# value-elimination unsoundness witnesses


def i4k(k: int = 5) -> FixtureResult:
    if k < 4:
        raise FixtureError("I4k needs k >= 4")
    t = (0, 1, 2)
    xdom = tuple(range(1, k + 1))
    comp = _pairs(t, t, lambda a, c: a == 2 - c)
    cons = [(0, 1, comp), (0, 2, comp), (1, 2, comp)]
    for i in (1, 2, 3):
        cons.append((i - 1, 3, _pairs(t, xdom, lambda a, v, i=i: a != 1 or v == i)))
    inst = make_instance(4, [t, t, t, xdom], cons)
    free = [v for v in xdom if v > 3]
    absent = []
    for name in ("NS", "∃2triangle", "∃2invsubBTP", "∃2snake"):
        for da in free:
            for db in free:
                if da != db:
                    absent.append((name, 3, {0: da, 1: db}))
    return FixtureResult("I4k", inst, {
        "satisfiable": False,
        "partial_solution": {0: 1, 1: 1, 2: 1},
        "absent_at": absent,
    })


def isat3(k: int = 3) -> FixtureResult:
    if k < 1:
        raise FixtureError("ISAT3 needs k >= 1")
    b = (0, 1)
    xdom = tuple(range(k + 1))
    full = _pairs(b, b, lambda a, c: True)
    inst = make_instance(3, [b, b, xdom], [
        (0, 1, [p for p in full if p != (1, 1)]),
        (0, 2, _pairs(b, xdom, lambda a, v: a == 1 or v == 0)),
        (1, 2, _pairs(b, xdom, lambda a, v: a == 1 or v == 0)),
    ])
    return FixtureResult("ISAT3", inst, {
        "satisfiable": True,
        "solution": {0: 0, 1: 0, 2: 0},
        "absent_at": [("I(−)", 2, {0: 0})],
        "unsat_after_value_removal": (2, 0),
    })


def isat2k1(k: int = 2) -> FixtureResult:
    if k < 1:
        raise FixtureError("ISAT2K1 needs k >= 1")
    b = (0, 1)
    xdom = tuple(range(k + 1))
    x = 2 * k
    full = _pairs(b, b, lambda a, c: True)
    cons = []
    for i in range(1, k + 1):
        p, q = 2 * i - 2, 2 * i - 1
        cons.append((p, q, [t for t in full if t != (1, 1)]))
        cons.append((p, x, _pairs(b, xdom, lambda a, v, i=i: a == 1 or v != i)))
        cons.append((q, x, _pairs(b, xdom, lambda a, v, i=i: a == 1 or v != i)))
    inst = make_instance(2 * k + 1, [b] * (2 * k) + [xdom], cons)
    return FixtureResult("ISAT2K1", inst, {
        "satisfiable": True,
        "solution": {v: 0 for v in range(2 * k + 1)},
        "unsat_after_value_removal": (x, 0),
        "two_false_edge_witness": (x, 0),
    })


def i3(k: int = 3) -> FixtureResult:
    if k < 1:
        raise FixtureError("I3 needs k >= 1")
    dom = tuple(range(k + 1))
    inst = make_instance(3, [dom] * 3, [
        (0, 1, _pairs(dom, dom, lambda a, c: a == 0 or c == 0)),
        (0, 2, _eq(dom, dom)),
        (1, 2, _eq(dom, dom)),
    ])
    return FixtureResult("I3", inst, {
        "satisfiable": True,
        "solution": {0: 0, 1: 0, 2: 0},
        "absent_at": [
            ("L(+−)", 2, {0: 0}),
            ("triangle2", 2, {0: 0}),
            ("∃Kite1", 2, {0: 0}),
        ],
        "unsat_after_value_removal": (2, 0),
    })


def i3plus(k: int = 3) -> FixtureResult:
    if k < 1:
        raise FixtureError("I3PLUS needs k >= 1")
    dom = tuple(range(k + 1))
    inst = make_instance(4, [dom] * 4, [
        (0, 1, _pairs(dom, dom, lambda a, c: a == 0 or c == 0)),
        (0, 2, _eq(dom, dom)),
        (1, 2, _eq(dom, dom)),
        (2, 3, _eq(dom, dom)),
    ])
    return FixtureResult("I3PLUS", inst, {
        "satisfiable": True,
        "solution": {0: 0, 1: 0, 2: 0, 3: 0},
        "absent_at": [("L(−)", 3, {})],
        "unsat_after_value_removal": (3, 0),
    })


def i32k(k: int = 1) -> FixtureResult:
    if k < 1:
        raise FixtureError("I32K needs k >= 1")
    dom = tuple(range(2 * k + 1))
    inst = make_instance(3, [dom] * 3, [
        (0, 1, _pairs(dom, dom, lambda a, c: a == 2 * k - c)),
        (0, 2, _eq(dom, dom)),
        (1, 2, _eq(dom, dom)),
    ])
    return FixtureResult("I32K", inst, {
        "satisfiable": True,
        "solution": {0: k, 1: k, 2: k},
        "absent_at": [
            ("triangle1", 2, {0: k}),
            ("∃Kite", 2, {0: k}),
            ("∃Kite(asym)", 2, {0: k}),
            ("Diamond", 2, {}),
            ("Z", 2, {}),
        ],
        "unsat_after_value_removal": (2, k),
    })


def i2() -> FixtureResult:
    inst = make_instance(2, [(0,), (0,)], [(0, 1, [(0, 0)])])
    return FixtureResult("I2", inst, {
        "satisfiable": True,
        "count": 1,
        "solution": {0: 0, 1: 0},
        "value_not_eliminable": [(0, 0), (1, 0)],
    })


# ---------------------------------------------------------------------------
# structural families


def star(n: int = 4) -> FixtureResult:
    if n < 2:
        raise FixtureError("STAR needs n >= 2")
    b = (0, 1)
    cons = [(0, i, _neq(b, b)) for i in range(1, n)]
    inst = make_instance(n, [b] * n, cons)
    return FixtureResult("STAR", inst, {
        "satisfiable": True,
        "count": 2,
    })


def make_ij(inner: Instance) -> Instance:
    """Adjoin a two-valued variable whose value 0 forces the fresh all-0
    solution and whose value 1 selects the inner instance's solutions."""
    m = inner.nvars
    domains = [
        (0,) + tuple(a + 1 for a in inner.domain(v)) for v in range(m)
    ]
    domains.append((0, 1))
    cons = []
    for (i, j), allowed in inner.constraints.items():
        shifted = {
            (a + 1, b + 1)
            for (a, b) in allowed
            if inner.is_value_active(i, a) and inner.is_value_active(j, b)
        }
        pairs = set(shifted)
        pairs.update((0, b) for b in domains[j])
        pairs.update((a, 0) for a in domains[i])
        cons.append((i, j, sorted(pairs)))
    for y in range(m):
        pairs = [(0, 0)] + [(a, 1) for a in domains[y] if a != 0]
        cons.append((y, m, pairs))
    return make_instance(m + 1, domains, cons)


def ij(seed: int = 0) -> FixtureResult:
    inner = random_instance(3, 2, 0.8, 0.4, seed)
    inst = make_ij(inner)
    x = inst.nvars - 1
    return FixtureResult("IJ", inst, {
        "satisfiable": True,
        "inner_instance": inner,
        "count_is_one_plus_inner": True,
        "absent_at": [
            ("∃2invsubBTP", x, {0: 0, 1: 1}),
            ("∃2snake", x, {0: 0, 1: 1}),
        ],
        "unique_after_value_removal": (x, 1),
    })


def random_instance(n: int, d: int, density: float, tightness: float,
                    seed: int) -> Instance:
    """Seeded random instance, arc consistency enforced before returning.

    Draws that wipe out under arc consistency are discarded and redrawn from
    the same generator stream; after 100 failures the parameters are deemed
    unusable.
    """
    if n < 1 or d < 1:
        raise FixtureError("need at least one variable and one value")
    if not (0.0 <= density <= 1.0 and 0.0 <= tightness <= 1.0):
        raise FixtureError("density and tightness must lie in [0, 1]")
    rng = random.Random(seed)
    dom = tuple(range(d))
    for _ in range(100):
        cons = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < density:
                    allowed = [
                        (a, b) for a in dom for b in dom
                        if rng.random() >= tightness
                    ]
                    cons.append((i, j, allowed))
        inst = make_instance(n, [dom] * n, cons)
        if enforce_ac(inst).wipeout is None:
            return inst
    raise FixtureError(
        "random instance kept wiping out under arc consistency; "
        "loosen density or tightness"
    )


def random_fixture(n: int = 4, d: int = 3, density: float = 0.6,
                   tightness: float = 0.4, seed: int = 0) -> FixtureResult:
    inst = random_instance(n, d, density, tightness, seed)
    return FixtureResult("RANDOM", inst, {})


_BUILDERS = {
    "K3_2COL": k3_2col,
    "K4_COLOUR": k4_colour,
    "BOOL3": bool3,
    "NONCONF": nonconf,
    "I∃4": iexists4,
    "I4": i4,
    "IZOA4": izoa4,
    "I7": i7,
    "ISAT4": isat4,
    "ISAT6": isat6,
    "I4k": i4k,
    "ISAT3": isat3,
    "ISAT2K1": isat2k1,
    "I3": i3,
    "I3PLUS": i3plus,
    "I32K": i32k,
    "I2": i2,
    "STAR": star,
    "IJ": ij,
    "RANDOM": random_fixture,
}

_BY_KEY = {normalize_name(name): (name, builder) for name, builder in _BUILDERS.items()}
assert len(_BY_KEY) == len(_BUILDERS)


def list_fixtures() -> list[str]:
    return list(_BUILDERS)


def fixture(name: str, params: tuple = ()) -> FixtureResult:
    try:
        _, builder = _BY_KEY[normalize_name(name)]
    except KeyError:
        raise FixtureError(f"unknown fixture {name!r}") from None
    return builder(*params)
