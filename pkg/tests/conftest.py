"""Shared test helpers: small hand-built demo patterns, canonical solution
ordering, seeded random instances, and an end-of-run acceptance summary."""

from __future__ import annotations

import random

import pytest

from cspprune.ac import enforce_ac
from cspprune.algebra import occurs_anywhere, occurs_at
from cspprune.catalog import get_pattern
from cspprune.engine import val_eliminable
from cspprune.fixtures import FixtureError, random_instance
from cspprune.model import is_partial_solution, is_solution, make_pattern
from cspprune.oracle import brute_occurs, count_solutions, solve
from cspprune.trace import VAL_RULES

F, T = False, True


def demo_patterns() -> dict:
    """Five related 3-variable demo patterns over x=0 (values 0,1),
    y=1 (value 0), z=2 (value 0).

    - two_false: x has only value 1; edges F(y0,x1), F(y0,z0).
    - true_spur: adds value 0 on x with a single compatible edge T(z0,x0).
    - true_spur_quantified: same structure, existentially quantified on x
      with value 0 marked existential.
    - conflicting_pair: true_spur plus F(x1,z0), so x's two values disagree
      on z and stop being mergeable.
    - spur_merged: true_spur with value 0 merged into value 1.
    """
    two_false = make_pattern(
        [(1,), (0,), (0,)],
        {((0, 1), (1, 0)): F, ((1, 0), (2, 0)): F},
    )
    spur_edges = {
        ((0, 0), (2, 0)): T,
        ((0, 1), (1, 0)): F,
        ((1, 0), (2, 0)): F,
    }
    true_spur = make_pattern([(0, 1), (0,), (0,)], dict(spur_edges))
    true_spur_quantified = make_pattern(
        [(0, 1), (0,), (0,)], dict(spur_edges),
        distinguished_var=0, existential=(0,),
    )
    conflicting_pair = make_pattern(
        [(0, 1), (0,), (0,)],
        {**spur_edges, ((0, 1), (2, 0)): F},
    )
    spur_merged = make_pattern(
        [(1,), (0,), (0,)],
        {((0, 1), (1, 0)): F, ((1, 0), (2, 0)): F, ((0, 1), (2, 0)): T},
    )
    return {
        "two_false": two_false,
        "true_spur": true_spur,
        "true_spur_quantified": true_spur_quantified,
        "conflicting_pair": conflicting_pair,
        "spur_merged": spur_merged,
    }


@pytest.fixture(name="demo")
def demo_fixture() -> dict:
    return demo_patterns()


def canon(solutions) -> list:
    """Solutions as a sorted list of sorted item tuples, for set comparison."""
    return sorted(tuple(sorted(s.items())) for s in solutions)


def seeded_instances(count: int, max_vars: int, max_dom: int, base_seed: int = 0,
                     min_dom: int = 2):
    """Deterministic stream of small arc-consistent random instances."""
    made = 0
    seed = base_seed
    while made < count:
        seed += 1
        rng = random.Random(seed * 7919 + base_seed)
        n = rng.randint(2, max_vars)
        d = rng.randint(min_dom, max_dom)
        density = rng.uniform(0.3, 0.95)
        tightness = rng.uniform(0.1, 0.5)
        try:
            inst = random_instance(n, d, density, tightness, seed)
        except FixtureError:
            continue
        made += 1
        yield seed, inst


def check_expected_record(fr) -> None:
    """Assert every claim in a fixture's expected-property record, using the
    brute-force oracle and both occurrence checkers."""
    inst, exp = fr.instance, fr.expected
    if "satisfiable" in exp:
        assert (solve(inst) is not None) == exp["satisfiable"]
    if "count" in exp:
        assert count_solutions(inst) == exp["count"]
    if "solution" in exp:
        assert is_solution(inst, exp["solution"])
    if "partial_solution" in exp:
        assert is_partial_solution(inst, exp["partial_solution"])
    for pname, x, mapping in exp.get("absent_at", ()):
        pat = get_pattern(pname).pattern
        assert occurs_at(pat, inst, x, mapping) is None, (pname, x, mapping)
        assert not brute_occurs(pat, inst, x, mapping), (pname, x, mapping)
    for pname in exp.get("absent_anywhere", ()):
        pat = get_pattern(pname).pattern
        assert occurs_anywhere(pat, inst) is None, pname
    for x in exp.get("sat_after_var_removal", ()):
        probe = inst.copy()
        probe.remove_variable(x)
        assert solve(probe) is not None, x
    if "unsat_after_value_removal" in exp:
        x, b = exp["unsat_after_value_removal"]
        probe = inst.copy()
        probe.remove_value(x, b)
        assert solve(probe) is None
    if "value_not_eliminable" in exp:
        for (x, b) in exp["value_not_eliminable"]:
            for rule in VAL_RULES:
                assert val_eliminable(inst, x, b, rule) is None
    if "unique_after_value_removal" in exp:
        x, b = exp["unique_after_value_removal"]
        probe = inst.copy()
        probe.remove_value(x, b)
        enforce_ac(probe)
        assert count_solutions(probe) == 1
    if "count_is_one_plus_inner" in exp:
        inner = exp["inner_instance"]
        assert count_solutions(inst) == 1 + count_solutions(inner)
    if "two_false_edge_witness" in exp:
        x, b = exp["two_false_edge_witness"]
        check_two_false_edge_absence(inst, x, b)


def check_two_false_edge_absence(inst, x, b) -> None:
    # quantified two-variable pattern whose single constraint carries two
    # incompatible edges; its absence at (x, value b) for every companion
    # value shows no such stronger rule could fire here either
    pat = make_pattern(
        [(0, 1), (0, 1)],
        {
            ((1, 0), (0, 0)): T,
            ((1, 0), (0, 1)): F,
            ((1, 1), (0, 0)): F,
        },
        distinguished_var=0,
        existential=(0, 1),
        distinguished_val=1,
    )
    for d in inst.domain(x):
        if d == b:
            continue
        assert occurs_at(pat, inst, x, {0: d, 1: b}) is None, d
        assert not brute_occurs(pat, inst, x, {0: d, 1: b}), d


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            name = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in name:
                continue
            label = name.split("::")[-1].removeprefix("test_")
            ok = status == "passed"
            lines[label] = lines.get(label, True) and ok
    if not lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label in sorted(lines):
        verdict = "PASS" if lines[label] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {label}: {verdict}")
