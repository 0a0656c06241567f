"""Acceptance suite.

One test per shipped guarantee; the terminal summary prints a PASS/FAIL
line for each.  Expected traces and counts are frozen literals checked
against the brute-force oracle, never recomputed from the code under test.
"""

import itertools
import random
import time

import pytest
from conftest import canon, check_expected_record, demo_patterns, seeded_instances

from cspprune.algebra import equivalent, is_irreducible, occurs_at
from cspprune.catalog import get_pattern, list_catalog
from cspprune.engine import (
    EngineConfig,
    parse_script,
    preprocess,
    val_eliminable,
    var_eliminable,
)
from cspprune.fixtures import FixtureError, fixture, list_fixtures, random_instance
from cspprune.model import is_solution, make_instance
from cspprune.oracle import brute_occurs, count_solutions, enumerate_solutions, solve
from cspprune.reconstruct import ReconstructionError, recover_all, recover_one
from cspprune.trace import ElimRecord, VAL_RULES, VAR_RULES


def test_criterion_01_k4_value_eliminations():
    t0 = time.perf_counter()
    inst = fixture("K4_COLOUR").instance
    work, trace = preprocess(inst, EngineConfig(rules=VAL_RULES))
    assert trace.records == [
        ElimRecord("val", 0, 1, "Exists2Snake", {"a": 0, "b": 1}),
        ElimRecord("val", 0, 2, "Exists2Snake", {"a": 0, "b": 2}),
        ElimRecord("val", 0, 3, "Exists2Snake", {"a": 0, "b": 3}),
        ElimRecord("ac", 1, 0),
        ElimRecord("ac", 2, 0),
        ElimRecord("ac", 3, 0),
    ]
    assert [work.domain(v) for v in range(4)] == [(0,), (1,), (2,), (3,)]
    reduced = solve(work)
    assert reduced is not None
    full = recover_one(inst, trace, reduced)
    assert full == {0: 0, 1: 1, 2: 2, 3: 3}
    assert is_solution(inst, full)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_bool3_value_elimination():
    inst = fixture("BOOL3").instance
    work, trace = preprocess(inst, EngineConfig(rules=VAL_RULES))
    assert trace.records == [
        ElimRecord("val", 0, 0, "Exists2InvSubBTP", {"a": 1, "b": 0}),
        ElimRecord("ac", 1, 1),
        ElimRecord("ac", 2, 0),
    ]
    assert [work.domain(v) for v in range(3)] == [(1,), (0,), (1,)]


def test_criterion_03_k3_wipeout():
    inst = fixture("K3_2COL").instance
    work, trace = preprocess(inst, EngineConfig(script=parse_script("val:0:1")))
    assert trace.records == [
        ElimRecord("val", 0, 1, "Exists2Triangle", {"a": 0, "b": 1}),
        ElimRecord("ac", 1, 0),
        ElimRecord("ac", 2, 0),
        ElimRecord("ac", 2, 1),
    ]
    assert work.has_wipeout()
    assert solve(inst) is None


def test_criterion_04_non_confluence():
    inst = fixture("NONCONF").instance

    work_a, trace_a = preprocess(
        inst, EngineConfig(rules=VAL_RULES, script=parse_script("val:2:1")))
    assert trace_a.records == [
        ElimRecord("val", 2, 1, "Exists2Snake", {"a": 0, "b": 1}),
        ElimRecord("ac", 0, 1),
        ElimRecord("ac", 1, 1),
        ElimRecord("val", 0, 0, "Exists2Snake", {"a": 2, "b": 0}),
        ElimRecord("ac", 1, 2),
        ElimRecord("ac", 2, 0),
    ]
    assert [work_a.domain(v) for v in range(3)] == [(2,), (0,), (2,)]

    work_b, trace_b = preprocess(
        inst, EngineConfig(rules=VAL_RULES, script=parse_script("val:2:0")))
    assert trace_b.records == [
        ElimRecord("val", 2, 0, "NS", {"a": 2, "b": 0}),
    ]
    assert [work_b.domain(v) for v in range(3)] == [(0, 1, 2), (0, 1, 2), (1, 2)]

    assert work_a != work_b
    assert not equivalent(work_a.to_pattern(), work_b.to_pattern())


def test_criterion_05_star_centre_elimination():
    script = parse_script("var:0:ExistsSnake")
    for n in range(4, 11):
        inst = fixture("STAR", (n,)).instance
        assert count_solutions(inst) == 2
        work, trace = preprocess(inst, EngineConfig(rules=(), script=script))
        assert len(trace.records) == 1
        rec = trace.records[0]
        assert (rec.kind, rec.var, rec.rule) == ("var", 0, "ExistsSnake")
        reduced_solutions = enumerate_solutions(work)
        assert len(reduced_solutions) == 2 ** (n - 1)
        for reduced in reduced_solutions:
            assert is_solution(inst, recover_one(inst, trace, reduced))
        with pytest.raises(ReconstructionError, match="ExistsSnake"):
            recover_all(inst, trace, reduced_solutions)


def test_criterion_06_single_elimination_soundness():
    t0 = time.perf_counter()
    violations = []
    checked = 0
    for seed, inst in seeded_instances(1000, 6, 4):
        sat = solve(inst) is not None
        for x in inst.active_vars():
            for rule in VAR_RULES:
                if var_eliminable(inst, x, rule) is None:
                    continue
                probe = inst.copy()
                probe.remove_variable(x)
                checked += 1
                if (solve(probe) is not None) != sat:
                    violations.append((seed, "var", x, rule))
            for b in inst.domain(x):
                for rule in VAL_RULES:
                    if val_eliminable(inst, x, b, rule) is None:
                        continue
                    probe = inst.copy()
                    probe.remove_value(x, b)
                    checked += 1
                    if (solve(probe) is not None) != sat:
                        violations.append((seed, "val", x, b, rule))
    assert violations == []
    assert checked > 1000
    assert time.perf_counter() - t0 < 120.0


def test_criterion_07_blocking_fixture_records():
    failures = []
    for name in list_fixtures():
        try:
            check_expected_record(fixture(name))
        except AssertionError as exc:
            failures.append((name, str(exc).splitlines()[0]))
    assert failures == []


def _injective_maps(pattern, domain):
    evals = sorted(pattern.existential)
    if not evals:
        return [{}]
    if len(evals) > len(domain):
        return []
    return [dict(zip(evals, images))
            for images in itertools.permutations(domain, len(evals))]


def test_criterion_08_detector_cross_check():
    entries = [e for group in list_catalog().values() for e in group]

    grid_corpus = []
    for name in list_fixtures():
        if name == "RANDOM":
            continue
        inst = fixture(name).instance
        if inst.max_domain_size() <= 4:
            grid_corpus.append((name, inst))

    mismatches = []
    cases = 0
    for fname, inst in grid_corpus:
        for entry in entries:
            for x in inst.active_vars():
                for m in _injective_maps(entry.pattern, inst.domain(x)):
                    cases += 1
                    fast = occurs_at(entry.pattern, inst, x, m) is not None
                    slow = brute_occurs(entry.pattern, inst, x, m)
                    if fast != slow:
                        mismatches.append((fname, entry.name, x, m))
    assert cases == 4492
    assert mismatches == []

    rng = random.Random(8)
    done = 0
    while done < 10000:
        n = rng.randint(2, 4)
        d = rng.randint(1, 3)
        density = rng.uniform(0.3, 1.0)
        tightness = rng.uniform(0.1, 0.7)
        try:
            inst = random_instance(n, d, density, tightness, rng.randrange(10 ** 6))
        except FixtureError:
            continue
        entry = rng.choice(entries)
        x = rng.randrange(inst.nvars)
        evals = sorted(entry.pattern.existential)
        dom = inst.domain(x)
        if len(evals) > len(dom):
            continue
        m = dict(zip(evals, rng.sample(dom, len(evals))))
        done += 1
        fast = occurs_at(entry.pattern, inst, x, m) is not None
        slow = brute_occurs(entry.pattern, inst, x, m)
        if fast != slow:
            mismatches.append(("random", entry.name, x, m))
    assert mismatches == []


def test_criterion_09_irreducibility():
    for name in ("BTP", "∃subBTP", "∃invsubBTP", "∃snake",
                  "∃2triangle", "∃2invsubBTP", "∃2snake"):
        assert is_irreducible(get_pattern(name).pattern), name
    assert not is_irreducible(demo_patterns()["true_spur"])


def test_criterion_10_btp_closure_is_order_independent():
    divergent = []
    for seed, inst in seeded_instances(200, 5, 3):
        memo = {}

        def terminal_sets(work, removed):
            if removed in memo:
                return memo[removed]
            cands = [x for x in work.active_vars()
                     if var_eliminable(work, x, "BTP") is not None]
            if not cands:
                result = frozenset({removed})
            else:
                acc = set()
                for x in cands:
                    nxt = work.copy()
                    nxt.remove_variable(x)
                    acc |= terminal_sets(nxt, removed | {x})
                result = frozenset(acc)
            memo[removed] = result
            return result

        if len(terminal_sets(inst, frozenset())) != 1:
            divergent.append(seed)
    assert divergent == []


def test_criterion_11_recover_all_matches_enumeration():
    rules = ("BTP", "ExistsSubBTP", "NS", "Exists2Triangle")
    mismatched = []
    checked = 0
    for seed, inst in seeded_instances(1000, 5, 3, base_seed=977):
        if checked == 200:
            break
        expected = enumerate_solutions(inst)
        if not expected:
            continue
        checked += 1
        work, trace = preprocess(inst, EngineConfig(rules=rules))
        reduced = [] if work.has_wipeout() else enumerate_solutions(work)
        if canon(recover_all(inst, trace, reduced)) != canon(expected):
            mismatched.append(seed)
    assert checked == 200
    assert mismatched == []


def _equality_tree(n, d=6):
    same = [(a, a) for a in range(d)]
    cons = [(i, (i - 1) // 2, same) for i in range(1, n)]
    return make_instance(n, [range(d)] * n, cons)


def _closure_and_recovery_times(n):
    inst = _equality_tree(n)
    t0 = time.perf_counter()
    work, trace = preprocess(inst, EngineConfig(rules=("BTP",)))
    closure_s = time.perf_counter() - t0
    assert not work.active_vars()
    reduced = solve(work)
    assert reduced == {}
    reps = max(3, 4000 // n)
    best = None
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(reps):
            full = recover_one(inst, trace, reduced)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    assert is_solution(inst, full)
    return closure_s, best / reps


def test_criterion_12_recovery_scales_linearly():
    per_call = []
    for n in (25, 50, 100, 200):
        closure_s, recover_s = _closure_and_recovery_times(n)
        if n == 200:
            assert closure_s < 10.0
        per_call.append(recover_s)
    for slower, faster in zip(per_call[1:], per_call):
        assert slower / faster <= 3.0
