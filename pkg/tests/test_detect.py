"""The specialized per-rule detectors must agree with the generic occurrence
checker applied to the corresponding catalog patterns."""

import itertools

from cspprune.algebra import occurs_at
from cspprune.catalog import RULE_PATTERN_NAMES, get_pattern
from cspprune.detect import (
    VAL_RULE_DETECTORS,
    VAR_RULE_DETECTORS,
    occurs_btp,
    occurs_btp_fast,
)
from cspprune.fixtures import fixture, list_fixtures
from cspprune.trace import VAL_RULES, VAR_RULES

from conftest import seeded_instances


def _corpus():
    for name in list_fixtures():
        if name in ("RANDOM", "I4k"):
            continue
        inst = fixture(name).instance
        if len(inst.active_vars()) <= 7:
            yield inst
    for _, inst in seeded_instances(25, max_vars=5, max_dom=4):
        yield inst


class TestVarDetectors:
    def test_btp_fast_equals_plain(self):
        for inst in _corpus():
            for x in inst.active_vars():
                assert occurs_btp_fast(inst, x) == occurs_btp(inst, x)

    def test_detectors_match_generic_occurrence(self):
        for inst in _corpus():
            for rule in VAR_RULES:
                pat = get_pattern(RULE_PATTERN_NAMES[rule]).pattern
                detector = VAR_RULE_DETECTORS[rule]
                for x in inst.active_vars():
                    if rule == "BTP":
                        expected = occurs_at(pat, inst, x, {}) is not None
                        assert detector(inst, x) == expected, (rule, x)
                        continue
                    for d in inst.domain(x):
                        expected = occurs_at(pat, inst, x, {0: d}) is not None
                        assert detector(inst, x, d) == expected, (rule, x, d)


class TestValDetectors:
    def test_detectors_match_generic_occurrence(self):
        for inst in _corpus():
            for rule in VAL_RULES:
                pat = get_pattern(RULE_PATTERN_NAMES[rule]).pattern
                detector = VAL_RULE_DETECTORS[rule]
                for x in inst.active_vars():
                    dom = inst.domain(x)
                    for d, b in itertools.permutations(dom, 2):
                        expected = occurs_at(pat, inst, x, {0: d, 1: b})
                        assert detector(inst, x, d, b) == (expected is not None), \
                            (rule, x, d, b)
