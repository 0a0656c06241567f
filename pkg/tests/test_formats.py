import pytest

from cspprune.catalog import get_pattern, list_catalog
from cspprune.engine import EngineConfig, preprocess
from cspprune.fixtures import fixture, list_fixtures
from cspprune.formats import (
    FormatError,
    instance_fingerprint,
    parse_instance,
    parse_pattern,
    parse_trace,
    serialize_instance,
    serialize_pattern,
    serialize_trace,
)
from cspprune.trace import ElimRecord, EliminationTrace


class TestInstanceFormat:
    def test_round_trip_all_fixtures(self):
        for name in list_fixtures():
            inst = fixture(name).instance
            again = parse_instance(serialize_instance(inst))
            assert again == inst, name

    def test_round_trip_preserves_eliminations(self):
        inst = fixture("K4_COLOUR").instance
        inst.remove_variable(2)
        inst.remove_value(0, 1)
        again = parse_instance(serialize_instance(inst))
        assert again == inst
        assert not again.is_active(2)
        assert again.domain(0) == (0, 2, 3)

    def test_comments_and_blank_lines_ignored(self):
        text = serialize_instance(fixture("BOOL3").instance)
        noisy = "# header comment\n\n" + text.replace(
            "vars 3", "vars 3   # trailing comment"
        )
        assert parse_instance(noisy) == fixture("BOOL3").instance

    def test_trivial_constraints_not_serialized(self):
        from cspprune.model import make_instance

        inst = make_instance(2, [(0, 1), (0, 1)], [(0, 1, [(0, 1), (1, 0)])])
        inst.remove_value(0, 1)
        inst.remove_value(1, 0)
        # the only active pair (0, 1) is allowed, so the constraint is complete
        text = serialize_instance(inst)
        assert "con" not in text
        assert parse_instance(text) == inst

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(FormatError) as err:
            parse_instance("bcsp 1\nvars 2\ndom 0 : 0\ndom 0 : 1\nend")
        assert err.value.line is not None

    def test_bad_header_rejected(self):
        with pytest.raises(FormatError):
            parse_instance("bcsp 2\nvars 1\ndom 0 : 0\nend")

    def test_unknown_variable_rejected(self):
        with pytest.raises(FormatError):
            parse_instance("bcsp 1\nvars 1\ndom 0 : 0\ndom 1 : 0\nend")

    def test_constraint_on_eliminated_var_rejected(self):
        text = (
            "bcsp 1\nvars 2\ndom 0 : 0\ncon 0 1\n0 0\nend\nend"
        )
        with pytest.raises(FormatError):
            parse_instance(text)

    def test_fingerprint_is_stable_and_state_sensitive(self):
        inst = fixture("NONCONF").instance
        fp = instance_fingerprint(inst)
        assert fp == instance_fingerprint(inst.copy())
        assert len(fp) == 12
        inst.remove_value(2, 0)
        assert instance_fingerprint(inst) != fp


class TestPatternFormat:
    def test_round_trip_catalog(self):
        for entries in list_catalog().values():
            for entry in entries:
                again = parse_pattern(serialize_pattern(entry.pattern))
                assert again == entry.pattern, entry.name

    def test_quantification_lines(self):
        text = serialize_pattern(get_pattern("∃2snake").pattern)
        assert "evar 0" in text
        assert "eval" in text and "dval" in text

    def test_eval_without_evar_rejected(self):
        text = "pattern 1\nvars 2\ndom 0 : 0 1\ndom 1 : 0\neval 0 : 0\nend"
        with pytest.raises(FormatError):
            parse_pattern(text)

    def test_dval_must_be_existential(self):
        text = (
            "pattern 1\nvars 1\ndom 0 : 0 1\nevar 0\neval 0 : 0\n"
            "dval 0 : 1\nend"
        )
        with pytest.raises(FormatError):
            parse_pattern(text)

    def test_conflicting_edges_rejected(self):
        text = (
            "pattern 1\nvars 2\ndom 0 : 0\ndom 1 : 0\n"
            "edge 0 0 1 0 +\nedge 1 0 0 0 -\nend"
        )
        with pytest.raises(FormatError):
            parse_pattern(text)


class TestTraceFormat:
    def test_round_trip_engine_output(self):
        for name in ("K4_COLOUR", "BOOL3", "K3_2COL", "STAR"):
            inst = fixture(name).instance
            _, trace = preprocess(inst)
            again = parse_trace(serialize_trace(trace))
            assert list(again.records) == list(trace.records)
            assert again.fingerprint == trace.fingerprint

    def test_header_carries_fingerprint(self):
        inst = fixture("BOOL3").instance
        _, trace = preprocess(inst)
        header = serialize_trace(trace).splitlines()[0]
        assert header == f"bcsp-trace 1 {instance_fingerprint(inst)}"

    def test_unknown_rule_rejected(self):
        with pytest.raises(FormatError):
            parse_trace("bcsp-trace 1 abc\nvar 0 rule=Bogus\n")

    def test_val_record_requires_mapping(self):
        with pytest.raises(FormatError):
            parse_trace("bcsp-trace 1 abc\nval 0 1 rule=NS\n")

    def test_record_validation(self):
        with pytest.raises(ValueError):
            ElimRecord("var", 0, val=3)
        with pytest.raises(ValueError):
            ElimRecord("val", 0, val=1)  # missing rule
        with pytest.raises(ValueError):
            ElimRecord("ac", 0)
        with pytest.raises(ValueError):
            ElimRecord("boom", 0)

    def test_trace_iteration(self):
        rec = ElimRecord("ac", 1, val=0)
        trace = EliminationTrace([rec], "abc")
        assert list(trace) == [rec]
        assert len(trace) == 1
